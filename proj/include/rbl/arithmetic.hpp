#pragma once

#include <string>
#include <vector>

#include "rbl/common.hpp"
#include "rbl/rotation.hpp"

namespace rbl {

// Small-divisor scan summary for one rotation number (or one tuple entry).
// m_values[i] = 2^{i+1}; omega_values[i] = the running minimum distance at
// that window; partial_sums[i] = S_i = sum_{t<=i} 2^{-t} log(1/omega(2^{t+1})).
struct SmallDivisorReport {
  std::vector<long long> m_values;
  std::vector<double> omega_values;
  std::vector<double> partial_sums;
  std::string verdict;  // brjuno-plausible | root-of-unity | inconclusive
};

// omega(m) = min over 2 <= h <= m of |lambda^h - lambda|, evaluated as
// 2 sin(pi y) where y is the mod-1 distance of (h-1)*alpha, reduced at
// extended precision. Throws Error("precision-exhausted") when the smallest
// distance cannot be trusted to 10 digits at the chosen precision.
double omega(const RotationNumber& lambda, long long m,
             int digits = defaults::kPrecisionDigits);

// Partial sums S_K for K = 0..K_max of 2^{-K} log(1/omega(2^{K+1})).
// Throws Error("root-of-unity") if some omega in range vanishes exactly.
// Verdict: brjuno-plausible when the last two-step increment
// S_{K_max} - S_{K_max-2} is below stagnation_tol, else inconclusive.
SmallDivisorReport brjuno_partial_sums(
    const RotationNumber& lambda, int K_max,
    double stagnation_tol = defaults::kStagnationTol,
    int digits = defaults::kPrecisionDigits);

// Same scan but never throws on vanishing omega: the report is truncated at
// the offending window and the verdict becomes root-of-unity. Used by the CLI
// and the rational sweeps, where rejection is an expected outcome.
SmallDivisorReport small_divisor_scan(
    const RotationNumber& lambda, int K_max,
    double stagnation_tol = defaults::kStagnationTol,
    int digits = defaults::kPrecisionDigits);

// One resonance relation lambda^m ~ lambda_j, recorded with its gap.
struct ResonanceHit {
  int j = 1;                // 1-based coordinate whose eigenvalue is matched
  std::vector<int> m;       // the multi-index
  double gap = 0.0;         // |lambda_j - lambda^m|
};

struct OneResonanceReport {
  bool one_resonant = false;
  std::vector<ResonanceHit> violations;  // gap < resonance tolerance, bad form
  std::vector<ResonanceHit> warnings;    // near-misses below the warning gap
};

// Scans all multi-indices with 2 <= |m| <= degree_bound. A resonance
// |lambda_j - lambda^m| < tol is allowed only in the product form
// m = e_j + t*(1,...,1) with t >= 1; anything else is a violation.
OneResonanceReport check_one_resonant(
    const std::vector<RotationNumber>& alphas, int degree_bound,
    double tol = defaults::kResonanceTol,
    double near_miss = defaults::kNearMissTol,
    int digits = defaults::kPrecisionDigits);

// Per-coordinate admissibility sums with
// omega_j(m) = min_{2<=h<=m} min_{1<=i<=k} |lambda_j^h - lambda_i|.
// Throws Error("root-of-unity") like brjuno_partial_sums.
std::vector<SmallDivisorReport> admissible_partial_sums(
    const std::vector<RotationNumber>& alphas, int K_max,
    double stagnation_tol = defaults::kStagnationTol,
    int digits = defaults::kPrecisionDigits);

// Non-throwing per-coordinate variant (verdict root-of-unity on vanishing).
std::vector<SmallDivisorReport> admissible_scan(
    const std::vector<RotationNumber>& alphas, int K_max,
    double stagnation_tol = defaults::kStagnationTol,
    int digits = defaults::kPrecisionDigits);

}  // namespace rbl
