#pragma once

#include <string>
#include <vector>

#include "rbl/common.hpp"

namespace rbl {

// A rotation number alpha in [0,1), i.e. the unimodular eigenvalue
// lambda = e^{2 pi i alpha}. The symbolic representation is kept so the
// small-divisor arithmetic can re-evaluate alpha at extended precision;
// orbit iteration materializes lambda to a double-precision complex.
struct RotationNumber {
  enum class Kind { decimal, fraction, cf, golden, silver, complete };

  Kind kind = Kind::decimal;
  std::string text;              // decimal digits as written
  long long p = 0, q = 1;        // fraction kind, lowest terms, 0 <= p < q
  std::vector<long long> cf;     // continued-fraction coefficients [a0; a1, ...]

  // Double-precision value in [0,1). `complete` entries need the sibling
  // tuple and are resolved by the germ / arithmetic layers, not here.
  double value() const;

  // Token round-trip: "golden", "silver", "complete", "p/q", "cf:a0,a1,...",
  // or a decimal literal.
  std::string token() const;

  static RotationNumber parse(const std::string& token);
  static RotationNumber golden();
  static RotationNumber silver();
};

// Double value of entry `idx` of a tuple, resolving `complete` as
// 1 - frac(sum of the other entries).
double alpha_value(const std::vector<RotationNumber>& alphas, int idx);

// lambda = e^{2 pi i alpha} for entry idx (double precision).
cplx lambda_value(const std::vector<RotationNumber>& alphas, int idx);

}  // namespace rbl
