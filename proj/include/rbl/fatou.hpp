#pragma once

#include <utility>
#include <vector>

#include "rbl/common.hpp"
#include "rbl/germ.hpp"
#include "rbl/point.hpp"
#include "rbl/regions.hpp"

namespace rbl {

// Limit estimate with its stopping information.
struct CoordinateEstimate {
  cplx value{0.0, 0.0};
  int depth = 0;             // index at which iteration stopped
  double last_increment = 0.0;
  bool converged = false;
};

// Drift constant of the reciprocal-product recursion for the unperturbed
// model: U' = U + 1 + c u + O(u^2) with c = (k+1)/(2k).
double model_c(int k);

// Depth-m Fatou approximant 1/u_m - m + c log(u_m), principal log.
// Throws Error("orbit-degenerate") if u vanishes on the way.
cplx psi_m(const GermSpec& spec, double c, const ComplexPoint& p, int m);

// Limit of psi_m, stopping when consecutive approximants differ by < tol.
CoordinateEstimate psi(const GermSpec& spec, double c, const ComplexPoint& p,
                       double tol = defaults::kTolPsi,
                       int m_cap = defaults::kMCap);

// Depth-n twisted product mu_j^{-n} Pi_j(F^n p) exp(kappa_j sum 1/(psi+m))
// with Pi_j = z_j...z_k, mu_j = lambda_j...lambda_k, kappa_j = (k-j+1)/k.
// Throws Error("domain-error") unless Re(psi_value) > 0.
cplx sigma_jn(const GermSpec& spec, const ComplexPoint& p, cplx psi_value,
              int j, int n);

// k = 2 specialization (j = 2): lambda^n w_n exp(0.5 sum 1/(psi+m)).
cplx sigma_n(const GermSpec& spec, const ComplexPoint& p, cplx psi_value,
             int n);

// Limit of sigma_jn at fixed psi_value.  Stops when the step increment
// drops below tol relative to the value's own scale (capped at 1), which
// keeps the stopping depth equivariant under one application of the map and
// is at least as strict as an absolute threshold wherever |value| < 1.
CoordinateEstimate sigma_j(const GermSpec& spec, const ComplexPoint& p,
                           cplx psi_value, int j,
                           int n_cap = defaults::kMCap,
                           double tol = defaults::kTolSigma);

// Limit of sigma_n; computes its own psi with the model constant.
CoordinateEstimate sigma(const GermSpec& spec, const ComplexPoint& p,
                         double tol = defaults::kTolSigma,
                         int n_cap = defaults::kMCap);

// One-pass evaluation of psi and all sigma_j (j = 2..k) on a shared orbit.
struct ChartValue {
  CoordinateEstimate psi;
  std::vector<CoordinateEstimate> sigma;  // sigma[j-2] holds sigma_j
};

ChartValue chart_values(const GermSpec& spec, const ComplexPoint& p, double c,
                        double tol_psi = defaults::kTolPsi,
                        double tol_sigma = defaults::kTolSigma,
                        int m_cap = defaults::kMCap);

// The injective chart (psi, sigma) for k = 2.
std::pair<CoordinateEstimate, CoordinateEstimate> Q(const GermSpec& spec,
                                                    const ComplexPoint& p,
                                                    double tol);

// Smooth fixed-depth chart evaluation (psi_m, sigma_{2,n}, ..., sigma_{k,n})
// used as the Newton target system: unlike the adaptive limits, its stopping
// index never jumps under perturbations of p.
std::vector<cplx> chart_fixed_depth(const GermSpec& spec,
                                    const ComplexPoint& p, double c,
                                    int depth_psi, int depth_sigma);

// --- Probes -----------------------------------------------------------------

struct InjectivityReport {
  int n_pairs = 0;
  unsigned long long seed = 0;
  double image_tol = 0.0;
  int collisions_chart = 0;    // (psi, sigma_j) images closer than image_tol
  int collisions_psi_w = 0;    // (psi, w) images closer than image_tol
  double min_image_separation = 0.0;
  double min_separation_ratio = 0.0;  // image distance / input distance
};

InjectivityReport injectivity_probe(const GermSpec& spec,
                                    const BasinParams& bp_shrunk, int n_pairs,
                                    unsigned long long seed, double tol);

struct JacobianProbe {
  std::vector<double> r_values;
  std::vector<double> det_deviation;  // |det - 1| in the (U, w)-chart
  bool all_within_20pct = false;
  bool trending_to_one = false;
};

// Finite-difference determinant of the chart map in (U, w)-coordinates at
// the points u = r^2, w = r (so z = r), for each r in r_values.
JacobianProbe jacobian_probe(const GermSpec& spec,
                             const std::vector<double>& r_values, double tol);

struct CoverageReport {
  int n_targets = 0;
  int hits = 0;
  double hit_rate = 0.0;
  unsigned long long seed = 0;
  double residual_tol = 0.0;
  int depth = 0;  // fixed depth of the inverted chart system
};

// Newton inversion of the fixed-depth chart over targets sampled in the
// half-plane x wedge image region; a hit is a residual below residual_tol.
CoverageReport coverage_probe(const GermSpec& spec,
                              const BasinParams& bp_shrunk, int n_targets,
                              unsigned long long seed,
                              double residual_tol = defaults::kNewtonResTol);

// Calibration that additionally requires the (U, w)-chart Jacobian of
// (psi, w) to stay within 20% of 1 on probe points.
CalibrationReport calibrate_shrunken(const GermSpec& spec, double beta,
                                     double theta, int samples, long horizon,
                                     unsigned long long seed = defaults::kSeed);

}  // namespace rbl
