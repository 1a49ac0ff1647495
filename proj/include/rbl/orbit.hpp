#pragma once

#include <array>
#include <vector>

#include "rbl/common.hpp"
#include "rbl/germ.hpp"
#include "rbl/point.hpp"
#include "rbl/regions.hpp"

namespace rbl {

enum class Termination { completed, escaped, hit_zero };

// Full orbit record: points p_0..p_N with the resonant products u_n and
// their reciprocals U_n. hit_zero fires only when a previously nonzero u
// collapses to exact zero; orbits that start on an axis (u = 0 throughout)
// run to completion as pure rotations.
struct OrbitTrace {
  std::vector<ComplexPoint> points;
  std::vector<cplx> u_seq;
  std::vector<cplx> U_seq;
  Termination terminated = Termination::completed;
  long stop_step = 0;  // escape/zero step, or the last computed index
};

OrbitTrace iterate(const GermSpec& spec, const ComplexPoint& p, long n_max,
                   double escape_radius = defaults::kEscapeRadius);

struct InvarianceViolation {
  long sample = 0;
  long first_exit = 0;
};

struct InvarianceReport {
  int n_samples = 0;
  long horizon = 0;
  unsigned long long seed = 0;
  std::vector<InvarianceViolation> violators;
  double violation_fraction = 0.0;
};

// Samples n points of B and iterates each for `horizon` steps, recording
// every orbit that ever leaves B with its first exit step.
InvarianceReport check_invariance(const GermSpec& spec, const BasinParams& bp,
                                  int n_samples, long horizon,
                                  unsigned long long seed = defaults::kSeed);

struct AsymptoticsReport {
  long n_min = 0;  // tail window [n_min, n_max], shared by all lists
  long n_max = 0;
  std::vector<cplx> n_u_n;                        // n * u_n
  std::vector<std::vector<double>> scaled_moduli; // per j: n^{1/k} |z_{j,n}|
  struct Band {
    double lo = 0.0, hi = 0.0;
  };
  std::vector<Band> modulus_bands;                // per coordinate
  struct PairRatio {
    int i = 1, j = 2;       // 1-based coordinate pair
    double lo = 0.0, hi = 0.0;
  };
  std::vector<PairRatio> ratio_bounds;            // per pair i < j
  std::vector<double> arg_u;
  double sup_nu_minus_1 = 0.0;                    // sup |n u_n - 1| over tail
  double max_abs_arg_u = 0.0;
};

// Tail statistics over [tail_start, end of trace].
// Throws Error("degenerate-trace") for non-completed traces or vanishing u.
AsymptoticsReport asymptotics_report(const OrbitTrace& trace, long tail_start);

// First index n such that the orbit lies in W(gamma) from n through the end
// of the trace; -1 when membership never becomes permanent.
long eventual_W_entry(const OrbitTrace& trace, double gamma);

struct CEstimate {
  double value = 0.0;      // Re of the least-squares slope
  double width = 0.0;      // bootstrap spread
  double imag_part = 0.0;  // Im of the slope, diagnostic only
  bool imag_flagged = false;
  long points_used = 0;
};

// Pooled least-squares fit of (U_{n+1} - U_n - 1) against u_n over the
// tails of the given traces. Throws Error("ill-conditioned") if the
// regressor is numerically zero, Error("degenerate-trace") if no trace has
// a usable tail of at least 100 steps.
CEstimate estimate_c(const GermSpec& spec,
                     const std::vector<OrbitTrace>& traces, long tail_start);

}  // namespace rbl
