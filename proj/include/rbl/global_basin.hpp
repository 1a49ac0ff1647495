#pragma once

#include <string>
#include <vector>

#include "rbl/common.hpp"
#include "rbl/fatou.hpp"
#include "rbl/germ.hpp"
#include "rbl/point.hpp"
#include "rbl/regions.hpp"

namespace rbl {

// Verdict of a basin-membership test.
struct BasinVerdict {
  enum class Status { in_basin, not_in_basin, undetermined };
  enum class Reason { none, escaped, axis, ratio_violation, horizon_exhausted };
  Status status = Status::undetermined;
  Reason reason = Reason::horizon_exhausted;
  long step = 0;  // hit step for in_basin, detection step otherwise

  bool decided() const { return status != Status::undetermined; }
};

std::string to_string(BasinVerdict::Status s);
std::string to_string(BasinVerdict::Reason r);

// Membership by hitting the local region: in_basin(h) at the first h <= n_max
// with the h-th iterate inside the region; a coordinate exactly zero is
// not_in_basin(axis); leaving the escape radius is not_in_basin(escaped);
// otherwise undetermined(horizon_exhausted).
BasinVerdict classify(const GermSpec& spec, const ComplexPoint& p,
                      const BasinParams& bp, long n_max,
                      double escape_radius = defaults::kEscapeRadius);

// Independent membership oracle from orbit shape alone: the orbit counts as
// inside once its sup-norm has decayed below a fixed threshold while the
// max/min coordinate-modulus ratio stays within a fixed band over a trailing
// window; a band violation at small norm is not_in_basin(ratio_violation).
BasinVerdict classify_by_ratio(const GermSpec& spec, const ComplexPoint& p,
                               long n_max,
                               int ratio_window = defaults::kRatioWindow,
                               double escape_radius = defaults::kEscapeRadius,
                               double norm_threshold = defaults::kRatioNormThreshold,
                               double ratio_band = defaults::kRatioBand);

// First coordinate on the full attracting set: psi at the hitting iterate,
// shifted back by the hitting step.
cplx g1(const GermSpec& spec, const ComplexPoint& p, const BasinParams& bp,
        double tol = defaults::kTolPsi,
        long n_max = defaults::kHorizonClassify);

// Same value forced to use hitting step h + extra instead of h (consistency
// probe for the well-definedness of g1).
cplx g1_at_shifted_step(const GermSpec& spec, const ComplexPoint& p,
                        const BasinParams& bp, int extra,
                        double tol = defaults::kTolPsi,
                        long n_max = defaults::kHorizonClassify);

// Remaining coordinates on the full attracting set (j = 2..k).
cplx g_j(const GermSpec& spec, const ComplexPoint& p, const BasinParams& bp,
         int j, double tol = defaults::kTolSigma,
         long n_max = defaults::kHorizonClassify);

cplx g_j_at_shifted_step(const GermSpec& spec, const ComplexPoint& p,
                         const BasinParams& bp, int j, int extra,
                         double tol = defaults::kTolSigma,
                         long n_max = defaults::kHorizonClassify);

// Fiber-bundle transition multiplier between overlapping half-plane charts
// H_n and H_{n+1}: zeta -> lambda * exp(1/(2*(zeta+n))).  Never zero.
cplx transition(cplx zeta, long n);
cplx transition(cplx zeta, long n, cplx lambda);

// Model fiber iteration xi_n = conj(lambda)^n exp(-1/2 sum_{j<n} 1/(zeta0+j)) xi0.
// Returns xi_n for each requested n (the list must be nondecreasing).
std::vector<cplx> t_iteration(cplx zeta0, cplx xi0, cplx lambda,
                              const std::vector<long>& n_values);

// Affine 2-real-parameter slice of C^k: point(x, y) = origin + x e1 + y e2,
// with x and y running over a centered grid of the given half-width.
struct SliceSpec {
  ComplexPoint origin;
  ComplexPoint e1;
  ComplexPoint e2;
  double scale = 0.25;  // half-width of the grid in both parameters
  int res = 200;        // cells per side

  ComplexPoint cell_point(int i, int jj) const;
  void validate() const;  // res in [1, 4096], matching dimensions
};

// Named slice presets through the origin for the default dimension-2 germ:
//   "real": (x, y)            both coordinates real
//   "diag": ((x+iy), (x+iy))  the diagonal complex line
//   "conj": ((x+iy), (x-iy))  conjugate pair
SliceSpec preset_slice(const std::string& name, double scale, int res);

struct ClassificationGrid {
  int res = 0;
  std::vector<BasinVerdict> cells;  // row-major, cells[j*res + i]
  long n_in = 0, n_out = 0, n_undetermined = 0;

  const BasinVerdict& at(int i, int jj) const {
    return cells[static_cast<size_t>(jj) * static_cast<size_t>(res) +
                 static_cast<size_t>(i)];
  }
};

enum class ClassifyMethod { hitting, ratio };

ClassificationGrid raster_slice(const GermSpec& spec, const SliceSpec& slice,
                                const BasinParams& bp, long n_max,
                                ClassifyMethod method);

// Agreement statistics between two grids of the same resolution, counted
// over cells decided by both.
struct GridAgreement {
  long both_decided = 0;
  long agree = 0;
  long axis_cells = 0;
  long axis_misclassified = 0;  // axis cells not reported not_in_basin
  double agreement_rate = 1.0;
};

GridAgreement compare_grids(const SliceSpec& slice,
                            const ClassificationGrid& a,
                            const ClassificationGrid& b);

}  // namespace rbl
