#pragma once

#include <vector>

#include "rbl/common.hpp"
#include "rbl/germ.hpp"
#include "rbl/point.hpp"

namespace rbl {

// Horocycle-sector in the u-plane: the open disc of radius 1/(2R) tangent
// to 0 at the origin, intersected with |Arg u| < theta.
struct SectorParams {
  double R = defaults::kRMin;
  double theta = defaults::kTheta;
};

// Local basin parameters: wedge exponent beta plus the sector, carried with
// the ambient dimension of the points they classify.
struct BasinParams {
  int k = 2;
  double beta = defaults::kBeta;
  SectorParams sector;
};

void validate(const SectorParams& s);   // throws config-invalid
void validate(const BasinParams& bp);   // throws config-invalid

BasinParams default_basin(int k);

// Strict membership in the sector; zeta = 0 is a boundary point -> false.
bool in_sector_S(cplx zeta, const SectorParams& s);

// Strict wedge membership: |z_j| < |u|^beta for every coordinate, u != 0.
bool in_W(const ComplexPoint& p, double beta);

// Local basin: wedge and sector conditions together.
bool in_B(const ComplexPoint& p, const BasinParams& bp);

// Fibered coordinates (u, y_2, ..., y_k), y_j = z_j...z_k; k = 2: (zw, w).
ComplexPoint phi_coordinates(const ComplexPoint& p);

// Explicit inverse z_1 = u/y_2, z_j = y_j/y_{j+1}, z_k = y_k.
// Throws Error("domain-error") when some y_j = 0.
ComplexPoint phi_inverse(const ComplexPoint& q);

// n points of B, deterministic per (seed, index): u drawn log-polar inside
// the sector, coordinate moduli log-uniform inside the wedge, phases uniform
// with the product constraint. Throws Error("rejection-overflow") when the
// wedge constraints cannot be met numerically.
std::vector<ComplexPoint> sample_B(const BasinParams& bp, int n,
                                   unsigned long long seed);

struct CalibrationReport {
  SectorParams sector;          // the accepted parameters
  double beta = 0.0;
  int samples = 0;              // certificate: orbits checked ...
  long horizon = 0;             // ... for this many steps each
  unsigned long long seed = 0;
  std::vector<double> rejected_R;  // candidates that leaked an orbit
};

// Doubling search for the smallest R in {R_min * 2^j} whose basin is
// invariant over `samples` seeded orbits of `horizon` steps.
// Throws Error("calibration-failed") when no candidate up to R_max works,
// Error("config-invalid") if a nonempty perturbation has beta*(l+1) < 4.
CalibrationReport calibrate_R_report(const GermSpec& spec, double beta,
                                     double theta, int samples, long horizon,
                                     unsigned long long seed = defaults::kSeed);

SectorParams calibrate_R(const GermSpec& spec, double beta, double theta,
                         int samples, long horizon,
                         unsigned long long seed = defaults::kSeed);

}  // namespace rbl
