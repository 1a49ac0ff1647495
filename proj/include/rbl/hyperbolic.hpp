#pragma once

#include "rbl/common.hpp"

namespace rbl {

// Density convention for the hyperbolic metric.  The default (curvature -1,
// half-plane density 1/|Re w|) is the one under which the radial
// punctured-disc distance equals |log(log|z1|/log|z2|)| and the two-sided
// log-log bounds hold; the curvature -4 convention halves every distance and
// breaks the lower bound on radial pairs, so it is available only behind
// this explicit switch.
enum class Curvature { minus_one, minus_four };

// Hyperbolic distance between two points of the left half-plane
// {Re w < 0}: arccosh(1 + |w1-w2|^2 / (2 |Re w1| |Re w2|)).
// Throws Error("domain-error") unless both points lie strictly in the
// half-plane.
double halfplane_distance(cplx w1, cplx w2,
                          Curvature conv = Curvature::minus_one);

// Hyperbolic distance on the punctured unit disc {0 < |z| < 1}, realized
// through the covering w = log z: minimum over deck translates
// |n| <= deck_window of halfplane_distance(log z1, log z2 + 2 pi i n).
// Throws Error("domain-error") if an argument is not strictly inside the
// punctured disc, Error("config-invalid") if deck_window < 1.
double punctured_disc_distance(cplx z1, cplx z2,
                               int deck_window = defaults::kDeckWindow,
                               Curvature conv = Curvature::minus_one);

// Two-sided bounds around the punctured-disc distance:
//   lower = |log(log|z1| / log|z2|)|,
//   g     = 2 pi max(-1/log|z1|, -1/log|z2|),
//   upper = lower + g.
struct DistanceBounds {
  double lower = 0.0;
  double g = 0.0;
  double upper = 0.0;
};

DistanceBounds distance_bounds(cplx z1, cplx z2);

// log((1-beta)/beta); the distance floor between orbits whose moduli are
// separated by the wedge exponents.  Domain 0 < beta < 1/2.
double separation_bound(double beta);

}  // namespace rbl
