#include "rbl/hyperbolic.hpp"

#include <cmath>

namespace rbl {

namespace {

// arccosh(1 + x) for x >= 0, stable for small x.
double arccosh1p(double x) {
  return std::log1p(x + std::sqrt(x * (x + 2.0)));
}

}  // namespace

double halfplane_distance(cplx w1, cplx w2, Curvature conv) {
  if (!(w1.real() < 0.0) || !(w2.real() < 0.0)) {
    throw Error("domain-error", "both points must have Re < 0");
  }
  const double dx = w1.real() - w2.real();
  const double dy = w1.imag() - w2.imag();
  const double num = dx * dx + dy * dy;
  const double x = num / (2.0 * std::abs(w1.real()) * std::abs(w2.real()));
  const double d = arccosh1p(x);
  return conv == Curvature::minus_one ? d : 0.5 * d;
}

double punctured_disc_distance(cplx z1, cplx z2, int deck_window,
                               Curvature conv) {
  if (deck_window < 1) throw Error("config-invalid", "deck window must be >= 1");
  const double m1 = std::abs(z1);
  const double m2 = std::abs(z2);
  if (!(m1 > 0.0 && m1 < 1.0 && m2 > 0.0 && m2 < 1.0)) {
    throw Error("domain-error", "points must satisfy 0 < |z| < 1 strictly");
  }
  const cplx w1 = std::log(z1);  // principal branch; Re = log|z| < 0
  const cplx w2 = std::log(z2);
  double best = 1e300;
  for (int n = -deck_window; n <= deck_window; ++n) {
    const cplx w2n = w2 + cplx(0.0, 2.0 * defaults::kPi * static_cast<double>(n));
    best = std::min(best, halfplane_distance(w1, w2n, conv));
  }
  return best;
}

DistanceBounds distance_bounds(cplx z1, cplx z2) {
  const double m1 = std::abs(z1);
  const double m2 = std::abs(z2);
  if (!(m1 > 0.0 && m1 < 1.0 && m2 > 0.0 && m2 < 1.0)) {
    throw Error("domain-error", "points must satisfy 0 < |z| < 1 strictly");
  }
  DistanceBounds b;
  const double l1 = std::log(m1);  // < 0
  const double l2 = std::log(m2);
  b.lower = std::abs(std::log(l1 / l2));
  b.g = 2.0 * defaults::kPi * std::max(-1.0 / l1, -1.0 / l2);
  b.upper = b.lower + b.g;
  return b;
}

double separation_bound(double beta) {
  if (!(beta > 0.0 && beta < 0.5)) {
    throw Error("domain-error", "beta must lie in (0, 1/2)");
  }
  return std::log((1.0 - beta) / beta);
}

}  // namespace rbl
