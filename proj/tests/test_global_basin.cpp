// Basin membership classification, the globalized coordinates g1 / g_j,
// chart transition multipliers, slice rasters, and grid comparison.
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "doctest.h"
#include "rbl/germ.hpp"
#include "rbl/global_basin.hpp"
#include "rbl/orbit.hpp"
#include "rbl/regions.hpp"

using namespace rbl;

namespace {

ComplexPoint pull_back(const GermSpec& spec, ComplexPoint p, int steps) {
  for (int s = 0; s < steps; ++s) {
    ComplexPoint guess = p;
    for (int j = 0; j < spec.k; ++j) {
      guess.c[j] = std::conj(spec.lambdas[j]) * p.c[j];
    }
    p = germ_preimage(spec, p, guess);
  }
  return p;
}

}  // namespace

TEST_CASE("classification hits the local region, flags axes and escapes") {
  GermSpec spec = default_germ_k2();
  BasinParams bp = default_basin(2);

  // already inside: hit at step 0
  BasinVerdict inside = classify(spec, ComplexPoint{cplx(0.05, 0.0), cplx(0.05, 0.0)}, bp, 1000);
  CHECK(inside.status == BasinVerdict::Status::in_basin);
  CHECK(inside.step == 0);

  // start just inside the region boundary so three pull-backs exit it:
  // u_0 = 1/12 has Re(1/u) = 12, and each pull-back lowers that by about 1
  const double s = std::sqrt(1.0 / 12.0);
  ComplexPoint seed{cplx(s, 0.0), cplx(s, 0.0)};
  CHECK(in_B(seed, bp));
  ComplexPoint far = pull_back(spec, seed, 3);
  CHECK_FALSE(in_B(far, bp));
  BasinVerdict pulled = classify(spec, far, bp, 1000);
  CHECK(pulled.status == BasinVerdict::Status::in_basin);
  CHECK(pulled.step > 0);
  CHECK(pulled.step <= 3);

  BasinVerdict axis = classify(spec, ComplexPoint{cplx(0.0, 0.0), cplx(0.2, 0.0)}, bp, 1000);
  CHECK(axis.status == BasinVerdict::Status::not_in_basin);
  CHECK(axis.reason == BasinVerdict::Reason::axis);

  BasinVerdict esc = classify(spec, ComplexPoint{cplx(2.0, 0.0), cplx(2.0, 0.0)}, bp, 1000);
  CHECK(esc.status == BasinVerdict::Status::not_in_basin);
  CHECK(esc.reason == BasinVerdict::Reason::escaped);

  // the far point needs two steps, so a one-step horizon cannot decide it
  BasinVerdict undec = classify(spec, far, bp, 1);
  CHECK_FALSE(undec.decided());
  CHECK(undec.reason == BasinVerdict::Reason::horizon_exhausted);
}

TEST_CASE("ratio-based classification agrees with hitting on clear cases") {
  GermSpec spec = default_germ_k2();

  BasinVerdict in1 = classify_by_ratio(spec, ComplexPoint{cplx(0.05, 0.0), cplx(0.05, 0.0)}, 100000);
  CHECK(in1.status == BasinVerdict::Status::in_basin);

  ComplexPoint far = pull_back(spec, ComplexPoint{cplx(0.05, 0.0), cplx(0.05, 0.0)}, 2);
  BasinVerdict in2 = classify_by_ratio(spec, far, 100000);
  CHECK(in2.status == BasinVerdict::Status::in_basin);

  BasinVerdict esc = classify_by_ratio(spec, ComplexPoint{cplx(2.0, 0.0), cplx(2.0, 0.0)}, 1000);
  CHECK(esc.status == BasinVerdict::Status::not_in_basin);

  BasinVerdict ax = classify_by_ratio(spec, ComplexPoint{cplx(0.0, 0.0), cplx(0.2, 0.0)}, 1000);
  CHECK(ax.status == BasinVerdict::Status::not_in_basin);
  CHECK(ax.reason == BasinVerdict::Reason::axis);

  // a lopsided orbit shrinks in norm but violates the coordinate-ratio band
  BasinVerdict lop = classify_by_ratio(spec, ComplexPoint{cplx(1e-9, 0.0), cplx(0.05, 0.0)}, 100000);
  CHECK(lop.status == BasinVerdict::Status::not_in_basin);
  CHECK(lop.reason == BasinVerdict::Reason::ratio_violation);
}

TEST_CASE("g1 extends psi by the hitting shift") {
  GermSpec spec = default_germ_k2();
  BasinParams bp = default_basin(2);
  ComplexPoint p = pull_back(spec, ComplexPoint{cplx(0.06, 0.01), cplx(0.05, -0.01)}, 2);

  cplx gp = g1(spec, p, bp);
  cplx gF = g1(spec, eval(spec, p), bp);
  CHECK(std::abs(gF - (gp + 1.0)) < 2e-8);

  // forcing a deeper hitting step must not change the value
  cplx shifted = g1_at_shifted_step(spec, p, bp, 2);
  CHECK(std::abs(shifted - gp) < 2e-8);
}

TEST_CASE("g_j obeys the twisted multiplier law under one step") {
  GermSpec spec = default_germ_k2();
  BasinParams bp = default_basin(2);
  ComplexPoint p = pull_back(spec, ComplexPoint{cplx(0.06, 0.0), cplx(0.06, 0.0)}, 1);

  cplx gp1 = g1(spec, p, bp);
  cplx gp2 = g_j(spec, p, bp, 2);
  cplx gF2 = g_j(spec, eval(spec, p), bp, 2);
  cplx mu = spec.lambdas[1];
  cplx predicted = mu * std::exp(-0.5 / gp1) * gp2;
  CHECK(std::abs(gF2 - predicted) < 2e-8);

  cplx shifted = g_j_at_shifted_step(spec, p, bp, 2, 2);
  CHECK(std::abs(shifted - gp2) < 2e-8);

  // k = 3: both higher coordinates follow their own multiplier
  GermSpec spec3 = default_germ_k3();
  BasinParams bp3 = default_basin(3);
  ComplexPoint q{cplx(0.08, 0.0), cplx(0.08, 0.0), cplx(0.08, 0.0)};
  cplx q1 = g1(spec3, q, bp3);
  for (int j = 2; j <= 3; ++j) {
    cplx qa = g_j(spec3, q, bp3, j);
    cplx qb = g_j(spec3, eval(spec3, q), bp3, j);
    cplx mu_j(1.0, 0.0);
    for (int i = j; i <= 3; ++i) mu_j *= spec3.lambdas[i - 1];
    double kappa_j = (3.0 - j + 1.0) / 3.0;
    cplx pred = mu_j * std::exp(-kappa_j / q1) * qa;
    CAPTURE(j);
    CHECK(std::abs(qb - pred) < 2e-8);
  }
}

TEST_CASE("g1 and g_j reject points outside the basin") {
  GermSpec spec = default_germ_k2();
  BasinParams bp = default_basin(2);
  ComplexPoint out{cplx(2.0, 0.0), cplx(2.0, 0.0)};
  CHECK_THROWS_AS(g1(spec, out, bp), Error);
  CHECK_THROWS_AS(g_j(spec, out, bp, 2), Error);
}

TEST_CASE("transition multiplier composes along the chart chain") {
  cplx lambda = std::polar(1.0, 1.1);
  cplx zeta(3.0, 0.7);
  for (long n : {0L, 1L, 5L, 20L}) {
    cplx a = transition(zeta, n, lambda);
    cplx b = transition(zeta, n + 1, lambda);
    cplx direct = lambda * lambda *
                  std::exp(0.5 * (1.0 / (zeta + cplx(double(n), 0.0)) +
                                  1.0 / (zeta + cplx(double(n + 1), 0.0))));
    CHECK(std::abs(a * b - direct) < 1e-12);
    CHECK(std::abs(a) > 0.0);
  }
  // default-eigenvalue overload agrees with some unimodular multiplier
  cplx t0 = transition(zeta, 2);
  CHECK(std::abs(t0) == doctest::Approx(std::abs(std::exp(0.5 / (zeta + 2.0)))).epsilon(1e-12));

  // pole of the cocycle: zeta + n = 0
  CHECK_THROWS_AS(transition(cplx(-4.0, 0.0), 4, lambda), Error);
}

TEST_CASE("model fiber iteration keeps |xi_n| sqrt(n) inside a narrow band") {
  cplx zeta0(5.0, 1.0);
  cplx xi0 = std::polar(1.0, 0.3);
  cplx lambda = std::polar(1.0, 2.0 * defaults::kPi * 0.6180339887498949);
  std::vector<long> ns;
  for (long n = 100; n <= 10000; n += 100) ns.push_back(n);
  std::vector<cplx> xs = t_iteration(zeta0, xi0, lambda, ns);
  REQUIRE(xs.size() == ns.size());
  double lo = 1e300, hi = 0.0;
  for (size_t i = 0; i < ns.size(); ++i) {
    double v = std::abs(xs[i]) * std::sqrt(double(ns[i]));
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi / lo < 2.0);

  // the request list must be nondecreasing
  CHECK_THROWS_AS(t_iteration(zeta0, xi0, lambda, {10, 5}), Error);
}

TEST_CASE("slice presets produce valid grids with exact axis cells") {
  SliceSpec real = preset_slice("real", 0.25, 60);
  real.validate();
  CHECK(real.res == 60);
  // even resolution puts the grid midline exactly on the axes
  ComplexPoint mid = real.cell_point(30, 30);
  CHECK(mid.c[0] == cplx(0.0, 0.0));
  CHECK(mid.c[1] == cplx(0.0, 0.0));
  ComplexPoint off_axis = real.cell_point(31, 30);
  CHECK(off_axis.c[0].real() != 0.0);
  CHECK(off_axis.c[1] == cplx(0.0, 0.0));

  SliceSpec diag = preset_slice("diag", 0.2, 16);
  ComplexPoint d = diag.cell_point(10, 12);
  CHECK(d.c[0] == d.c[1]);

  SliceSpec conj = preset_slice("conj", 0.2, 16);
  ComplexPoint cp = conj.cell_point(10, 12);
  CHECK(cp.c[0] == std::conj(cp.c[1]));

  CHECK_THROWS_AS(preset_slice("nope", 0.25, 60), Error);
  SliceSpec bad = preset_slice("real", 0.25, 60);
  bad.res = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("rastered slices agree between the two classification methods") {
  GermSpec spec = default_germ_k2();
  BasinParams bp = default_basin(2);
  SliceSpec slice = preset_slice("real", 0.25, 24);
  ClassificationGrid hit = raster_slice(spec, slice, bp, 20000, ClassifyMethod::hitting);
  ClassificationGrid rat = raster_slice(spec, slice, bp, 20000, ClassifyMethod::ratio);
  CHECK(hit.res == 24);
  CHECK(hit.n_in + hit.n_out + hit.n_undetermined == 24 * 24);
  CHECK(hit.n_in > 0);
  CHECK(hit.n_out > 0);

  GridAgreement agr = compare_grids(slice, hit, rat);
  CHECK(agr.both_decided > 0);
  CHECK(agr.agreement_rate >= 0.99);
  // the 24x24 grid has 2*24 - 1 exact-axis cells, all correctly excluded
  CHECK(agr.axis_cells == 47);
  CHECK(agr.axis_misclassified == 0);
}
