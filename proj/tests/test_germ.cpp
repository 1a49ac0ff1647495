// Germ evaluation, config round-trips, validation, and local inversion.
// Expected orbit values were frozen from tests/oracles/fatou_depth_values.py.
#include <cmath>
#include <complex>
#include <string>

#include "doctest.h"
#include "rbl/germ.hpp"
#include "rbl/point.hpp"

using namespace rbl;

namespace {

cplx product_u(const ComplexPoint& p) {
  cplx u = p.c[0];
  for (int j = 1; j < p.k; ++j) u *= p.c[j];
  return u;
}

ComplexPoint iterate_n(const GermSpec& spec, ComplexPoint p, int n) {
  for (int i = 0; i < n; ++i) p = eval(spec, p);
  return p;
}

}  // namespace

TEST_CASE("built-in germs finalize with unit eigenvalue product") {
  for (GermSpec spec :
       {default_germ_k2(), default_germ_k3(), default_germ_perturbed()}) {
    cplx prod(1.0, 0.0);
    for (const cplx& l : spec.lambdas) prod *= l;
    CHECK(std::abs(prod - cplx(1.0, 0.0)) < 1e-14);
    for (const cplx& l : spec.lambdas) {
      CHECK(std::abs(std::abs(l) - 1.0) < 1e-15);
    }
  }
  CHECK(default_germ_k2().k == 2);
  CHECK(default_germ_k3().k == 3);
  CHECK(default_germ_perturbed().has_perturbation());
  CHECK_FALSE(default_germ_k2().has_perturbation());
}

TEST_CASE("k=2 orbit products match frozen depth-5 values (real start)") {
  GermSpec spec = default_germ_k2();
  ComplexPoint p{cplx(0.1, 0.0), cplx(0.1, 0.0)};
  ComplexPoint p5 = iterate_n(spec, p, 5);
  cplx u5 = product_u(p5);
  CHECK(u5.real() == doctest::Approx(0.009520453941466491).epsilon(1e-13));
  CHECK(std::abs(u5.imag()) < 1e-15);
}

TEST_CASE("k=2 orbit products match frozen depth-5 values (complex start)") {
  GermSpec spec = default_germ_k2();
  ComplexPoint p{cplx(0.08, 0.02), cplx(0.09, -0.01)};
  cplx u5 = product_u(iterate_n(spec, p, 5));
  CHECK(u5.real() == doctest::Approx(0.007139124214566001).epsilon(1e-13));
  CHECK(u5.imag() ==
        doctest::Approx(0.0009293426178214523).epsilon(1e-12));
}

TEST_CASE("k=3 orbit product matches frozen depth-5 value") {
  GermSpec spec = default_germ_k3();
  ComplexPoint p{cplx(0.1, 0.0), cplx(0.1, 0.0), cplx(0.1, 0.0)};
  cplx u5 = product_u(iterate_n(spec, p, 5));
  CHECK(u5.real() == doctest::Approx(0.0009950215801425174).epsilon(1e-13));
  CHECK(std::abs(u5.imag()) < 1e-15);
}

TEST_CASE("product recursion collapses to u' = u (1-u/k)^k on balanced data") {
  // after 100 steps from u = 0.01 the scalar recursion gives the frozen value
  GermSpec spec = default_germ_k2();
  ComplexPoint p{cplx(0.1, 0.0), cplx(0.1, 0.0)};
  cplx u = product_u(iterate_n(spec, p, 100));
  CHECK(u.real() == doctest::Approx(0.004986949164121153).epsilon(1e-12));
}

TEST_CASE("model and full step agree when no corrections are present") {
  GermSpec spec = default_germ_k2();
  ComplexPoint p{cplx(0.03, 0.01), cplx(-0.02, 0.04)};
  ComplexPoint a = eval(spec, p);
  ComplexPoint b = eval_model(spec, p);
  CHECK(exactly_equal(a, b));
}

TEST_CASE("perturbation terms add the monomial at the input point") {
  GermSpec spec = default_germ_k2();
  PerturbationTerm t;
  t.target = 2;
  t.coeff = cplx(0.5, -0.25);
  t.exponents = {8, 7};
  spec.perturbation.push_back(t);
  spec.finalize();

  ComplexPoint p{cplx(0.3, 0.1), cplx(0.2, -0.05)};
  ComplexPoint base = eval_model(spec, p);
  ComplexPoint full = eval(spec, p);
  cplx mono = t.coeff * std::pow(p.c[0], 8) * std::pow(p.c[1], 7);
  CHECK(std::abs(full.c[1] - (base.c[1] + mono)) < 1e-18);
  CHECK(full.c[0] == base.c[0]);
}

TEST_CASE("germ config text round-trips through the parser") {
  GermSpec spec = default_germ_perturbed();
  std::string text = germ_config_text(spec);
  GermSpec back = parse_germ_config(text);
  CHECK(back.k == spec.k);
  CHECK(back.l == spec.l);
  REQUIRE(back.alphas.size() == spec.alphas.size());
  for (size_t i = 0; i < spec.alphas.size(); ++i) {
    CHECK(back.alphas[i].token() == spec.alphas[i].token());
  }
  REQUIRE(back.perturbation.size() == spec.perturbation.size());
  for (size_t i = 0; i < spec.perturbation.size(); ++i) {
    CHECK(back.perturbation[i].target == spec.perturbation[i].target);
    CHECK(back.perturbation[i].coeff == spec.perturbation[i].coeff);
    CHECK(back.perturbation[i].exponents == spec.perturbation[i].exponents);
  }
  // identical lambdas after finalize
  for (size_t j = 0; j < spec.lambdas.size(); ++j) {
    CHECK(back.lambdas[j] == spec.lambdas[j]);
  }
}

TEST_CASE("germ config parser accepts comments and rejects junk") {
  GermSpec ok = parse_germ_config(
      "# comment line\n"
      "dimension 2\n"
      "alphas golden complete\n"
      "\n"
      "order 15\n"
      "perturb 1 0.25 -0.125 9 6\n");
  CHECK(ok.k == 2);
  CHECK(ok.l == 15);
  REQUIRE(ok.perturbation.size() == 1);
  CHECK(ok.perturbation[0].degree() == 15);

  CHECK_THROWS_AS(parse_germ_config("dimension 2\nwibble 3\n"), Error);
  CHECK_THROWS_AS(parse_germ_config("alphas golden complete\n"), Error);
}

TEST_CASE("finalize rejects invalid shapes") {
  GermSpec spec = default_germ_k2();

  SUBCASE("dimension out of range") {
    spec.k = 1;
    CHECK_THROWS_AS(spec.finalize(), Error);
  }
  SUBCASE("alpha count mismatch") {
    spec.alphas.pop_back();
    CHECK_THROWS_AS(spec.finalize(), Error);
  }
  SUBCASE("two completing entries") {
    spec.alphas[0] = RotationNumber::parse("complete");
    spec.alphas[1] = RotationNumber::parse("complete");
    CHECK_THROWS_AS(spec.finalize(), Error);
  }
  SUBCASE("order bound below the wedge-compatibility floor") {
    // with the default wedge exponent 0.3 the order bound must satisfy
    // 0.3 * (l + 1) >= 4, i.e. l >= 13
    spec.l = 12;
    CHECK_THROWS_AS(spec.finalize(), Error);
    spec.l = 13;
    CHECK_NOTHROW(spec.finalize());
  }
  SUBCASE("term degree below the order bound") {
    PerturbationTerm t;
    t.target = 1;
    t.coeff = cplx(0.1, 0.0);
    t.exponents = {7, 7};  // degree 14 < 15
    spec.perturbation.push_back(t);
    CHECK_THROWS_AS(spec.finalize(), Error);
  }
  SUBCASE("term target out of range") {
    PerturbationTerm t;
    t.target = 3;
    t.coeff = cplx(0.1, 0.0);
    t.exponents = {8, 8};
    spec.perturbation.push_back(t);
    CHECK_THROWS_AS(spec.finalize(), Error);
  }
}

TEST_CASE("one-step preimage inverts the germ near the basin") {
  GermSpec spec = default_germ_perturbed();
  ComplexPoint p{cplx(0.06, 0.015), cplx(0.05, -0.02)};
  ComplexPoint target = eval(spec, p);
  // seed the inversion with a rotated-back guess
  ComplexPoint guess = target;
  for (int j = 0; j < spec.k; ++j) guess.c[j] = std::conj(spec.lambdas[j]) * target.c[j];
  ComplexPoint back = germ_preimage(spec, target, guess);
  CHECK(distance(back, p) < 1e-12);
  // and the recovered point maps forward onto the target
  CHECK(distance(eval(spec, back), target) < 1e-14);
}

TEST_CASE("preimage search reports failure away from its contraction zone") {
  // the cubic growth of the step map makes 60 damped iterations from the
  // origin provably too few to reach a preimage at this scale
  GermSpec spec = default_germ_k2();
  ComplexPoint target{cplx(1e30, 0.0), cplx(1e30, 0.0)};
  ComplexPoint guess{cplx(0.0, 0.0), cplx(0.0, 0.0)};
  CHECK_THROWS_AS(germ_preimage(spec, target, guess), Error);
}
