// Small-divisor scans, stagnation verdicts, and one-resonance checks.
// Expected numbers were frozen from tests/oracles/brjuno_sums.py.
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "doctest.h"
#include "rbl/arithmetic.hpp"
#include "rbl/rotation.hpp"

using namespace rbl;

TEST_CASE("rotation tokens round-trip and evaluate") {
  RotationNumber g = RotationNumber::golden();
  CHECK(g.value() == doctest::Approx(0.6180339887498948482).epsilon(1e-15));
  CHECK(g.token() == "golden");

  RotationNumber s = RotationNumber::silver();
  CHECK(s.value() == doctest::Approx(0.4142135623730950488).epsilon(1e-15));

  RotationNumber f = RotationNumber::parse("3/8");
  CHECK(f.p == 3);
  CHECK(f.q == 8);
  CHECK(f.value() == doctest::Approx(0.375));
  CHECK(f.token() == "3/8");

  RotationNumber d = RotationNumber::parse("0.110001000000000000000001");
  CHECK(d.value() == doctest::Approx(0.110001).epsilon(1e-12));
  CHECK(d.token() == "0.110001000000000000000001");

  RotationNumber c = RotationNumber::parse("complete");
  CHECK(c.kind == RotationNumber::Kind::complete);

  std::vector<RotationNumber> pair = {RotationNumber::golden(), c};
  // completing entry: 1 - frac(sum of the others)
  CHECK(alpha_value(pair, 1) ==
        doctest::Approx(1.0 - 0.6180339887498948482).epsilon(1e-15));
  cplx l0 = lambda_value(pair, 0);
  cplx l1 = lambda_value(pair, 1);
  CHECK(std::abs(l0 * l1 - cplx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("omega at the first window equals 2 sin(pi alpha) for golden") {
  double w = omega(RotationNumber::golden(), 2);
  CHECK(w == doctest::Approx(1.8640648476264552431).epsilon(1e-14));
}

TEST_CASE("golden-mean partial sums match the frozen ladder") {
  SmallDivisorReport rep = brjuno_partial_sums(RotationNumber::golden(), 15);
  REQUIRE(rep.partial_sums.size() == 16);
  REQUIRE(rep.m_values.size() == 16);
  CHECK(rep.m_values[0] == 2);
  CHECK(rep.m_values[15] == 65536);
  CHECK(rep.omega_values[0] ==
        doctest::Approx(1.86406484762645524).epsilon(1e-13));
  CHECK(rep.omega_values[3] ==
        doctest::Approx(0.215982528792600628).epsilon(1e-13));
  CHECK(rep.partial_sums[12] ==
        doctest::Approx(0.124577714258513673).epsilon(1e-12));
  CHECK(rep.partial_sums[15] ==
        doctest::Approx(0.126446655957923185).epsilon(1e-12));
  // two-step increments: S_12 - S_10 still above 1e-3, S_15 - S_13 below
  CHECK(rep.partial_sums[12] - rep.partial_sums[10] ==
        doctest::Approx(0.00523296657955).epsilon(1e-9));
  CHECK(rep.partial_sums[15] - rep.partial_sums[13] ==
        doctest::Approx(0.000859716691769).epsilon(1e-9));
  CHECK(rep.verdict == "brjuno-plausible");

  SmallDivisorReport early = brjuno_partial_sums(RotationNumber::golden(), 12);
  CHECK(early.verdict == "inconclusive");
}

TEST_CASE("truncated-Liouville number stays inconclusive at depth 12") {
  RotationNumber a = RotationNumber::parse("0.110001000000000000000001");
  SmallDivisorReport rep = brjuno_partial_sums(a, 12);
  CHECK(rep.partial_sums[12] ==
        doctest::Approx(1.51556996996982834).epsilon(1e-12));
  CHECK(rep.verdict == "inconclusive");
}

TEST_CASE("rationals are rejected as roots of unity") {
  // brjuno_partial_sums throws; small_divisor_scan truncates with a verdict.
  RotationNumber r = RotationNumber::parse("1/3");
  CHECK_THROWS_AS(brjuno_partial_sums(r, 8), Error);
  try {
    brjuno_partial_sums(r, 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "root-of-unity");
  }

  SmallDivisorReport rep = small_divisor_scan(r, 8);
  CHECK(rep.verdict == "root-of-unity");

  // a denser sweep of reduced fractions
  for (long long q = 2; q <= 16; ++q) {
    for (long long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      RotationNumber pq;
      pq.kind = RotationNumber::Kind::fraction;
      pq.p = p;
      pq.q = q;
      SmallDivisorReport s = small_divisor_scan(pq, 8);
      CAPTURE(p);
      CAPTURE(q);
      CHECK(s.verdict == "root-of-unity");
    }
  }
}

TEST_CASE("irrational scans do not trip the root-of-unity detector") {
  SmallDivisorReport rep = small_divisor_scan(RotationNumber::silver(), 12);
  CHECK(rep.verdict != "root-of-unity");
  CHECK(rep.partial_sums.size() == 13);
}

TEST_CASE("conjugate golden pair is one-resonant and admissible") {
  std::vector<RotationNumber> pair = {RotationNumber::golden(),
                                      RotationNumber::parse("complete")};
  OneResonanceReport rep = check_one_resonant(pair, 6);
  CHECK(rep.one_resonant);
  CHECK(rep.violations.empty());
  CHECK(rep.warnings.empty());

  std::vector<SmallDivisorReport> adm = admissible_partial_sums(pair, 8);
  REQUIRE(adm.size() == 2);
  // by symmetry of the pair the two coordinate scans coincide
  CHECK(adm[0].partial_sums[8] ==
        doctest::Approx(1.19460352765097191).epsilon(1e-12));
  CHECK(adm[1].partial_sums[8] ==
        doctest::Approx(adm[0].partial_sums[8]).epsilon(1e-15));
  CHECK(adm[0].omega_values[1] ==
        doctest::Approx(0.55900752264634562).epsilon(1e-13));
}

TEST_CASE("thirty-digit k=3 tuple passes the degree-6 resonance scan") {
  std::vector<RotationNumber> tuple = {
      RotationNumber::parse("0.314159265358979323846264338327"),
      RotationNumber::parse("0.271828182845904523536028747135"),
      RotationNumber::parse("complete")};
  // completing entry resolves to 1 - frac(a + b)
  CHECK(alpha_value(tuple, 2) ==
        doctest::Approx(0.414012551795116152617706914538).epsilon(1e-15));
  OneResonanceReport rep = check_one_resonant(tuple, 6);
  CHECK(rep.one_resonant);
  CHECK(rep.violations.empty());
  // min non-resonant gap for this tuple is 0.0787742493372, far above the
  // near-miss threshold, so no warnings either
  CHECK(rep.warnings.empty());
}

TEST_CASE("a resonant tuple is flagged with the offending multi-index") {
  // alpha_2 = 2 alpha_1 mod 1 creates lambda_2 = lambda_1^2, a bad resonance
  std::vector<RotationNumber> bad = {
      RotationNumber::parse("0.3"), RotationNumber::parse("0.6"),
      RotationNumber::parse("complete")};
  OneResonanceReport rep = check_one_resonant(bad, 6);
  CHECK_FALSE(rep.one_resonant);
  CHECK_FALSE(rep.violations.empty());
}

TEST_CASE("admissible scan rejects tuples with a rational entry") {
  std::vector<RotationNumber> tup = {RotationNumber::parse("1/4"),
                                     RotationNumber::parse("complete")};
  std::vector<SmallDivisorReport> reps = admissible_scan(tup, 6);
  bool any_root = false;
  for (const auto& r : reps) any_root |= (r.verdict == "root-of-unity");
  CHECK(any_root);
}
