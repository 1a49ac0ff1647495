#include "rbl/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "rbl/arithmetic.hpp"
#include "rbl/fatou.hpp"
#include "rbl/global_basin.hpp"
#include "rbl/hyperbolic.hpp"
#include "rbl/orbit.hpp"
#include "rbl/regions.hpp"
#include "rbl/report.hpp"
#include "rbl/rng.hpp"

namespace rbl {

namespace {

// Suite sizes. These are the quick everyday scales; the acceptance gate runs
// the same checks at its own pinned scales.
constexpr int kArithKMax = 15;
constexpr int kArithMaxDenominator = 64;
constexpr int kArithDegreeBound = 6;
constexpr int kInvarianceSamples = 1000;
constexpr int kAsymTraces = 12;
constexpr long kAsymLength = 10000;
constexpr long kAsymTail = 1000;
constexpr int kFatouSamples = 100;
constexpr int kFatouSamplesK3 = 50;
constexpr int kInjectivityPairs = 300;
constexpr int kCoverageTargets = 200;
constexpr int kCoverageTargetsK3 = 100;
constexpr int kBasinGridRes = 60;
constexpr int kGlobalLawPoints = 40;
constexpr int kGlobalLawPointsK3 = 20;
constexpr int kCocyclePoints = 1000;
constexpr int kBandTrajectories = 5;
constexpr int kSandwichPairs = 2000;
constexpr int kRadialPairs = 200;
constexpr int kDeckPairs = 64;
constexpr int kSeparationPoints = 60;

// Pinned acceptance-style thresholds shared with the gate.
constexpr double kTailSupBound = 0.15;
constexpr double kTailArgBound = 0.1;
constexpr double kModulusBandRatio = 3.0;
constexpr double kCBound = 1e-3;
constexpr double kHalvingFactor = 2.0;
constexpr double kVBoundC = 0.5;
constexpr double kVSpread = 1.25;
constexpr double kSlopeBound = 1.0;
constexpr double kJacobianDevBound = 0.2;
constexpr double kCoverageRate = 0.95;
constexpr double kAgreementRate = 0.99;
constexpr double kCocycleTol = 1e-12;
constexpr double kXiBandRatio = 2.0;
constexpr double kMetricTol = 1e-9;
constexpr double kDeckTol = 1e-12;

struct Collector {
  SuiteResult result;

  explicit Collector(std::string suite) { result.suite = std::move(suite); }

  void add(const std::string& name, double measured, const std::string& cmp,
           double threshold) {
    bool ok = false;
    if (cmp == "<=") ok = measured <= threshold;
    else if (cmp == ">=") ok = measured >= threshold;
    else if (cmp == "<") ok = measured < threshold;
    else if (cmp == ">") ok = measured > threshold;
    else throw Error("internal", "unknown comparison " + cmp);
    result.checks.push_back({name, ok, measured, threshold, cmp});
    result.passed = result.passed && ok;
  }
};

double mu_kappa(const GermSpec& spec, int j, cplx* mu_out) {
  cplx mu(1.0, 0.0);
  for (int i = j - 1; i < spec.k; ++i) mu *= spec.lambdas[static_cast<size_t>(i)];
  *mu_out = mu;
  return static_cast<double>(spec.k - j + 1) / static_cast<double>(spec.k);
}

cplx suffix_product(const ComplexPoint& p, int j) {
  cplx acc(1.0, 0.0);
  for (int i = p.k - 1; i >= j - 1; --i) acc *= p.c[i];
  return acc;
}

// --- sampling helpers --------------------------------------------------------

// Basin samples whose start depth is bounded (|1/u| <= u_cap), so the fixed
// tail window [kAsymTail, kAsymLength] lies in the asymptotic regime: the
// tail deviation |n u_n - 1| ~ (|1/u_0| + c log n)/n only drops below the
// pinned bound for bounded-depth starts.
std::vector<ComplexPoint> bounded_depth_samples(const BasinParams& bp, int n,
                                                unsigned long long seed,
                                                double u_cap) {
  std::vector<ComplexPoint> out;
  out.reserve(static_cast<size_t>(n));
  const auto raw = sample_B(bp, 8 * n, seed);
  for (const auto& p : raw) {
    if (std::abs(1.0 / resonant_product(p)) <= u_cap) {
      out.push_back(p);
      if (static_cast<int>(out.size()) == n) return out;
    }
  }
  throw Error("internal", "bounded-depth rejection sampling starved");
}

// Balanced basin points |z_j| = |u|^{1/k}: wedge entry times for the
// steepest tested aperture scale like (|z_{j,0}| |1/u_0|^{1/2})^{20}, so only
// balanced starts enter within the trace length.
std::vector<ComplexPoint> balanced_samples(const BasinParams& bp, int n,
                                           unsigned long long seed) {
  std::vector<ComplexPoint> out(static_cast<size_t>(n), ComplexPoint(bp.k));
  for (int i = 0; i < n; ++i) {
    SplitMix64 rng = stream_rng(seed, 40000 + static_cast<unsigned>(i));
    const double phi = rng.uniform(-0.8 * bp.sector.theta, 0.8 * bp.sector.theta);
    const double modu = std::cos(phi) / rng.uniform(1.2 * bp.sector.R, 6.0 * bp.sector.R);
    const cplx u = std::polar(modu, phi);
    ComplexPoint p(bp.k);
    cplx partial(1.0, 0.0);
    for (int j = 0; j < bp.k - 1; ++j) {
      p.c[j] = std::polar(std::pow(modu, 1.0 / bp.k),
                          rng.uniform(-defaults::kPi, defaults::kPi));
      partial *= p.c[j];
    }
    p.c[bp.k - 1] = u / partial;
    out[static_cast<size_t>(i)] = p;
  }
  return out;
}

// Basin samples pulled back 1..3 steps, so classification meets them at a
// nontrivial hitting step.
std::vector<ComplexPoint> pulled_back_samples(const GermSpec& spec,
                                              const BasinParams& bp, int n,
                                              unsigned long long seed) {
  auto pts = sample_B(bp, n, seed);
  for (int i = 0; i < n; ++i) {
    ComplexPoint p = pts[static_cast<size_t>(i)];
    const int back = 1 + (i % 3);
    for (int b = 0; b < back; ++b) {
      ComplexPoint guess(p.k);
      for (int j = 0; j < p.k; ++j) {
        guess.c[j] = std::conj(spec.lambdas[static_cast<size_t>(j)]) * p.c[j];
      }
      p = germ_preimage(spec, p, guess);
    }
    pts[static_cast<size_t>(i)] = p;
  }
  return pts;
}

std::vector<GermSpec> default_triple() {
  return {default_germ_k2(), default_germ_k3(), default_germ_perturbed()};
}

const char* germ_tag(size_t idx) {
  switch (idx) {
    case 0: return "k2";
    case 1: return "k3";
    default: return "k2-perturbed";
  }
}

// --- suites ------------------------------------------------------------------

SuiteResult suite_arith(const RunConfig& cfg) {
  Collector c("arith");

  // Partial sums of the golden rotation stagnate below the configured bound.
  const auto golden = brjuno_partial_sums(RotationNumber::golden(), kArithKMax,
                                          cfg.stagnation_tol);
  const size_t last = golden.partial_sums.size() - 1;
  const double increment =
      golden.partial_sums[last] - golden.partial_sums[last - 2];
  c.add("golden-stagnation", increment, "<=", cfg.stagnation_tol);
  c.add("golden-verdict", golden.verdict == "brjuno-plausible" ? 1.0 : 0.0,
        ">=", 1.0);

  // Every rational with small denominator is rejected as a root of unity.
  long failures = 0;
  for (long long q = 2; q <= kArithMaxDenominator; ++q) {
    for (long long p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      RotationNumber r;
      r.kind = RotationNumber::Kind::fraction;
      r.p = p;
      r.q = q;
      const auto scan = small_divisor_scan(r, kArithKMax, cfg.stagnation_tol);
      if (scan.verdict != "root-of-unity") ++failures;
    }
  }
  c.add("rational-rejection", static_cast<double>(failures), "<=", 0.0);

  // Conjugate pair: resonances only in the product form.
  RotationNumber complete;
  complete.kind = RotationNumber::Kind::complete;
  const auto pair = check_one_resonant({RotationNumber::golden(), complete},
                                       kArithDegreeBound, cfg.resonance_tol);
  c.add("pair-one-resonant",
        (pair.one_resonant && pair.violations.empty()) ? 0.0 : 1.0, "<=", 0.0);

  // A fixed 30-digit dimension-3 tuple stays one-resonant at degree 6.
  const auto a = RotationNumber::parse("0.314159265358979323846264338327");
  const auto b = RotationNumber::parse("0.271828182845904523536028747135");
  const auto tuple =
      check_one_resonant({a, b, complete}, kArithDegreeBound, cfg.resonance_tol);
  c.add("tuple-one-resonant",
        (tuple.one_resonant && tuple.violations.empty()) ? 0.0 : 1.0, "<=", 0.0);

  return c.result;
}

SuiteResult suite_invariance(const RunConfig& cfg) {
  Collector c("invariance");
  auto germs = default_triple();
  std::vector<std::string> tags = {"k2", "k3", "k2-perturbed"};
  if (!cfg.germ_file.empty()) {
    germs.push_back(resolve_germ(cfg));
    tags.push_back("config-germ");
  }
  for (size_t gi = 0; gi < germs.size(); ++gi) {
    const auto rep =
        check_invariance(germs[gi], basin_of(cfg, germs[gi].k),
                         kInvarianceSamples, cfg.horizon_invariance, cfg.seed);
    c.add("exits-" + tags[gi], static_cast<double>(rep.violators.size()), "<=",
          0.0);
  }
  return c.result;
}

SuiteResult suite_asymptotics(const RunConfig& cfg) {
  Collector c("asymptotics");
  const auto germs = default_triple();
  for (size_t gi = 0; gi < germs.size(); ++gi) {
    const GermSpec& spec = germs[gi];
    const std::string tag = germ_tag(gi);
    const BasinParams bp = basin_of(cfg, spec.k);

    const auto starts = bounded_depth_samples(
        bp, kAsymTraces, mix_key(cfg.seed, 100 + gi), 80.0);
    std::vector<OrbitTrace> traces;
    traces.reserve(starts.size());
    double sup_nu = 0.0, sup_arg = 0.0, band = 0.0;
    for (const auto& p : starts) {
      traces.push_back(iterate(spec, p, kAsymLength));
      const auto rep = asymptotics_report(traces.back(), kAsymTail);
      sup_nu = std::max(sup_nu, rep.sup_nu_minus_1);
      sup_arg = std::max(sup_arg, rep.max_abs_arg_u);
      for (const auto& b : rep.modulus_bands) band = std::max(band, b.hi / b.lo);
    }
    c.add("tail-sup-" + tag, sup_nu, "<=", kTailSupBound);
    c.add("tail-arg-" + tag, sup_arg, "<=", kTailArgBound);
    c.add("modulus-band-" + tag, band, "<=", kModulusBandRatio);

    // Eventual wedge membership on balanced starts, for each tested aperture.
    const std::vector<double> gammas = (spec.k == 2)
                                           ? std::vector<double>{0.35, 0.4, 0.45}
                                           : std::vector<double>{0.20, 0.25, 0.30};
    const auto balanced =
        balanced_samples(bp, kAsymTraces, mix_key(cfg.seed, 200 + gi));
    long missing = 0;
    for (const auto& p : balanced) {
      const auto trace = iterate(spec, p, kAsymLength);
      for (double gamma : gammas) {
        if (eventual_W_entry(trace, gamma) < 0) ++missing;
      }
    }
    c.add("wedge-entry-" + tag, static_cast<double>(missing), "<=", 0.0);

    const auto ce = estimate_c(spec, traces, kAsymTail);
    c.add("drift-constant-" + tag, std::abs(ce.value - model_c(spec.k)), "<=",
          kCBound);
  }
  return c.result;
}

SuiteResult suite_fatou(const RunConfig& cfg) {
  Collector c("fatou");
  const GermSpec g2 = default_germ_k2();
  const BasinParams bp2 = basin_of(cfg, 2);
  const double c2 = model_c(2);

  // Abel equation and the second-coordinate functional equation on one
  // shared sample set.
  {
    const auto pts = sample_B(bp2, kFatouSamples, mix_key(cfg.seed, 300));
    double abel = 0.0, sigma_res = 0.0, sigma_min = 1e300;
    cplx mu2;
    const double kappa2 = mu_kappa(g2, 2, &mu2);
    for (const auto& p : pts) {
      const ComplexPoint fp = eval(g2, p);
      const auto cv_p = chart_values(g2, p, c2, cfg.tol_psi, cfg.tol_sigma);
      const auto cv_f = chart_values(g2, fp, c2, cfg.tol_psi, cfg.tol_sigma);
      abel = std::max(abel,
                      std::abs(cv_f.psi.value - cv_p.psi.value - cplx(1.0, 0.0)));
      const cplx predicted = mu2 * std::exp(-kappa2 / cv_p.psi.value) *
                             cv_p.sigma[0].value;
      sigma_res = std::max(sigma_res, std::abs(cv_f.sigma[0].value - predicted));
      sigma_min = std::min(sigma_min, std::abs(cv_p.sigma[0].value));
    }
    c.add("abel-residual", abel, "<=", 2.0 * cfg.tol_psi);
    c.add("sigma-residual", sigma_res, "<=", 2.0 * cfg.tol_sigma);
    c.add("sigma-nonzero", sigma_min, ">", 0.0);
  }

  // Increment rate: |psi_{2m} - psi_m| halves within a factor of 2 per
  // doubling of m.
  {
    const double r0 = std::sqrt(0.08);
    const ComplexPoint p0 = point2(r0, r0);
    double worst = 0.0;
    double prev = -1.0;
    for (long m = 64; m <= 4096; m *= 2) {
      const double d = std::abs(psi_m(g2, c2, p0, static_cast<int>(2 * m)) -
                                psi_m(g2, c2, p0, static_cast<int>(m)));
      if (prev > 0.0) {
        const double ratio = d / prev;
        worst = std::max(worst, std::max(ratio / 0.5, 0.5 / ratio));
      }
      prev = d;
    }
    c.add("increment-halving", worst, "<=", kHalvingFactor);
  }

  // Correction term v = psi - 1/u - c log u obeys |v| <= C|u| with a stable
  // constant across a decade of |u|.
  {
    double cmin = 1e300, cmax = 0.0;
    for (double r : {0.0316, 0.04, 0.05, 0.0632, 0.08, 0.1}) {
      const ComplexPoint p = point2(r, r);
      const auto est = psi(g2, c2, p, 1e-10, 200000);
      const cplx u = resonant_product(p);
      const double ratio =
          std::abs(est.value - (1.0 / u + c2 * std::log(u))) / std::abs(u);
      cmin = std::min(cmin, ratio);
      cmax = std::max(cmax, ratio);
    }
    c.add("v-bound", cmax, "<=", kVBoundC);
    c.add("v-bound-stability", cmax / cmin, "<=", kVSpread);
  }

  // Log-log slope of |sigma(r,r) - r| against u = r^2.
  {
    std::vector<double> lu, ld;
    for (double r : {0.05, 0.07, 0.10, 0.14, 0.20, 0.28, 0.40}) {
      const auto est = sigma(g2, point2(r, r), 1e-10, 600000);
      lu.push_back(std::log(r * r));
      ld.push_back(std::log(std::abs(est.value - cplx(r, 0.0))));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(lu.size());
    for (size_t i = 0; i < lu.size(); ++i) {
      sx += lu[i]; sy += ld[i]; sxx += lu[i] * lu[i]; sxy += lu[i] * ld[i];
    }
    c.add("sigma-slope", (n * sxy - sx * sy) / (n * sxx - sx * sx), ">=",
          kSlopeBound);
  }

  // Dimension 3: all fiber coordinates obey their functional equations and
  // the suffix products decay on the predicted power-law bands.
  {
    const GermSpec g3 = default_germ_k3();
    const BasinParams bp3 = basin_of(cfg, 3);
    const double c3 = model_c(3);
    const auto pts = sample_B(bp3, kFatouSamplesK3, mix_key(cfg.seed, 301));
    double res = 0.0;
    for (const auto& p : pts) {
      const ComplexPoint fp = eval(g3, p);
      const auto cv_p = chart_values(g3, p, c3, cfg.tol_psi, cfg.tol_sigma);
      const auto cv_f = chart_values(g3, fp, c3, cfg.tol_psi, cfg.tol_sigma);
      for (int j = 2; j <= 3; ++j) {
        cplx mu;
        const double kappa = mu_kappa(g3, j, &mu);
        const cplx predicted = mu * std::exp(-kappa / cv_p.psi.value) *
                               cv_p.sigma[static_cast<size_t>(j - 2)].value;
        res = std::max(res, std::abs(cv_f.sigma[static_cast<size_t>(j - 2)].value -
                                     predicted));
      }
    }
    c.add("sigma-residual-k3", res, "<=", 2.0 * cfg.tol_sigma);

    const auto starts = bounded_depth_samples(bp3, kBandTrajectories,
                                              mix_key(cfg.seed, 302), 80.0);
    double band = 0.0;
    for (const auto& p : starts) {
      const auto trace = iterate(g3, p, kAsymLength);
      for (int j = 2; j <= 3; ++j) {
        const double expo = static_cast<double>(3 - j + 1) / 3.0;
        double lo = 1e300, hi = 0.0;
        for (long m = kAsymTail; m < static_cast<long>(trace.points.size());
             ++m) {
          const double scaled =
              std::abs(suffix_product(trace.points[static_cast<size_t>(m)], j)) *
              std::pow(static_cast<double>(m), expo);
          lo = std::min(lo, scaled);
          hi = std::max(hi, scaled);
        }
        band = std::max(band, hi / lo);
      }
    }
    c.add("suffix-band-k3", band, "<=", kModulusBandRatio);
  }

  // Injectivity, Jacobian, and Newton coverage of the chart.
  {
    BasinParams shrunk = bp2;
    shrunk.sector.R = 4.0 * bp2.sector.R;
    shrunk.sector.theta = 0.5 * bp2.sector.theta;
    const auto inj = injectivity_probe(g2, shrunk, kInjectivityPairs,
                                       mix_key(cfg.seed, 303), 1e-9);
    c.add("injectivity-collisions",
          static_cast<double>(inj.collisions_chart + inj.collisions_psi_w), "<=",
          0.0);

    const auto jac = jacobian_probe(g2, {1e-2, 3e-3, 1e-3}, cfg.tol_psi);
    double dev = 0.0;
    for (double d : jac.det_deviation) dev = std::max(dev, d);
    c.add("jacobian-window", dev, "<=", kJacobianDevBound);
    c.add("jacobian-trend", jac.trending_to_one ? 1.0 : 0.0, ">=", 1.0);

    const auto cov2 = coverage_probe(g2, shrunk, kCoverageTargets,
                                     mix_key(cfg.seed, 304));
    c.add("coverage-k2", cov2.hit_rate, ">=", kCoverageRate);

    const GermSpec g3 = default_germ_k3();
    BasinParams shrunk3 = basin_of(cfg, 3);
    shrunk3.sector.R = 4.0 * shrunk3.sector.R;
    shrunk3.sector.theta = 0.5 * shrunk3.sector.theta;
    const auto cov3 = coverage_probe(g3, shrunk3, kCoverageTargetsK3,
                                     mix_key(cfg.seed, 305));
    c.add("coverage-k3", cov3.hit_rate, ">=", kCoverageRate);
  }

  return c.result;
}

SuiteResult suite_basin(const RunConfig& cfg) {
  Collector c("basin");
  const GermSpec g2 = default_germ_k2();
  const BasinParams bp2 = basin_of(cfg, 2);

  // Hitting-time classification vs the ratio heuristic on a real slice.
  {
    const SliceSpec slice = preset_slice("real", 0.25, kBasinGridRes);
    const auto grid_hit = raster_slice(g2, slice, bp2, cfg.horizon_classify,
                                       ClassifyMethod::hitting);
    const auto grid_ratio = raster_slice(g2, slice, bp2, cfg.horizon_classify,
                                         ClassifyMethod::ratio);
    const auto agree = compare_grids(slice, grid_hit, grid_ratio);
    c.add("grid-agreement", agree.agreement_rate, ">=", kAgreementRate);
    c.add("axis-cells", static_cast<double>(agree.axis_misclassified), "<=",
          0.0);
  }

  // Global coordinates: Abel law, fiber multiplier law, and hitting-step
  // independence on points classified at nontrivial steps.
  const auto germs = default_triple();
  for (size_t gi = 0; gi < 2; ++gi) {  // k2 and k3
    const GermSpec& spec = germs[gi];
    const std::string tag = germ_tag(gi);
    const BasinParams bp = basin_of(cfg, spec.k);
    const int n_pts = (spec.k == 2) ? kGlobalLawPoints : kGlobalLawPointsK3;
    const auto pts =
        pulled_back_samples(spec, bp, n_pts, mix_key(cfg.seed, 400 + gi));

    double abel = 0.0, law = 0.0, shift = 0.0;
    for (const auto& p : pts) {
      const ComplexPoint fp = eval(spec, p);
      const cplx a = g1(spec, p, bp, cfg.tol_psi, cfg.horizon_classify);
      const cplx af = g1(spec, fp, bp, cfg.tol_psi, cfg.horizon_classify);
      abel = std::max(abel, std::abs(af - a - cplx(1.0, 0.0)));
      shift = std::max(
          shift, std::abs(g1_at_shifted_step(spec, p, bp, 2, cfg.tol_psi,
                                             cfg.horizon_classify) -
                          a));
      for (int j = 2; j <= spec.k; ++j) {
        cplx mu;
        const double kappa = mu_kappa(spec, j, &mu);
        const cplx gp = g_j(spec, p, bp, j, cfg.tol_sigma, cfg.horizon_classify);
        const cplx gf = g_j(spec, fp, bp, j, cfg.tol_sigma, cfg.horizon_classify);
        law = std::max(law, std::abs(gf - mu * std::exp(-kappa / a) * gp));
        shift = std::max(
            shift, std::abs(g_j_at_shifted_step(spec, p, bp, j, 2,
                                                cfg.tol_sigma,
                                                cfg.horizon_classify) -
                            gp));
      }
    }
    c.add("g1-equivariance-" + tag, abel, "<=", 2.0 * cfg.tol_psi);
    c.add("gj-multiplier-law-" + tag, law, "<=", 2.0 * cfg.tol_sigma);
    c.add("step-independence-" + tag, shift, "<=", 2.0 * cfg.tol_sigma);
  }

  return c.result;
}

SuiteResult suite_fibration(const RunConfig& cfg) {
  Collector c("fibration");
  const GermSpec g2 = default_germ_k2();
  const cplx lambda = g2.lambdas[0];

  // Two-step composition of transition multipliers vs direct evaluation.
  double cocycle = 0.0;
  for (int i = 0; i < kCocyclePoints; ++i) {
    SplitMix64 rng = stream_rng(cfg.seed, 500 + static_cast<unsigned>(i));
    const double phi = rng.uniform(-0.45 * cfg.theta, 0.45 * cfg.theta);
    const double x = cfg.R * std::exp(rng.uniform(0.0, std::log(8.0)));
    const cplx zeta = std::polar(x / std::cos(phi), phi);
    const long n = static_cast<long>(rng.next() % 31ull);
    const cplx composed = transition(zeta, n, lambda) *
                          transition(zeta, n + 1, lambda);
    const cplx direct =
        lambda * lambda *
        std::exp(0.5 * (1.0 / (zeta + static_cast<double>(n)) +
                        1.0 / (zeta + static_cast<double>(n + 1))));
    cocycle = std::max(cocycle, std::abs(composed - direct));
  }
  c.add("cocycle-composition", cocycle, "<=", kCocycleTol);

  // Fiber sequence modulus: |xi_n| sqrt(n) confined to a narrow band.
  std::vector<long> ns;
  for (long n = 100; n <= 10000; n += 100) ns.push_back(n);
  double band = 0.0;
  for (int t = 0; t < kBandTrajectories; ++t) {
    SplitMix64 rng = stream_rng(cfg.seed, 600 + static_cast<unsigned>(t));
    const cplx zeta0(rng.uniform(2.0, 20.0), rng.uniform(-5.0, 5.0));
    const cplx xi0 = std::polar(1.0, rng.uniform(-defaults::kPi, defaults::kPi));
    const auto xs = t_iteration(zeta0, xi0, lambda, ns);
    double lo = 1e300, hi = 0.0;
    for (size_t i = 0; i < ns.size(); ++i) {
      const double scaled =
          std::abs(xs[i]) * std::sqrt(static_cast<double>(ns[i]));
      lo = std::min(lo, scaled);
      hi = std::max(hi, scaled);
    }
    band = std::max(band, hi / lo);
  }
  c.add("xi-band", band, "<=", kXiBandRatio);

  return c.result;
}

SuiteResult suite_metric(const RunConfig& cfg) {
  Collector c("metric");

  // Sandwich: lower <= distance <= upper on random punctured-disc pairs.
  long violations = 0;
  for (int i = 0; i < kSandwichPairs; ++i) {
    SplitMix64 rng = stream_rng(cfg.seed, 700 + static_cast<unsigned>(i));
    auto draw = [&]() {
      const double mod =
          std::exp(rng.uniform(std::log(1e-6), std::log(0.9)));
      return std::polar(mod, rng.uniform(-defaults::kPi, defaults::kPi));
    };
    const cplx z1 = draw(), z2 = draw();
    const double d = punctured_disc_distance(z1, z2);
    const auto b = distance_bounds(z1, z2);
    if (d < b.lower - kMetricTol || d > b.upper + kMetricTol) ++violations;
  }
  c.add("sandwich-violations", static_cast<double>(violations), "<=", 0.0);

  // Radial pairs have the closed-form distance |log(log|z1| / log|z2|)|.
  double radial = 0.0;
  for (int i = 0; i < kRadialPairs; ++i) {
    SplitMix64 rng = stream_rng(cfg.seed, 800 + static_cast<unsigned>(i));
    const double r1 = std::exp(rng.uniform(std::log(1e-6), std::log(0.9)));
    const double r2 = std::exp(rng.uniform(std::log(1e-6), std::log(0.9)));
    const double d = punctured_disc_distance(cplx(r1, 0.0), cplx(r2, 0.0));
    radial = std::max(radial, std::abs(d - std::abs(std::log(std::log(r1) /
                                                             std::log(r2)))));
  }
  c.add("radial-identity", radial, "<=", kMetricTol);

  // Enlarging the deck-transformation window does not move the minimum.
  double deck = 0.0;
  for (int i = 0; i < kDeckPairs; ++i) {
    SplitMix64 rng = stream_rng(cfg.seed, 900 + static_cast<unsigned>(i));
    auto draw = [&]() {
      const double mod = std::exp(rng.uniform(std::log(1e-4), std::log(0.8)));
      return std::polar(mod, rng.uniform(-defaults::kPi, defaults::kPi));
    };
    const cplx z1 = draw(), z2 = draw();
    deck = std::max(deck,
                    std::abs(punctured_disc_distance(z1, z2, 16) -
                             punctured_disc_distance(z1, z2, 32)));
  }
  c.add("deck-window", deck, "<=", kDeckTol);

  // Separation mechanism: pairs with |xi| = |zeta|^{(1-beta)/beta} stay at
  // least log((1-beta)/beta) - g apart.
  const double expo = (1.0 - cfg.beta) / cfg.beta;
  long sep_violations = 0;
  double margin = 1e300;
  for (int i = 0; i < kSeparationPoints; ++i) {
    SplitMix64 rng = stream_rng(cfg.seed, 1000 + static_cast<unsigned>(i));
    const double t = static_cast<double>(i) / (kSeparationPoints - 1);
    const double mod_z = std::exp(std::log(0.3) * (1.0 - t) + std::log(1e-6) * t);
    const cplx zeta = std::polar(mod_z, rng.uniform(-defaults::kPi, defaults::kPi));
    const cplx xi = std::polar(std::pow(mod_z, expo),
                               rng.uniform(-defaults::kPi, defaults::kPi));
    const double d = punctured_disc_distance(zeta, xi);
    const double bound = separation_bound(cfg.beta) - distance_bounds(zeta, xi).g;
    margin = std::min(margin, d - bound);
    if (d < bound) ++sep_violations;
  }
  c.add("separation-violations", static_cast<double>(sep_violations), "<=", 0.0);
  c.add("separation-margin", margin, ">=", 0.0);

  return c.result;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "arith",      "invariance", "asymptotics", "fatou",
      "basin",      "fibration",  "metric"};
  return names;
}

SuiteResult run_single_suite(const RunConfig& cfg, const std::string& name) {
  if (name == "arith") return suite_arith(cfg);
  if (name == "invariance") return suite_invariance(cfg);
  if (name == "asymptotics") return suite_asymptotics(cfg);
  if (name == "fatou") return suite_fatou(cfg);
  if (name == "basin") return suite_basin(cfg);
  if (name == "fibration") return suite_fibration(cfg);
  if (name == "metric") return suite_metric(cfg);
  throw Error("config-invalid", "unknown suite: " + name);
}

json suite_report(const RunConfig& cfg, const SuiteResult& result) {
  json rep = report_header(cfg);
  rep["suite"] = result.suite;
  json checks = json::array();
  for (const auto& ck : result.checks) {
    json row;
    row["name"] = ck.name;
    row["passed"] = ck.passed;
    row["measured"] = ck.measured;
    row["cmp"] = ck.cmp;
    row["threshold"] = ck.threshold;
    checks.push_back(row);
  }
  rep["checks"] = checks;
  rep["passed"] = result.passed;
  return rep;
}

namespace {

void print_result(const SuiteResult& r) {
  for (const auto& ck : r.checks) {
    std::printf("[%s/%s] %s measured=%.6g %s %.6g\n", r.suite.c_str(),
                ck.name.c_str(), ck.passed ? "PASS" : "FAIL", ck.measured,
                ck.cmp.c_str(), ck.threshold);
  }
  std::printf("[%s] %s (%zu checks)\n", r.suite.c_str(),
              r.passed ? "PASS" : "FAIL", r.checks.size());
}

}  // namespace

int run_suite(const RunConfig& cfg, const std::string& name) {
  validate(cfg);
  if (name != "all") {
    const SuiteResult r = run_single_suite(cfg, name);
    print_result(r);
    write_text_file(cfg.out_dir + "/" + name + ".json",
                    suite_report(cfg, r).dump(2) + "\n");
    return r.passed ? 0 : 1;
  }

  bool all_passed = true;
  json summary = report_header(cfg);
  json rows = json::array();
  for (const auto& suite : suite_names()) {
    const SuiteResult r = run_single_suite(cfg, suite);
    print_result(r);
    write_text_file(cfg.out_dir + "/" + suite + ".json",
                    suite_report(cfg, r).dump(2) + "\n");
    json row;
    row["suite"] = suite;
    row["passed"] = r.passed;
    row["checks"] = r.checks.size();
    rows.push_back(row);
    all_passed = all_passed && r.passed;
  }
  summary["suites"] = rows;
  summary["passed"] = all_passed;
  write_text_file(cfg.out_dir + "/all.json", summary.dump(2) + "\n");
  std::printf("[all] %s\n", all_passed ? "PASS" : "FAIL");
  return all_passed ? 0 : 1;
}

}  // namespace rbl
