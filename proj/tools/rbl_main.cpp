// rbl: command-line laboratory for resonant-basin dynamics.
//
// Subcommands: arith | region | orbit | asym | fatou | basin | fibration |
// hyp | suite. Global flags: --config, --seed, --threads, --out, --format.
// The RBL_THREADS environment variable overrides --threads.
//
// Exit codes: 0 success, 1 suite check failure, 2 invalid configuration,
// 3 internal error.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rbl/arithmetic.hpp"
#include "rbl/fatou.hpp"
#include "rbl/global_basin.hpp"
#include "rbl/hyperbolic.hpp"
#include "rbl/orbit.hpp"
#include "rbl/parallel.hpp"
#include "rbl/regions.hpp"
#include "rbl/report.hpp"
#include "rbl/rng.hpp"
#include "rbl/run_config.hpp"
#include "rbl/suites.hpp"

namespace {

using namespace rbl;

double parse_double(const std::string& text, const char* what) {
  try {
    size_t pos = 0;
    const double v = std::stod(text, &pos);
    if (pos != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error("config-invalid", std::string("cannot parse ") + what + ": " + text);
  }
}

cplx parse_complex(const std::string& text) {
  const size_t comma = text.find(',');
  if (comma == std::string::npos) {
    return cplx(parse_double(text, "complex number"), 0.0);
  }
  return cplx(parse_double(text.substr(0, comma), "real part"),
              parse_double(text.substr(comma + 1), "imaginary part"));
}

// "re,im;re,im;..." with one "re[,im]" block per coordinate.
ComplexPoint parse_point(const std::string& text) {
  std::vector<cplx> coords;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t sep = text.find(';', start);
    const std::string part =
        text.substr(start, sep == std::string::npos ? std::string::npos : sep - start);
    if (part.empty()) throw Error("config-invalid", "empty coordinate in point: " + text);
    coords.push_back(parse_complex(part));
    if (sep == std::string::npos) break;
    start = sep + 1;
  }
  if (coords.size() < 2 || coords.size() > static_cast<size_t>(kMaxDim)) {
    throw Error("config-invalid", "point needs 2.." + std::to_string(kMaxDim) +
                                      " coordinates: " + text);
  }
  ComplexPoint p(static_cast<int>(coords.size()));
  for (size_t j = 0; j < coords.size(); ++j) p.c[j] = coords[j];
  return p;
}

json complex_json(cplx z) {
  json j;
  j["re"] = z.real();
  j["im"] = z.imag();
  return j;
}

json estimate_json(const CoordinateEstimate& e) {
  json j = complex_json(e.value);
  j["depth"] = e.depth;
  j["last_increment"] = e.last_increment;
  j["converged"] = e.converged;
  return j;
}

void emit(const RunConfig& cfg, const std::string& filename,
          const std::string& content) {
  const std::string path = cfg.out_dir + "/" + filename;
  write_text_file(path, content);
  std::printf("wrote %s\n", path.c_str());
}

void emit_binary(const RunConfig& cfg, const std::string& filename,
                 const std::string& bytes) {
  const std::string path = cfg.out_dir + "/" + filename;
  write_binary_file(path, bytes);
  std::printf("wrote %s\n", path.c_str());
}

// --- arith -------------------------------------------------------------------

int cmd_arith(const RunConfig& cfg, const std::string& alpha,
              const std::vector<std::string>& tuple, int kmax, int degree) {
  json rep = report_header(cfg);
  if (tuple.empty()) {
    const RotationNumber r = RotationNumber::parse(alpha);
    const auto scan = small_divisor_scan(r, kmax, cfg.stagnation_tol);
    rep["alpha"] = r.token();
    rep["m_values"] = scan.m_values;
    rep["omega_values"] = scan.omega_values;
    rep["partial_sums"] = scan.partial_sums;
    rep["verdict"] = scan.verdict;
  } else {
    std::vector<RotationNumber> alphas;
    for (const auto& tok : tuple) alphas.push_back(RotationNumber::parse(tok));
    const auto res = check_one_resonant(alphas, degree, cfg.resonance_tol);
    json toks = json::array();
    for (const auto& r : alphas) toks.push_back(r.token());
    rep["tuple"] = toks;
    rep["degree_bound"] = degree;
    rep["one_resonant"] = res.one_resonant;
    json viol = json::array();
    for (const auto& v : res.violations) {
      json row;
      row["coordinate"] = v.j;
      row["multi_index"] = v.m;
      row["gap"] = v.gap;
      viol.push_back(row);
    }
    rep["violations"] = viol;
    rep["warnings"] = res.warnings.size();
    const auto scans = admissible_scan(alphas, kmax, cfg.stagnation_tol);
    json verdicts = json::array();
    for (const auto& s : scans) verdicts.push_back(s.verdict);
    rep["admissible_verdicts"] = verdicts;
  }
  emit(cfg, "arith_scan.json", rep.dump(2) + "\n");
  std::printf("verdict: %s\n",
              rep.contains("verdict")
                  ? rep["verdict"].get<std::string>().c_str()
                  : (rep["one_resonant"].get<bool>() ? "one-resonant"
                                                     : "not-one-resonant"));
  return 0;
}

// --- region ------------------------------------------------------------------

int cmd_region(const RunConfig& cfg, const std::string& check_point,
               int sample_count) {
  const GermSpec spec = resolve_germ(cfg);
  const BasinParams bp = basin_of(cfg, spec.k);
  if (!check_point.empty()) {
    const ComplexPoint p = parse_point(check_point);
    if (p.k != spec.k) throw Error("config-invalid", "point dimension != germ dimension");
    json rep = report_header(cfg);
    rep["point"] = check_point;
    rep["in_local_basin"] = in_B(p, bp);
    rep["in_wedge"] = in_W(p, bp.beta);
    emit(cfg, "region_check.json", rep.dump(2) + "\n");
    return 0;
  }
  const auto pts = sample_B(bp, sample_count, cfg.seed);
  emit(cfg, "region_samples.csv", points_csv(pts));
  return 0;
}

// --- orbit / asym ------------------------------------------------------------

int cmd_orbit(const RunConfig& cfg, const std::string& point, long nmax) {
  const GermSpec spec = resolve_germ(cfg);
  const ComplexPoint p = point.empty()
                             ? sample_B(basin_of(cfg, spec.k), 1, cfg.seed)[0]
                             : parse_point(point);
  if (p.k != spec.k) throw Error("config-invalid", "point dimension != germ dimension");
  const auto trace = iterate(spec, p, nmax);
  emit(cfg, "orbit.csv", orbit_csv(trace));
  return 0;
}

json asym_trace_json(const OrbitTrace& trace, long tail) {
  const auto rep = asymptotics_report(trace, tail);
  json j;
  j["tail_start"] = rep.n_min;
  j["tail_end"] = rep.n_max;
  j["sup_nu_minus_1"] = rep.sup_nu_minus_1;
  j["max_abs_arg_u"] = rep.max_abs_arg_u;
  json bands = json::array();
  for (const auto& b : rep.modulus_bands) {
    json row;
    row["lo"] = b.lo;
    row["hi"] = b.hi;
    row["ratio"] = b.hi / b.lo;
    bands.push_back(row);
  }
  j["modulus_bands"] = bands;
  return j;
}

int cmd_asym(const RunConfig& cfg, const std::string& point, int samples,
             long nmax, long tail) {
  const GermSpec spec = resolve_germ(cfg);
  const BasinParams bp = basin_of(cfg, spec.k);
  json rep = report_header(cfg);
  std::vector<OrbitTrace> traces;
  if (!point.empty()) {
    const ComplexPoint p = parse_point(point);
    if (p.k != spec.k) throw Error("config-invalid", "point dimension != germ dimension");
    traces.push_back(iterate(spec, p, nmax));
  } else {
    for (const auto& p : sample_B(bp, samples, cfg.seed)) {
      traces.push_back(iterate(spec, p, nmax));
    }
  }
  json rows = json::array();
  for (const auto& t : traces) rows.push_back(asym_trace_json(t, tail));
  rep["traces"] = rows;
  const auto ce = estimate_c(spec, traces, tail);
  json cj;
  cj["value"] = ce.value;
  cj["width"] = ce.width;
  cj["imag_part"] = ce.imag_part;
  cj["points_used"] = ce.points_used;
  rep["drift_constant"] = cj;
  rep["model_value"] = model_c(spec.k);
  emit(cfg, "asym.json", rep.dump(2) + "\n");
  return 0;
}

// --- fatou -------------------------------------------------------------------

int cmd_fatou(const RunConfig& cfg, const std::string& point, bool use_sample,
              int m_cap) {
  const GermSpec spec = resolve_germ(cfg);
  const BasinParams bp = basin_of(cfg, spec.k);
  const ComplexPoint p = (point.empty() || use_sample)
                             ? sample_B(bp, 1, cfg.seed)[0]
                             : parse_point(point);
  if (p.k != spec.k) throw Error("config-invalid", "point dimension != germ dimension");
  const double c = model_c(spec.k);
  const auto cv = chart_values(spec, p, c, cfg.tol_psi, cfg.tol_sigma, m_cap);
  const auto cv_f = chart_values(spec, eval(spec, p), c, cfg.tol_psi,
                                 cfg.tol_sigma, m_cap);

  json rep = report_header(cfg);
  rep["psi"] = estimate_json(cv.psi);
  json sigmas = json::array();
  for (const auto& s : cv.sigma) sigmas.push_back(estimate_json(s));
  rep["sigma"] = sigmas;
  json res;
  res["abel"] = std::abs(cv_f.psi.value - cv.psi.value - cplx(1.0, 0.0));
  json sres = json::array();
  for (int j = 2; j <= spec.k; ++j) {
    cplx mu(1.0, 0.0);
    for (int i = j - 1; i < spec.k; ++i) mu *= spec.lambdas[static_cast<size_t>(i)];
    const double kappa = static_cast<double>(spec.k - j + 1) / spec.k;
    const cplx predicted = mu * std::exp(-kappa / cv.psi.value) *
                           cv.sigma[static_cast<size_t>(j - 2)].value;
    sres.push_back(std::abs(cv_f.sigma[static_cast<size_t>(j - 2)].value - predicted));
  }
  res["sigma"] = sres;
  rep["residuals"] = res;
  json depths;
  depths["psi"] = cv.psi.depth;
  json sd = json::array();
  for (const auto& s : cv.sigma) sd.push_back(s.depth);
  depths["sigma"] = sd;
  rep["depths"] = depths;
  emit(cfg, "fatou.json", rep.dump(2) + "\n");
  return 0;
}

int cmd_fatou_rates(const RunConfig& cfg, const std::string& point, long mmax) {
  const GermSpec spec = resolve_germ(cfg);
  const ComplexPoint p = point.empty() ? point2(0.1, 0.1) : parse_point(point);
  if (p.k != spec.k) throw Error("config-invalid", "point dimension != germ dimension");
  const double c = model_c(spec.k);
  const auto lim = psi(spec, c, p, cfg.tol_psi, 4 * static_cast<int>(mmax));
  std::vector<std::pair<long, double>> rows;
  for (long m = 1; m <= mmax; m *= 2) {
    double inc = std::abs(psi_m(spec, c, p, static_cast<int>(m) + 1) -
                          psi_m(spec, c, p, static_cast<int>(m)));
    for (int j = 2; j <= spec.k; ++j) {
      const cplx a = sigma_jn(spec, p, lim.value, j, static_cast<int>(m));
      const cplx b = sigma_jn(spec, p, lim.value, j, static_cast<int>(m) + 1);
      inc = std::max(inc, std::abs(b - a));
    }
    rows.emplace_back(m, inc);
  }
  emit(cfg, "fatou_rates.csv", rates_csv(rows));
  return 0;
}

// --- basin / fibration -------------------------------------------------------

int cmd_basin(const RunConfig& cfg, const std::string& slice_name, double scale,
              int res, long nmax, const std::string& method_name) {
  const GermSpec spec = resolve_germ(cfg);
  if (spec.k != 2) throw Error("config-invalid", "slice rasters need a dimension-2 germ");
  const BasinParams bp = basin_of(cfg, 2);
  const SliceSpec slice = preset_slice(slice_name, scale, res);
  const ClassifyMethod method = (method_name == "ratio") ? ClassifyMethod::ratio
                                                         : ClassifyMethod::hitting;
  if (method_name != "ratio" && method_name != "hitting") {
    throw Error("config-invalid", "method must be hitting or ratio");
  }
  const long horizon = nmax > 0 ? nmax : cfg.horizon_classify;
  const auto grid = raster_slice(spec, slice, bp, horizon, method);
  emit_binary(cfg, "basin_" + slice_name + ".pgm", pgm_bytes(grid));
  emit(cfg, "basin_" + slice_name + "_stats.csv", grid_stats_csv(grid));
  return 0;
}

int cmd_fibration(const RunConfig& cfg, int points) {
  const GermSpec spec = default_germ_k2();
  const cplx lambda = spec.lambdas[0];
  json rep = report_header(cfg);
  json rows = json::array();
  double worst = 0.0;
  for (int i = 0; i < points; ++i) {
    SplitMix64 rng = stream_rng(cfg.seed, 500 + static_cast<unsigned>(i));
    const double phi = rng.uniform(-0.45 * cfg.theta, 0.45 * cfg.theta);
    const double x = cfg.R * std::exp(rng.uniform(0.0, std::log(8.0)));
    const cplx zeta = std::polar(x / std::cos(phi), phi);
    const long n = static_cast<long>(rng.next() % 31ull);
    const cplx composed = transition(zeta, n, lambda) * transition(zeta, n + 1, lambda);
    const cplx direct = lambda * lambda *
                        std::exp(0.5 * (1.0 / (zeta + static_cast<double>(n)) +
                                        1.0 / (zeta + static_cast<double>(n + 1))));
    const double diff = std::abs(composed - direct);
    worst = std::max(worst, diff);
    if (i < 32) {  // keep the report small; the maximum covers the rest
      json row;
      row["zeta"] = complex_json(zeta);
      row["n"] = n;
      row["composed"] = complex_json(composed);
      row["direct"] = complex_json(direct);
      row["difference"] = diff;
      rows.push_back(row);
    }
  }
  rep["samples"] = points;
  rep["max_difference"] = worst;
  rep["rows"] = rows;
  emit(cfg, "fibration_check.json", rep.dump(2) + "\n");
  return 0;
}

// --- hyp ---------------------------------------------------------------------

int cmd_hyp(const RunConfig& cfg, const std::vector<std::string>& pair,
            double beta) {
  const cplx z1 = parse_complex(pair[0]);
  const cplx z2 = parse_complex(pair[1]);
  const double d = punctured_disc_distance(z1, z2);
  const auto b = distance_bounds(z1, z2);
  json rep = report_header(cfg);
  rep["distance"] = d;
  rep["lower"] = b.lower;
  rep["upper"] = b.upper;
  rep["g"] = b.g;
  if (beta > 0.0) rep["separation_bound"] = separation_bound(beta);
  emit(cfg, "hyp.json", rep.dump(2) + "\n");
  std::printf("distance=%.17g lower=%.17g upper=%.17g g=%.17g\n", d, b.lower,
              b.upper, b.g);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"resonant-basin laboratory"};
  app.require_subcommand(1);
  // Let global flags (--out, --seed, ...) appear after the subcommand name.
  app.fallthrough(true);

  std::string config_path, out_dir, format;
  unsigned long long seed = 0;
  int threads = -1;
  auto* opt_config = app.add_option("--config", config_path, "JSON config file");
  auto* opt_seed = app.add_option("--seed", seed, "sampling seed");
  auto* opt_threads = app.add_option("--threads", threads, "worker threads (0 = auto)");
  auto* opt_out = app.add_option("--out", out_dir, "output directory");
  auto* opt_format = app.add_option("--format", format, "output format: json|csv|pgm");

  // arith
  auto* sc_arith = app.add_subcommand("arith", "small-divisor and resonance scans");
  std::string alpha = "golden";
  std::vector<std::string> tuple;
  int kmax = 15, degree = 6;
  sc_arith->add_option("--alpha", alpha, "rotation number (decimal, p/q, cf:.., golden, silver)");
  sc_arith->add_option("--tuple", tuple, "comma-free token list for a resonance check")->delimiter(',');
  sc_arith->add_option("--kmax", kmax, "number of dyadic windows");
  sc_arith->add_option("--degree-bound", degree, "resonance degree bound");

  // region
  auto* sc_region = app.add_subcommand("region", "local basin membership and sampling");
  std::string check_point;
  int sample_count = 100;
  sc_region->add_option("--check", check_point, "point to test, re,im;re,im");
  sc_region->add_option("--sample", sample_count, "number of basin samples to emit");

  // orbit
  auto* sc_orbit = app.add_subcommand("orbit", "iterate one point and emit the orbit");
  std::string orbit_point;
  long orbit_nmax = 1000;
  std::string orbit_emit = "csv";
  sc_orbit->add_option("--point", orbit_point, "start point, re,im;re,im");
  sc_orbit->add_option("--nmax", orbit_nmax, "steps to iterate");
  sc_orbit->add_option("--emit", orbit_emit, "emission format (csv)");

  // asym
  auto* sc_asym = app.add_subcommand("asym", "tail asymptotics report");
  std::string asym_point;
  int asym_samples = 5;
  long asym_nmax = 10000, asym_tail = 1000;
  sc_asym->add_option("--point", asym_point, "single start point");
  sc_asym->add_option("--samples", asym_samples, "seeded sample count");
  sc_asym->add_option("--nmax", asym_nmax, "trace length");
  sc_asym->add_option("--tail", asym_tail, "tail window start");

  // fatou (+ rates)
  auto* sc_fatou = app.add_subcommand("fatou", "limit coordinates at a point");
  std::string fatou_point;
  bool fatou_sample = false;
  int fatou_mcap = defaults::kMCap;
  double fatou_tol = 0.0;
  sc_fatou->add_option("--point", fatou_point, "evaluation point");
  sc_fatou->add_flag("--sample", fatou_sample, "use a seeded basin sample instead");
  sc_fatou->add_option("--tol", fatou_tol, "limit tolerance (psi and sigma)");
  sc_fatou->add_option("--mcap", fatou_mcap, "iteration cap");
  auto* sc_rates = sc_fatou->add_subcommand("rates", "increment-rate table");
  std::string rates_point;
  long rates_mmax = 4096;
  sc_rates->add_option("--point", rates_point, "evaluation point");
  sc_rates->add_option("--mmax", rates_mmax, "largest depth (powers of 2)");

  // basin
  auto* sc_basin = app.add_subcommand("basin", "classify a slice and emit a raster");
  std::string slice_name = "real", method_name = "hitting";
  double slice_scale = 0.25;
  int slice_res = 200;
  long basin_nmax = 0;
  sc_basin->add_option("--slice", slice_name, "slice preset: real|diag|conj");
  sc_basin->add_option("--scale", slice_scale, "slice half-width");
  sc_basin->add_option("--res", slice_res, "cells per side");
  sc_basin->add_option("--nmax", basin_nmax, "classification horizon (0 = config)");
  sc_basin->add_option("--method", method_name, "hitting|ratio");

  // fibration
  auto* sc_fibration = app.add_subcommand("fibration", "transition-cocycle check");
  int fib_points = 200;
  sc_fibration->add_option("--points", fib_points, "sample count");

  // hyp
  auto* sc_hyp = app.add_subcommand("hyp", "punctured-disc distance and bounds");
  std::vector<std::string> hyp_pair;
  double hyp_beta = 0.0;
  sc_hyp->add_option("--pair", hyp_pair, "two points re,im re,im")->expected(2);
  sc_hyp->add_option("--beta", hyp_beta, "also report the separation bound");

  // suite
  auto* sc_suite = app.add_subcommand("suite", "run a verification suite");
  std::string suite_name;
  sc_suite->add_option("name", suite_name, "arith|invariance|asymptotics|fatou|basin|fibration|metric|all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg;
    if (opt_config->count() > 0) cfg = load_run_config(config_path);
    if (opt_seed->count() > 0) cfg.seed = seed;
    if (opt_threads->count() > 0) cfg.threads = threads;
    if (opt_out->count() > 0) cfg.out_dir = out_dir;
    if (opt_format->count() > 0) cfg.format = format;
    if (sc_fatou->parsed() && fatou_tol > 0.0) {
      cfg.tol_psi = fatou_tol;
      cfg.tol_sigma = fatou_tol;
    }
    validate(cfg);
    par::set_threads(cfg.threads);  // RBL_THREADS still wins inside thread_count

    if (sc_arith->parsed()) return cmd_arith(cfg, alpha, tuple, kmax, degree);
    if (sc_region->parsed()) return cmd_region(cfg, check_point, sample_count);
    if (sc_orbit->parsed()) {
      if (orbit_emit != "csv") throw Error("config-invalid", "orbit emits csv only");
      return cmd_orbit(cfg, orbit_point, orbit_nmax);
    }
    if (sc_asym->parsed()) return cmd_asym(cfg, asym_point, asym_samples, asym_nmax, asym_tail);
    if (sc_fatou->parsed()) {
      if (sc_rates->parsed()) return cmd_fatou_rates(cfg, rates_point, rates_mmax);
      return cmd_fatou(cfg, fatou_point, fatou_sample, fatou_mcap);
    }
    if (sc_basin->parsed()) {
      return cmd_basin(cfg, slice_name, slice_scale, slice_res, basin_nmax, method_name);
    }
    if (sc_fibration->parsed()) return cmd_fibration(cfg, fib_points);
    if (sc_hyp->parsed()) {
      if (hyp_pair.size() != 2) throw Error("config-invalid", "--pair needs two points");
      return cmd_hyp(cfg, hyp_pair, hyp_beta);
    }
    if (sc_suite->parsed()) return run_suite(cfg, suite_name);
    throw Error("config-invalid", "no subcommand selected");
  } catch (const Error& e) {
    std::fprintf(stderr, "error [%s]: %s\n", e.code().c_str(), e.what());
    return e.code() == "config-invalid" ? 2 : 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
}
