#include "rbl/fatou.hpp"

#include <algorithm>
#include <cmath>

#include "rbl/detail/linsolve.hpp"
#include "rbl/parallel.hpp"
#include "rbl/rng.hpp"

namespace rbl {

double model_c(int k) {
  return static_cast<double>(k + 1) / (2.0 * static_cast<double>(k));
}

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

cplx psi_term(cplx u, long m, double c) {
  return 1.0 / u - static_cast<double>(m) + c * std::log(u);
}

// Product z_j...z_k (1-based j).
cplx suffix_product(const ComplexPoint& p, int j) {
  cplx acc = p.c[p.k - 1];
  for (int i = p.k - 2; i >= j - 1; --i) acc = p.c[i] * acc;
  return acc;
}

cplx mu_of(const GermSpec& spec, int j) {
  cplx mu(1.0, 0.0);
  for (int i = j - 1; i < spec.k; ++i) mu *= spec.lambdas[static_cast<size_t>(i)];
  return mu;
}

double kappa_of(const GermSpec& spec, int j) {
  return static_cast<double>(spec.k - j + 1) / static_cast<double>(spec.k);
}

}  // namespace

cplx psi_m(const GermSpec& spec, double c, const ComplexPoint& p, int m) {
  if (m < 0) throw Error("config-invalid", "depth must be >= 0");
  ComplexPoint cur = p;
  cplx u = resonant_product(cur);
  for (int s = 0; s < m; ++s) {
    if (u == cplx(0.0, 0.0)) {
      throw Error("orbit-degenerate", "u vanished before the requested depth");
    }
    cur = eval(spec, cur);
    u = resonant_product(cur);
  }
  if (u == cplx(0.0, 0.0)) {
    throw Error("orbit-degenerate", "u vanished at the requested depth");
  }
  return psi_term(u, m, c);
}

CoordinateEstimate psi(const GermSpec& spec, double c, const ComplexPoint& p,
                       double tol, int m_cap) {
  if (!(tol > 0.0)) throw Error("config-invalid", "tolerance must be > 0");
  ComplexPoint cur = p;
  cplx u = resonant_product(cur);
  if (u == cplx(0.0, 0.0)) {
    throw Error("orbit-degenerate", "u vanishes at the start point");
  }
  CoordinateEstimate est;
  cplx prev = psi_term(u, 0, c);
  for (int m = 1; m <= m_cap; ++m) {
    cur = eval(spec, cur);
    u = resonant_product(cur);
    if (u == cplx(0.0, 0.0)) {
      throw Error("orbit-degenerate", "u vanished during the limit");
    }
    const cplx val = psi_term(u, m, c);
    const double inc = std::abs(val - prev);
    prev = val;
    est.value = val;
    est.depth = m;
    est.last_increment = inc;
    if (inc < tol) {
      est.converged = true;
      return est;
    }
  }
  est.converged = false;
  return est;
}

cplx sigma_jn(const GermSpec& spec, const ComplexPoint& p, cplx psi_value,
              int j, int n) {
  if (j < 2 || j > spec.k) {
    throw Error("config-invalid", "second coordinate index out of range");
  }
  if (n < 0) throw Error("config-invalid", "depth must be >= 0");
  if (!(psi_value.real() > 0.0)) {
    throw Error("domain-error", "twisted products need Re(psi) > 0");
  }
  ComplexPoint cur = p;
  cplx S(0.0, 0.0);
  for (int m = 0; m < n; ++m) {
    S += 1.0 / (psi_value + static_cast<double>(m));
    cur = eval(spec, cur);
  }
  const cplx Pi = suffix_product(cur, j);
  const cplx mu = mu_of(spec, j);
  const double kappa = kappa_of(spec, j);
  return std::pow(mu, cplx(-static_cast<double>(n), 0.0)) * Pi *
         std::exp(kappa * S);
}

cplx sigma_n(const GermSpec& spec, const ComplexPoint& p, cplx psi_value,
             int n) {
  if (spec.k != 2) {
    throw Error("dimension-mismatch", "the plain second coordinate is k = 2");
  }
  return sigma_jn(spec, p, psi_value, 2, n);
}

CoordinateEstimate sigma_j(const GermSpec& spec, const ComplexPoint& p,
                           cplx psi_value, int j, int n_cap, double tol) {
  if (j < 2 || j > spec.k) {
    throw Error("config-invalid", "second coordinate index out of range");
  }
  if (!(psi_value.real() > 0.0)) {
    throw Error("domain-error", "twisted products need Re(psi) > 0");
  }
  if (!(tol > 0.0)) throw Error("config-invalid", "tolerance must be > 0");
  const cplx mu = mu_of(spec, j);
  const cplx mu_inv = std::conj(mu);
  const double kappa = kappa_of(spec, j);
  ComplexPoint cur = p;
  cplx S(0.0, 0.0);
  cplx mu_pow_inv(1.0, 0.0);
  CoordinateEstimate est;
  cplx prev = suffix_product(cur, j);  // n = 0
  for (int n = 1; n <= n_cap; ++n) {
    S += 1.0 / (psi_value + static_cast<double>(n - 1));
    cur = eval(spec, cur);
    mu_pow_inv *= mu_inv;
    const cplx val = mu_pow_inv * suffix_product(cur, j) * std::exp(kappa * S);
    const double inc = std::abs(val - prev);
    prev = val;
    est.value = val;
    est.depth = n;
    est.last_increment = inc;
    // Scale-aware stop: the one-step multiplier law rescales consecutive
    // increments by |mu e^{-kappa/psi}|, so an absolute threshold would stop
    // the limits at p and F(p) at systematically different depths and the
    // functional-equation residual would inherit a whole tail segment.
    // Testing the increment against the value's own scale makes the stopping
    // index equivariant, and it is the stricter rule whenever |value| < 1,
    // so converged still implies last_increment < tol.
    if (inc < tol * std::min(1.0, std::abs(val))) {
      est.converged = true;
      return est;
    }
  }
  est.converged = false;
  return est;
}

CoordinateEstimate sigma(const GermSpec& spec, const ComplexPoint& p,
                         double tol, int n_cap) {
  if (spec.k != 2) {
    throw Error("dimension-mismatch", "the plain second coordinate is k = 2");
  }
  ChartValue cv = chart_values(spec, p, model_c(spec.k), tol, tol, n_cap);
  return cv.sigma[0];
}

ChartValue chart_values(const GermSpec& spec, const ComplexPoint& p, double c,
                        double tol_psi, double tol_sigma, int m_cap) {
  if (!(tol_psi > 0.0 && tol_sigma > 0.0)) {
    throw Error("config-invalid", "tolerances must be > 0");
  }
  if (p.k != spec.k) throw Error("dimension-mismatch", "point vs germ");
  const int k = spec.k;
  // Shared orbit storage: per step, the suffix products Pi_j, j = 2..k.
  std::vector<std::array<cplx, kMaxDim>> pis;
  pis.reserve(1024);
  ComplexPoint cur = p;
  auto push_step = [&]() {
    std::array<cplx, kMaxDim> row{};
    for (int j = 2; j <= k; ++j) row[static_cast<size_t>(j - 2)] = suffix_product(cur, j);
    pis.push_back(row);
  };
  push_step();
  cplx u = resonant_product(cur);
  if (u == cplx(0.0, 0.0)) {
    throw Error("orbit-degenerate", "u vanishes at the start point");
  }
  ChartValue out;
  // Fatou coordinate pass.
  cplx prev = psi_term(u, 0, c);
  for (int m = 1; m <= m_cap; ++m) {
    cur = eval(spec, cur);
    push_step();
    u = resonant_product(cur);
    if (u == cplx(0.0, 0.0)) {
      throw Error("orbit-degenerate", "u vanished during the limit");
    }
    const cplx val = psi_term(u, m, c);
    const double inc = std::abs(val - prev);
    prev = val;
    out.psi.value = val;
    out.psi.depth = m;
    out.psi.last_increment = inc;
    if (inc < tol_psi) {
      out.psi.converged = true;
      break;
    }
  }
  const cplx psiv = out.psi.value;
  if (!(psiv.real() > 0.0)) {
    throw Error("domain-error", "twisted products need Re(psi) > 0");
  }
  // Twisted-product passes over the stored orbit, extending it on demand.
  auto ensure_steps = [&](size_t n) {
    while (pis.size() <= n) {
      cur = eval(spec, cur);
      push_step();
    }
  };
  out.sigma.resize(static_cast<size_t>(k - 1));
  cplx S(0.0, 0.0);  // sum of 1/(psi+m), shared among all j
  std::vector<cplx> mu_inv(static_cast<size_t>(k - 1)), mu_pow(static_cast<size_t>(k - 1), cplx(1.0, 0.0));
  std::vector<double> kappa(static_cast<size_t>(k - 1));
  std::vector<cplx> prev_sigma(static_cast<size_t>(k - 1));
  std::vector<bool> done(static_cast<size_t>(k - 1), false);
  for (int j = 2; j <= k; ++j) {
    mu_inv[static_cast<size_t>(j - 2)] = std::conj(mu_of(spec, j));
    kappa[static_cast<size_t>(j - 2)] = kappa_of(spec, j);
    prev_sigma[static_cast<size_t>(j - 2)] = pis[0][static_cast<size_t>(j - 2)];
  }
  int remaining = k - 1;
  for (int n = 1; n <= m_cap && remaining > 0; ++n) {
    S += 1.0 / (psiv + static_cast<double>(n - 1));
    ensure_steps(static_cast<size_t>(n));
    for (int j = 2; j <= k; ++j) {
      const size_t idx = static_cast<size_t>(j - 2);
      if (done[idx]) continue;
      mu_pow[idx] *= mu_inv[idx];
      const cplx val = mu_pow[idx] * pis[static_cast<size_t>(n)][idx] *
                       std::exp(kappa[idx] * S);
      const double inc = std::abs(val - prev_sigma[idx]);
      prev_sigma[idx] = val;
      auto& est = out.sigma[idx];
      est.value = val;
      est.depth = n;
      est.last_increment = inc;
      // Scale-aware stop; see sigma_j for why the threshold tracks |value|.
      if (inc < tol_sigma * std::min(1.0, std::abs(val))) {
        est.converged = true;
        done[idx] = true;
        --remaining;
      }
    }
  }
  return out;
}

std::pair<CoordinateEstimate, CoordinateEstimate> Q(const GermSpec& spec,
                                                    const ComplexPoint& p,
                                                    double tol) {
  if (spec.k != 2) {
    throw Error("dimension-mismatch", "the paired chart is the k = 2 form");
  }
  ChartValue cv = chart_values(spec, p, model_c(2), tol, tol,
                               defaults::kMCap);
  return {cv.psi, cv.sigma[0]};
}

std::vector<cplx> chart_fixed_depth(const GermSpec& spec,
                                    const ComplexPoint& p, double c,
                                    int depth_psi, int depth_sigma) {
  if (depth_psi < 0 || depth_sigma < 0) {
    throw Error("config-invalid", "depths must be >= 0");
  }
  const int top = std::max(depth_psi, depth_sigma);
  ComplexPoint cur = p;
  cplx u_at_psi = resonant_product(cur);  // covers depth_psi == 0
  ComplexPoint at_sigma = cur;            // covers depth_sigma == 0
  for (int s = 1; s <= top; ++s) {
    cur = eval(spec, cur);
    if (s == depth_psi) u_at_psi = resonant_product(cur);
    if (s == depth_sigma) at_sigma = cur;
  }
  if (u_at_psi == cplx(0.0, 0.0)) {
    throw Error("orbit-degenerate", "u vanished at the chart depth");
  }
  std::vector<cplx> out;
  out.reserve(static_cast<size_t>(spec.k));
  const cplx psiv = psi_term(u_at_psi, depth_psi, c);
  out.push_back(psiv);
  cplx S(0.0, 0.0);
  for (int m = 0; m < depth_sigma; ++m) {
    S += 1.0 / (psiv + static_cast<double>(m));
  }
  for (int j = 2; j <= spec.k; ++j) {
    const cplx mu = mu_of(spec, j);
    out.push_back(std::pow(mu, cplx(-static_cast<double>(depth_sigma), 0.0)) *
                  suffix_product(at_sigma, j) *
                  std::exp(kappa_of(spec, j) * S));
  }
  return out;
}

InjectivityReport injectivity_probe(const GermSpec& spec,
                                    const BasinParams& bp_shrunk, int n_pairs,
                                    unsigned long long seed, double tol) {
  if (n_pairs < 1) throw Error("config-invalid", "need n_pairs >= 1");
  if (!(tol > 0.0)) throw Error("config-invalid", "tolerance must be > 0");
  const auto pts = sample_B(bp_shrunk, 2 * n_pairs, seed);
  const double c = model_c(spec.k);
  struct PairStat {
    double image_dist = 0.0;
    double image_dist_w = 0.0;
    double input_dist = 0.0;
  };
  std::vector<PairStat> stats(static_cast<size_t>(n_pairs));
  par::parallel_for(static_cast<size_t>(n_pairs), [&](size_t i) {
    const ComplexPoint& a = pts[2 * i];
    const ComplexPoint& b = pts[2 * i + 1];
    const ChartValue qa = chart_values(spec, a, c);
    const ChartValue qb = chart_values(spec, b, c);
    double d = std::abs(qa.psi.value - qb.psi.value);
    double dw = d;
    for (size_t j = 0; j < qa.sigma.size(); ++j) {
      d = std::max(d, std::abs(qa.sigma[j].value - qb.sigma[j].value));
    }
    for (int j = 1; j < spec.k; ++j) {
      dw = std::max(dw, std::abs(a.c[j] - b.c[j]));
    }
    stats[i] = {d, dw, distance(a, b)};
  });
  InjectivityReport rep;
  rep.n_pairs = n_pairs;
  rep.seed = seed;
  rep.image_tol = tol;
  rep.min_image_separation = 1e300;
  rep.min_separation_ratio = 1e300;
  for (const auto& st : stats) {
    if (st.image_dist < tol) ++rep.collisions_chart;
    if (st.image_dist_w < tol) ++rep.collisions_psi_w;
    rep.min_image_separation = std::min(rep.min_image_separation, st.image_dist);
    if (st.input_dist > 0.0) {
      rep.min_separation_ratio =
          std::min(rep.min_separation_ratio, st.image_dist / st.input_dist);
    }
  }
  return rep;
}

namespace {

ComplexPoint point_from_chart_uw(cplx U, cplx w) {
  const cplx u = 1.0 / U;
  return point2(u / w, w);
}

}  // namespace

JacobianProbe jacobian_probe(const GermSpec& spec,
                             const std::vector<double>& r_values, double tol) {
  if (spec.k != 2) {
    throw Error("dimension-mismatch", "the chart Jacobian probe is k = 2");
  }
  JacobianProbe probe;
  probe.r_values = r_values;
  const double c = model_c(2);
  auto chart = [&](cplx U, cplx w) {
    const ChartValue cv = chart_values(spec, point_from_chart_uw(U, w), c, tol,
                                       tol, defaults::kMCap);
    return std::pair<cplx, cplx>(cv.psi.value, cv.sigma[0].value);
  };
  for (double r : r_values) {
    const cplx U(1.0 / (r * r), 0.0);
    const cplx w(r, 0.0);
    const double hU = 1e-5 * std::abs(U);
    const double hw = 1e-5 * std::abs(w);
    const auto [psi_Up, sig_Up] = chart(U + hU, w);
    const auto [psi_Um, sig_Um] = chart(U - hU, w);
    const auto [psi_wp, sig_wp] = chart(U, w + hw);
    const auto [psi_wm, sig_wm] = chart(U, w - hw);
    const cplx psi_U = (psi_Up - psi_Um) / (2.0 * hU);
    const cplx sig_U = (sig_Up - sig_Um) / (2.0 * hU);
    const cplx psi_w = (psi_wp - psi_wm) / (2.0 * hw);
    const cplx sig_w = (sig_wp - sig_wm) / (2.0 * hw);
    const cplx det = psi_U * sig_w - psi_w * sig_U;
    probe.det_deviation.push_back(std::abs(det - 1.0));
  }
  probe.all_within_20pct = true;
  for (double d : probe.det_deviation) {
    if (!(d <= 0.2)) probe.all_within_20pct = false;
  }
  // r_values are probed as given; the trend compares the largest against
  // the smallest radius.
  if (!r_values.empty()) {
    size_t imax = 0, imin = 0;
    for (size_t i = 1; i < r_values.size(); ++i) {
      if (r_values[i] > r_values[imax]) imax = i;
      if (r_values[i] < r_values[imin]) imin = i;
    }
    probe.trending_to_one =
        probe.det_deviation[imin] <= probe.det_deviation[imax] + 1e-12;
  }
  return probe;
}

CoverageReport coverage_probe(const GermSpec& spec,
                              const BasinParams& bp_shrunk, int n_targets,
                              unsigned long long seed, double residual_tol) {
  if (n_targets < 1) throw Error("config-invalid", "need n_targets >= 1");
  const int k = spec.k;
  const double c = model_c(k);
  const int depth = 1200;
  const double Rt = bp_shrunk.sector.R;
  const double theta_t = bp_shrunk.sector.theta;
  const double beta_t = bp_shrunk.beta;
  std::vector<int> hit(static_cast<size_t>(n_targets), 0);
  par::parallel_for(static_cast<size_t>(n_targets), [&](size_t t) {
    SplitMix64 rng = stream_rng(seed, t);
    // Target in the half-plane x wedge model of the chart image.
    const double re_a = rng.uniform(2.0 * Rt, 6.0 * Rt);
    const double arg_a = rng.uniform(-0.5 * theta_t, 0.5 * theta_t);
    const cplx a = std::polar(re_a / std::cos(arg_a), arg_a);
    const double loga = std::log(std::abs(a));
    std::vector<cplx> target(static_cast<size_t>(k));
    target[0] = a;
    for (int j = 2; j <= k; ++j) {
      // |y_j| between |u|^{1-(j-1)beta} and |u|^{(k-j+1)beta}, |u| = 1/|a|,
      // with 10% margins inside the exponent interval.
      const double e_lo = -(1.0 - (j - 1) * beta_t) * loga;
      const double e_hi = -((k - j + 1) * beta_t) * loga;
      const double width = e_hi - e_lo;
      const double e = e_lo + rng.uniform(0.1, 0.9) * width;
      const double ang = rng.uniform(-defaults::kPi, defaults::kPi);
      target[static_cast<size_t>(j - 1)] = std::polar(std::exp(e), ang);
    }
    // Asymptotic initial guess.
    const cplx Ug = a + c * std::log(a);
    ComplexPoint q(k);
    q.c[0] = 1.0 / Ug;
    for (int j = 2; j <= k; ++j) q.c[j - 1] = target[static_cast<size_t>(j - 1)];
    ComplexPoint p = phi_inverse(q);
    const double scale = std::abs(a);
    for (int it = 0; it < defaults::kNewtonMaxSteps; ++it) {
      std::vector<cplx> G;
      try {
        G = chart_fixed_depth(spec, p, c, depth, depth);
      } catch (const Error&) {
        return;  // left the chart's domain: miss
      }
      cplx r[kMaxDim];
      double rnorm = 0.0;
      bool ok = true;
      for (int i = 0; i < k; ++i) {
        r[i] = target[static_cast<size_t>(i)] - G[static_cast<size_t>(i)];
        if (!finite(r[i])) ok = false;
        rnorm = std::max(rnorm, std::abs(r[i]));
      }
      if (!ok) return;
      if (rnorm <= residual_tol * scale) {
        hit[t] = 1;
        return;
      }
      // Finite-difference Jacobian (holomorphic system: real steps suffice).
      cplx J[kMaxDim][kMaxDim];
      for (int col = 0; col < k; ++col) {
        const double h = 1e-6 * std::max(std::abs(p.c[col]), 1e-9);
        ComplexPoint pp = p, pm = p;
        pp.c[col] += h;
        pm.c[col] -= h;
        std::vector<cplx> Gp, Gm;
        try {
          Gp = chart_fixed_depth(spec, pp, c, depth, depth);
          Gm = chart_fixed_depth(spec, pm, c, depth, depth);
        } catch (const Error&) {
          return;
        }
        for (int row = 0; row < k; ++row) {
          J[row][col] = (Gp[static_cast<size_t>(row)] - Gm[static_cast<size_t>(row)]) / (2.0 * h);
        }
      }
      cplx step[kMaxDim];
      try {
        detail::solve_linear(k, J, r, step);
      } catch (const Error&) {
        return;
      }
      double snorm = 0.0;
      for (int i = 0; i < k; ++i) {
        p.c[i] += step[i];
        snorm = std::max(snorm, std::abs(step[i]));
      }
      // A vanishing step just means the residual check at the top of the
      // next iteration decides; only blow-ups abort early.
      if (!std::isfinite(snorm) || snorm > 1e6) return;
    }
    // Final residual check after the step cap.
    try {
      const auto G = chart_fixed_depth(spec, p, c, depth, depth);
      double rnorm = 0.0;
      for (int i = 0; i < k; ++i) {
        rnorm = std::max(rnorm, std::abs(target[static_cast<size_t>(i)] - G[static_cast<size_t>(i)]));
      }
      if (rnorm <= residual_tol * scale) hit[t] = 1;
    } catch (const Error&) {
    }
  });
  CoverageReport rep;
  rep.n_targets = n_targets;
  rep.seed = seed;
  rep.residual_tol = residual_tol;
  rep.depth = depth;
  for (int h : hit) rep.hits += h;
  rep.hit_rate = static_cast<double>(rep.hits) / static_cast<double>(n_targets);
  return rep;
}

CalibrationReport calibrate_shrunken(const GermSpec& spec, double beta,
                                     double theta, int samples, long horizon,
                                     unsigned long long seed) {
  if (spec.has_perturbation() && !(beta * (spec.l + 1) >= 4.0)) {
    throw Error("config-invalid",
                "perturbed germ needs beta*(order+1) >= 4 for calibration");
  }
  if (samples < 1) throw Error("config-invalid", "need samples >= 1");
  if (horizon < 0) throw Error("config-invalid", "horizon must be >= 0");
  const double c = model_c(spec.k);
  CalibrationReport rep;
  rep.beta = beta;
  rep.samples = samples;
  rep.horizon = horizon;
  rep.seed = seed;
  for (int j = 0;
       defaults::kRMin * static_cast<double>(1 << j) <= defaults::kRMax; ++j) {
    const double R = defaults::kRMin * static_cast<double>(1 << j);
    BasinParams bp;
    bp.k = spec.k;
    bp.beta = beta;
    bp.sector = {R, theta};
    const auto pts = sample_B(bp, samples, mix_key(seed, 2000 + static_cast<unsigned>(j)));
    bool good = true;
    for (size_t i = 0; i < pts.size() && good; ++i) {
      ComplexPoint p = pts[i];
      for (long s = 0; s < horizon; ++s) {
        p = eval(spec, p);
        if (!in_B(p, bp)) {
          good = false;
          break;
        }
      }
    }
    if (good) {
      // Chart-regularity acceptance: d(psi)/dU within 20% of 1 on probes.
      const int probes = std::min<int>(8, static_cast<int>(pts.size()));
      for (int i = 0; i < probes && good; ++i) {
        const ComplexPoint& p = pts[static_cast<size_t>(i)];
        const cplx u = resonant_product(p);
        const cplx U = 1.0 / u;
        const double hU = 1e-5 * std::abs(U);
        // Perturb U at fixed remaining fibered coordinates.
        ComplexPoint y = phi_coordinates(p);
        auto at_U = [&](cplx Unew) {
          ComplexPoint q = y;
          q.c[0] = 1.0 / Unew;
          return psi(spec, c, phi_inverse(q)).value;
        };
        const cplx dpsi_dU = (at_U(U + hU) - at_U(U - hU)) / (2.0 * hU);
        if (!(std::abs(dpsi_dU - 1.0) <= 0.2)) good = false;
      }
    }
    if (good) {
      rep.sector = {R, theta};
      return rep;
    }
    rep.rejected_R.push_back(R);
  }
  throw Error("calibration-failed",
              "no candidate R up to the cap passed invariance and chart "
              "regularity");
}

}  // namespace rbl
