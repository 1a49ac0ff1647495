#include "rbl/orbit.hpp"

#include <algorithm>
#include <cmath>

#include "rbl/kernels.hpp"
#include "rbl/parallel.hpp"
#include "rbl/rng.hpp"

namespace rbl {

OrbitTrace iterate(const GermSpec& spec, const ComplexPoint& p, long n_max,
                   double escape_radius) {
  if (n_max < 0) throw Error("config-invalid", "n_max must be >= 0");
  if (!(escape_radius > 0.0)) {
    throw Error("config-invalid", "escape radius must be positive");
  }
  if (p.k != spec.k) throw Error("dimension-mismatch", "point vs germ");
  OrbitTrace tr;
  tr.points.reserve(static_cast<size_t>(n_max) + 1);
  tr.u_seq.reserve(static_cast<size_t>(n_max) + 1);
  tr.U_seq.reserve(static_cast<size_t>(n_max) + 1);
  ComplexPoint cur = p;
  cplx u = resonant_product(cur);
  tr.points.push_back(cur);
  tr.u_seq.push_back(u);
  tr.U_seq.push_back(cplx(1.0, 0.0) / u);
  for (long n = 1; n <= n_max; ++n) {
    const cplx u_prev = u;
    cur = eval(spec, cur);
    u = resonant_product(cur);
    tr.points.push_back(cur);
    tr.u_seq.push_back(u);
    tr.U_seq.push_back(cplx(1.0, 0.0) / u);
    if (sup_norm(cur) > escape_radius) {
      tr.terminated = Termination::escaped;
      tr.stop_step = n;
      return tr;
    }
    if (u == cplx(0.0, 0.0) && u_prev != cplx(0.0, 0.0)) {
      tr.terminated = Termination::hit_zero;
      tr.stop_step = n;
      return tr;
    }
  }
  tr.terminated = Termination::completed;
  tr.stop_step = n_max;
  return tr;
}

InvarianceReport check_invariance(const GermSpec& spec, const BasinParams& bp,
                                  int n_samples, long horizon,
                                  unsigned long long seed) {
  if (n_samples < 1) throw Error("config-invalid", "need n_samples >= 1");
  if (horizon < 0) throw Error("config-invalid", "horizon must be >= 0");
  const auto pts = sample_B(bp, n_samples, seed);
  std::vector<long> first_exit(pts.size(), -1);
  // The sweep advances whole sample blocks through the vectorized stepping
  // kernel; the per-point membership test stays scalar.  Each point's
  // arithmetic is independent of the blocking, so verdicts do not depend on
  // the thread count or the selected backend.
  const size_t nthreads = std::max<size_t>(1, par::thread_count());
  const size_t chunk = (pts.size() + nthreads - 1) / nthreads;
  const int k = spec.k;
  par::parallel_for(nthreads, [&](size_t t) {
    const size_t lo = t * chunk;
    const size_t hi = std::min(pts.size(), lo + chunk);
    if (lo >= hi) return;
    const size_t m = hi - lo;
    std::vector<double> re(static_cast<size_t>(k) * m);
    std::vector<double> im(static_cast<size_t>(k) * m);
    for (size_t i = 0; i < m; ++i) {
      for (int j = 0; j < k; ++j) {
        re[static_cast<size_t>(j) * m + i] = pts[lo + i].c[j].real();
        im[static_cast<size_t>(j) * m + i] = pts[lo + i].c[j].imag();
      }
    }
    size_t live = m;
    for (long s = 1; s <= horizon && live > 0; ++s) {
      kern::step_batch(spec, re.data(), im.data(), m);
      for (size_t i = 0; i < m; ++i) {
        if (first_exit[lo + i] >= 0) continue;
        ComplexPoint p(k);
        for (int j = 0; j < k; ++j) {
          p.c[j] = cplx(re[static_cast<size_t>(j) * m + i],
                        im[static_cast<size_t>(j) * m + i]);
        }
        if (!in_B(p, bp)) {
          first_exit[lo + i] = s;
          --live;
        }
      }
    }
  });
  InvarianceReport rep;
  rep.n_samples = n_samples;
  rep.horizon = horizon;
  rep.seed = seed;
  for (size_t i = 0; i < first_exit.size(); ++i) {
    if (first_exit[i] >= 0) {
      rep.violators.push_back({static_cast<long>(i), first_exit[i]});
    }
  }
  rep.violation_fraction =
      static_cast<double>(rep.violators.size()) / static_cast<double>(n_samples);
  return rep;
}

AsymptoticsReport asymptotics_report(const OrbitTrace& trace,
                                     long tail_start) {
  if (trace.terminated != Termination::completed) {
    throw Error("degenerate-trace", "asymptotics need a completed trace");
  }
  const long n_end = static_cast<long>(trace.points.size()) - 1;
  if (tail_start < 0 || tail_start >= n_end) {
    throw Error("config-invalid", "tail start outside the trace");
  }
  const int k = trace.points.empty() ? 0 : trace.points[0].k;
  AsymptoticsReport rep;
  rep.n_min = tail_start;
  rep.n_max = n_end;
  const size_t tail_len = static_cast<size_t>(n_end - tail_start) + 1;
  rep.n_u_n.reserve(tail_len);
  rep.arg_u.reserve(tail_len);
  rep.scaled_moduli.assign(static_cast<size_t>(k), {});
  for (auto& v : rep.scaled_moduli) v.reserve(tail_len);
  rep.modulus_bands.assign(static_cast<size_t>(k), {1e300, 0.0});
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      rep.ratio_bounds.push_back({i + 1, j + 1, 1e300, 0.0});
    }
  }
  const double root = 1.0 / static_cast<double>(k);
  for (long n = tail_start; n <= n_end; ++n) {
    const cplx u = trace.u_seq[static_cast<size_t>(n)];
    if (u == cplx(0.0, 0.0)) {
      throw Error("degenerate-trace", "u vanishes inside the tail window");
    }
    const double dn = static_cast<double>(n);
    const cplx nu = dn * u;
    rep.n_u_n.push_back(nu);
    rep.sup_nu_minus_1 = std::max(rep.sup_nu_minus_1, std::abs(nu - 1.0));
    const double au = std::arg(u);
    rep.arg_u.push_back(au);
    rep.max_abs_arg_u = std::max(rep.max_abs_arg_u, std::abs(au));
    const ComplexPoint& p = trace.points[static_cast<size_t>(n)];
    const double scale = std::pow(dn, root);
    size_t pair = 0;
    for (int j = 0; j < k; ++j) {
      const double m = std::abs(p.c[j]);
      const double sm = scale * m;
      rep.scaled_moduli[static_cast<size_t>(j)].push_back(sm);
      auto& band = rep.modulus_bands[static_cast<size_t>(j)];
      band.lo = std::min(band.lo, sm);
      band.hi = std::max(band.hi, sm);
      for (int i2 = j + 1; i2 < k; ++i2, ++pair) {
        const double m2 = std::abs(p.c[i2]);
        if (!(m2 > 0.0)) {
          throw Error("degenerate-trace", "coordinate vanishes in the tail");
        }
        auto& rb = rep.ratio_bounds[pair];
        const double ratio = m / m2;
        rb.lo = std::min(rb.lo, ratio);
        rb.hi = std::max(rb.hi, ratio);
      }
    }
  }
  return rep;
}

long eventual_W_entry(const OrbitTrace& trace, double gamma) {
  const long n_end = static_cast<long>(trace.points.size()) - 1;
  long entry = -1;
  for (long n = 0; n <= n_end; ++n) {
    if (in_W(trace.points[static_cast<size_t>(n)], gamma)) {
      if (entry < 0) entry = n;
    } else {
      entry = -1;
    }
  }
  return entry;
}

CEstimate estimate_c(const GermSpec& spec,
                     const std::vector<OrbitTrace>& traces, long tail_start) {
  if (tail_start < 0) throw Error("config-invalid", "tail start must be >= 0");
  struct Obs {
    cplx x, y;
  };
  std::vector<Obs> pool;
  std::vector<cplx> per_trace_slope;
  bool any_tail = false;
  for (const auto& tr : traces) {
    if (tr.terminated != Termination::completed) continue;
    if (!tr.points.empty() && tr.points[0].k != spec.k) {
      throw Error("dimension-mismatch", "trace vs germ");
    }
    const long n_end = static_cast<long>(tr.u_seq.size()) - 1;
    if (n_end - tail_start < 100) continue;
    any_tail = true;
    cplx sxy(0.0, 0.0);
    double sxx = 0.0;
    for (long n = tail_start; n < n_end; ++n) {
      const cplx x = tr.u_seq[static_cast<size_t>(n)];
      const cplx y = tr.U_seq[static_cast<size_t>(n) + 1] -
                     tr.U_seq[static_cast<size_t>(n)] - 1.0;
      pool.push_back({x, y});
      sxy += std::conj(x) * y;
      sxx += std::norm(x);
    }
    if (std::sqrt(sxx) >= 1e-14) per_trace_slope.push_back(sxy / sxx);
  }
  if (!any_tail) {
    throw Error("degenerate-trace",
                "need a completed trace with a tail of at least 100 steps");
  }
  cplx sxy(0.0, 0.0);
  double sxx = 0.0;
  for (const auto& o : pool) {
    sxy += std::conj(o.x) * o.y;
    sxx += std::norm(o.x);
  }
  if (std::sqrt(sxx) < 1e-14) {
    throw Error("ill-conditioned", "regressor norm below 1e-14");
  }
  const cplx slope = sxy / sxx;
  CEstimate est;
  est.value = slope.real();
  est.imag_part = slope.imag();
  est.imag_flagged = std::abs(slope.imag()) > 1e-3;
  est.points_used = static_cast<long>(pool.size());
  if (per_trace_slope.size() >= 2) {
    double mean = 0.0;
    for (const cplx& s : per_trace_slope) mean += s.real();
    mean /= static_cast<double>(per_trace_slope.size());
    double var = 0.0;
    for (const cplx& s : per_trace_slope) {
      var += (s.real() - mean) * (s.real() - mean);
    }
    var /= static_cast<double>(per_trace_slope.size() - 1);
    est.width = std::sqrt(var / static_cast<double>(per_trace_slope.size()));
  } else {
    // Deterministic residual bootstrap on the single pooled tail.
    const int resamples = 32;
    std::vector<double> boots(resamples);
    for (int b = 0; b < resamples; ++b) {
      SplitMix64 rng = stream_rng(defaults::kSeed, 777000u + static_cast<unsigned>(b));
      cplx bxy(0.0, 0.0);
      double bxx = 0.0;
      for (size_t t = 0; t < pool.size(); ++t) {
        const size_t pick =
            static_cast<size_t>(rng.next() % static_cast<unsigned long long>(pool.size()));
        bxy += std::conj(pool[pick].x) * pool[pick].y;
        bxx += std::norm(pool[pick].x);
      }
      boots[b] = bxx > 0.0 ? (bxy / bxx).real() : est.value;
    }
    double mean = 0.0;
    for (double v : boots) mean += v;
    mean /= resamples;
    double var = 0.0;
    for (double v : boots) var += (v - mean) * (v - mean);
    var /= (resamples - 1);
    est.width = std::sqrt(var);
  }
  return est;
}

}  // namespace rbl
