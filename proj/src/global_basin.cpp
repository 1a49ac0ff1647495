#include "rbl/global_basin.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "rbl/parallel.hpp"

namespace rbl {

std::string to_string(BasinVerdict::Status s) {
  switch (s) {
    case BasinVerdict::Status::in_basin: return "in_basin";
    case BasinVerdict::Status::not_in_basin: return "not_in_basin";
    case BasinVerdict::Status::undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string to_string(BasinVerdict::Reason r) {
  switch (r) {
    case BasinVerdict::Reason::none: return "none";
    case BasinVerdict::Reason::escaped: return "escaped";
    case BasinVerdict::Reason::axis: return "axis";
    case BasinVerdict::Reason::ratio_violation: return "ratio_violation";
    case BasinVerdict::Reason::horizon_exhausted: return "horizon_exhausted";
  }
  return "none";
}

namespace {

bool any_coordinate_zero(const ComplexPoint& p) {
  for (int j = 0; j < p.k; ++j) {
    if (p.c[j] == cplx(0.0, 0.0)) return true;
  }
  return false;
}

}  // namespace

BasinVerdict classify(const GermSpec& spec, const ComplexPoint& p,
                      const BasinParams& bp, long n_max,
                      double escape_radius) {
  if (n_max < 1) throw Error("config-invalid", "need n_max >= 1");
  validate(bp);
  if (p.k != spec.k) throw Error("dimension-mismatch", "point vs germ");
  ComplexPoint cur = p;
  for (long h = 0; h <= n_max; ++h) {
    if (in_B(cur, bp)) return {BasinVerdict::Status::in_basin,
                               BasinVerdict::Reason::none, h};
    if (any_coordinate_zero(cur)) {
      return {BasinVerdict::Status::not_in_basin, BasinVerdict::Reason::axis,
              h};
    }
    if (sup_norm(cur) > escape_radius) {
      return {BasinVerdict::Status::not_in_basin,
              BasinVerdict::Reason::escaped, h};
    }
    if (h < n_max) cur = eval(spec, cur);
  }
  return {BasinVerdict::Status::undetermined,
          BasinVerdict::Reason::horizon_exhausted, n_max};
}

BasinVerdict classify_by_ratio(const GermSpec& spec, const ComplexPoint& p,
                               long n_max, int ratio_window,
                               double escape_radius, double norm_threshold,
                               double ratio_band) {
  if (n_max < 1) throw Error("config-invalid", "need n_max >= 1");
  if (ratio_window < 1) throw Error("config-invalid", "need ratio_window >= 1");
  if (p.k != spec.k) throw Error("dimension-mismatch", "point vs germ");
  ComplexPoint cur = p;
  struct Snapshot {
    double ratio;
    double sup;
  };
  std::deque<Snapshot> window;  // trailing ratios and sup-norms
  for (long h = 0; h <= n_max; ++h) {
    if (any_coordinate_zero(cur)) {
      return {BasinVerdict::Status::not_in_basin, BasinVerdict::Reason::axis,
              h};
    }
    double lo = 1e300, hi = 0.0;
    for (int j = 0; j < cur.k; ++j) {
      const double m = std::abs(cur.c[j]);
      lo = std::min(lo, m);
      hi = std::max(hi, m);
    }
    if (hi > escape_radius) {
      return {BasinVerdict::Status::not_in_basin,
              BasinVerdict::Reason::escaped, h};
    }
    const double ratio = hi / lo;
    window.push_back({ratio, hi});
    if (static_cast<int>(window.size()) > ratio_window) window.pop_front();
    if (hi < norm_threshold) {
      if (ratio > ratio_band) {
        return {BasinVerdict::Status::not_in_basin,
                BasinVerdict::Reason::ratio_violation, h};
      }
      if (static_cast<int>(window.size()) == ratio_window) {
        // The norm must actually be decaying, not merely small: orbits with
        // a slowly growing norm (they eventually leave) can sit below the
        // threshold for a long time with balanced coordinates.
        bool band_ok = true;
        for (const auto& s : window) band_ok = band_ok && s.ratio <= ratio_band;
        if (band_ok && window.back().sup < window.front().sup) {
          return {BasinVerdict::Status::in_basin, BasinVerdict::Reason::none,
                  h};
        }
      }
    }
    if (h < n_max) cur = eval(spec, cur);
  }
  return {BasinVerdict::Status::undetermined,
          BasinVerdict::Reason::horizon_exhausted, n_max};
}

namespace {

// Shared implementation: value of the first coordinate forced to use
// hitting step h + extra.
cplx g1_impl(const GermSpec& spec, const ComplexPoint& p,
             const BasinParams& bp, int extra, double tol, long n_max) {
  const BasinVerdict v = classify(spec, p, bp, n_max);
  if (v.status != BasinVerdict::Status::in_basin) {
    throw Error("not-in-basin", "point was not classified into the basin");
  }
  const long h = v.step + extra;
  ComplexPoint cur = p;
  for (long s = 0; s < h; ++s) cur = eval(spec, cur);
  const CoordinateEstimate est = psi(spec, model_c(spec.k), cur, tol);
  return est.value - static_cast<double>(h);
}

cplx g_j_impl(const GermSpec& spec, const ComplexPoint& p,
              const BasinParams& bp, int j, int extra, double tol,
              long n_max) {
  if (j < 2 || j > spec.k) {
    throw Error("config-invalid", "coordinate index out of range");
  }
  const BasinVerdict v = classify(spec, p, bp, n_max);
  if (v.status != BasinVerdict::Status::in_basin) {
    throw Error("not-in-basin", "point was not classified into the basin");
  }
  const long h = v.step + extra;
  ComplexPoint cur = p;
  for (long s = 0; s < h; ++s) cur = eval(spec, cur);
  const cplx g1v = psi(spec, model_c(spec.k), cur).value -
                   static_cast<double>(h);
  if (!(g1v.real() > 0.0)) {
    throw Error("domain-error", "need Re(g1) > 0 for the fiber coordinates");
  }
  // sigma_j at the advanced point, with the first coordinate's value there.
  const cplx psi_h = g1v + static_cast<double>(h);
  const CoordinateEstimate sj = sigma_j(spec, cur, psi_h, j,
                                        defaults::kMCap, tol);
  // Pull back along h steps: multiply by mu_j^{-h} exp(kappa_j sum_{m<h}
  // 1/(g1+m)); this is exactly the inverse of the one-step multiplier law
  // applied h times, so the result does not depend on h.
  cplx mu(1.0, 0.0);
  for (int i = j - 1; i < spec.k; ++i) mu *= spec.lambdas[static_cast<size_t>(i)];
  const double kappa =
      static_cast<double>(spec.k - j + 1) / static_cast<double>(spec.k);
  cplx S(0.0, 0.0);
  for (long m = 0; m < h; ++m) S += 1.0 / (g1v + static_cast<double>(m));
  return std::pow(mu, cplx(-static_cast<double>(h), 0.0)) *
         std::exp(kappa * S) * sj.value;
}

}  // namespace

cplx g1(const GermSpec& spec, const ComplexPoint& p, const BasinParams& bp,
        double tol, long n_max) {
  return g1_impl(spec, p, bp, 0, tol, n_max);
}

cplx g1_at_shifted_step(const GermSpec& spec, const ComplexPoint& p,
                        const BasinParams& bp, int extra, double tol,
                        long n_max) {
  if (extra < 0) throw Error("config-invalid", "shift must be >= 0");
  return g1_impl(spec, p, bp, extra, tol, n_max);
}

cplx g_j(const GermSpec& spec, const ComplexPoint& p, const BasinParams& bp,
         int j, double tol, long n_max) {
  return g_j_impl(spec, p, bp, j, 0, tol, n_max);
}

cplx g_j_at_shifted_step(const GermSpec& spec, const ComplexPoint& p,
                         const BasinParams& bp, int j, int extra, double tol,
                         long n_max) {
  if (extra < 0) throw Error("config-invalid", "shift must be >= 0");
  return g_j_impl(spec, p, bp, j, extra, tol, n_max);
}

cplx transition(cplx zeta, long n, cplx lambda) {
  const cplx denom = zeta + static_cast<double>(n);
  if (denom == cplx(0.0, 0.0)) {
    throw Error("pole", "transition multiplier has a pole at zeta = -n");
  }
  return lambda * std::exp(1.0 / (2.0 * denom));
}

cplx transition(cplx zeta, long n) {
  GermSpec g = default_germ_k2();
  return transition(zeta, n, g.lambdas[0]);
}

std::vector<cplx> t_iteration(cplx zeta0, cplx xi0, cplx lambda,
                              const std::vector<long>& n_values) {
  for (size_t i = 0; i + 1 < n_values.size(); ++i) {
    if (n_values[i] > n_values[i + 1]) {
      throw Error("config-invalid", "n_values must be nondecreasing");
    }
  }
  std::vector<cplx> out;
  out.reserve(n_values.size());
  const cplx lbar = std::conj(lambda);
  cplx lbar_pow(1.0, 0.0);
  cplx S(0.0, 0.0);
  long n = 0;
  for (long target : n_values) {
    if (target < 0) throw Error("config-invalid", "n must be >= 0");
    while (n < target) {
      const cplx denom = zeta0 + static_cast<double>(n);
      if (denom == cplx(0.0, 0.0)) {
        throw Error("pole", "fiber iteration hit zeta0 = -n");
      }
      S += 1.0 / denom;
      lbar_pow *= lbar;
      ++n;
    }
    out.push_back(lbar_pow * std::exp(-0.5 * S) * xi0);
  }
  return out;
}

ComplexPoint SliceSpec::cell_point(int i, int jj) const {
  const double step = 2.0 * scale / static_cast<double>(res);
  const double x = (static_cast<double>(i) - static_cast<double>(res) / 2.0) * step;
  const double y = (static_cast<double>(jj) - static_cast<double>(res) / 2.0) * step;
  ComplexPoint p(origin.k);
  for (int d = 0; d < origin.k; ++d) {
    p.c[d] = origin.c[d] + x * e1.c[d] + y * e2.c[d];
  }
  return p;
}

void SliceSpec::validate() const {
  if (res < 1 || res > 4096) {
    throw Error("config-invalid", "slice resolution must be in [1, 4096]");
  }
  if (e1.k != origin.k || e2.k != origin.k) {
    throw Error("dimension-mismatch", "slice directions vs origin");
  }
  if (!(scale > 0.0)) throw Error("config-invalid", "slice scale must be > 0");
}

SliceSpec preset_slice(const std::string& name, double scale, int res) {
  SliceSpec s;
  s.scale = scale;
  s.res = res;
  s.origin = point2(cplx(0.0, 0.0), cplx(0.0, 0.0));
  if (name == "real") {
    s.e1 = point2(cplx(1.0, 0.0), cplx(0.0, 0.0));
    s.e2 = point2(cplx(0.0, 0.0), cplx(1.0, 0.0));
  } else if (name == "diag") {
    s.e1 = point2(cplx(1.0, 0.0), cplx(1.0, 0.0));
    s.e2 = point2(cplx(0.0, 1.0), cplx(0.0, 1.0));
  } else if (name == "conj") {
    s.e1 = point2(cplx(1.0, 0.0), cplx(1.0, 0.0));
    s.e2 = point2(cplx(0.0, 1.0), cplx(0.0, -1.0));
  } else {
    throw Error("config-invalid", "unknown slice preset: " + name);
  }
  return s;
}

ClassificationGrid raster_slice(const GermSpec& spec, const SliceSpec& slice,
                                const BasinParams& bp, long n_max,
                                ClassifyMethod method) {
  slice.validate();
  if (slice.origin.k != spec.k) {
    throw Error("dimension-mismatch", "slice vs germ");
  }
  ClassificationGrid grid;
  grid.res = slice.res;
  const size_t total = static_cast<size_t>(slice.res) * static_cast<size_t>(slice.res);
  grid.cells.resize(total);
  par::parallel_for(total, [&](size_t idx) {
    const int i = static_cast<int>(idx % static_cast<size_t>(slice.res));
    const int jj = static_cast<int>(idx / static_cast<size_t>(slice.res));
    const ComplexPoint p = slice.cell_point(i, jj);
    grid.cells[idx] = (method == ClassifyMethod::hitting)
                          ? classify(spec, p, bp, n_max)
                          : classify_by_ratio(spec, p, n_max);
  });
  for (const auto& v : grid.cells) {
    switch (v.status) {
      case BasinVerdict::Status::in_basin: ++grid.n_in; break;
      case BasinVerdict::Status::not_in_basin: ++grid.n_out; break;
      case BasinVerdict::Status::undetermined: ++grid.n_undetermined; break;
    }
  }
  return grid;
}

GridAgreement compare_grids(const SliceSpec& slice,
                            const ClassificationGrid& a,
                            const ClassificationGrid& b) {
  if (a.res != b.res) throw Error("dimension-mismatch", "grid resolutions");
  GridAgreement out;
  for (int jj = 0; jj < a.res; ++jj) {
    for (int i = 0; i < a.res; ++i) {
      const BasinVerdict& va = a.at(i, jj);
      const BasinVerdict& vb = b.at(i, jj);
      const ComplexPoint p = slice.cell_point(i, jj);
      bool axis = false;
      for (int d = 0; d < p.k; ++d) {
        if (p.c[d] == cplx(0.0, 0.0)) axis = true;
      }
      if (axis) {
        ++out.axis_cells;
        if (va.status != BasinVerdict::Status::not_in_basin ||
            vb.status != BasinVerdict::Status::not_in_basin) {
          ++out.axis_misclassified;
        }
      }
      if (va.decided() && vb.decided()) {
        ++out.both_decided;
        if (va.status == vb.status) ++out.agree;
      }
    }
  }
  out.agreement_rate =
      out.both_decided == 0
          ? 1.0
          : static_cast<double>(out.agree) / static_cast<double>(out.both_decided);
  return out;
}

}  // namespace rbl
