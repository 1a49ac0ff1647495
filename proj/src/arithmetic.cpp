#include "rbl/arithmetic.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rbl {

namespace {

using big = boost::multiprecision::mpfr_float;

big frac_part(const big& x) {
  big f = x - floor(x);
  if (f >= 1) f -= 1;  // guard the rounding edge
  if (f < 0) f += 1;
  return f;
}

// Extended-precision value of one rotation number (complete entries need
// the whole tuple and go through tuple_alpha_big below).
big alpha_big(const RotationNumber& a) {
  switch (a.kind) {
    case RotationNumber::Kind::golden:
      return (sqrt(big(5)) - 1) / 2;
    case RotationNumber::Kind::silver:
      return sqrt(big(2)) - 1;
    case RotationNumber::Kind::fraction:
      return big(a.p) / big(a.q);
    case RotationNumber::Kind::decimal:
      return big(a.text);
    case RotationNumber::Kind::cf: {
      big x(a.cf.back());
      for (int i = static_cast<int>(a.cf.size()) - 2; i >= 0; --i) {
        x = big(a.cf[i]) + 1 / x;
      }
      return frac_part(x);
    }
    case RotationNumber::Kind::complete:
      throw Error("domain-error",
                  "completing rotation entry needs its tuple for evaluation");
  }
  throw Error("internal", "unreachable rotation kind");
}

big tuple_alpha_big(const std::vector<RotationNumber>& alphas, size_t idx) {
  if (alphas[idx].kind != RotationNumber::Kind::complete) {
    return alpha_big(alphas[idx]);
  }
  big sum = 0;
  for (size_t i = 0; i < alphas.size(); ++i) {
    if (i == idx) continue;
    if (alphas[i].kind == RotationNumber::Kind::complete) {
      throw Error("config-invalid",
                  "at most one completing rotation entry per tuple");
    }
    sum += alpha_big(alphas[i]);
  }
  big v = 1 - frac_part(sum);
  if (v >= 1) v = 0;
  return v;
}

// Distance measure of a mod-1 position: y in [0, 1/2] with
// |e^{2 pi i x} - 1| = 2 sin(pi y).
big wrap_distance(const big& x01) {
  big y = x01;
  if (y > big(0.5)) y = 1 - y;
  return y;
}

double two_sin_pi(const big& y) {
  const big pi = 4 * atan(big(1));
  big d = 2 * sin(pi * y);
  return d.convert_to<double>();
}

// Smallest trustworthy wrap distance after `m` accumulation steps at
// `digits` decimal digits: below this, fewer than 10 digits survive.
big precision_floor(long long m, int digits) {
  return big(m) * pow(big(10), -(digits - 10));
}

struct SweepPoint {
  long long m;
  big y;          // running min wrap distance, exact-zero flagged separately
  bool zero;      // an exact zero was seen at or before m
};

// Running-minimum sweep of (h-1)*alpha mod 1 for h = 2..2^{K_max+1},
// sampled at the power-of-two windows m = 2^{K+1}.
std::vector<SweepPoint> omega_sweep(const RotationNumber& lambda, int K_max,
                                    int /*digits*/) {
  const long long m_top = 1LL << (K_max + 2 - 1);  // 2^{K_max+1}
  std::vector<SweepPoint> out;
  out.reserve(static_cast<size_t>(K_max) + 1);
  if (lambda.kind == RotationNumber::Kind::fraction) {
    // Exact path: residues r_h = (h-1)p mod q cycle with period q.
    const long long q = lambda.q, p = lambda.p;
    long long r = 0;
    long long best_num = -1;  // min over min(r, q-r), -1 = unset
    bool zero = false;
    long long next_m = 2;
    int K = 0;
    for (long long h = 2; h <= m_top; ++h) {
      if (h - 2 < q) {  // after q steps every residue has been visited
        r += p;
        if (r >= q) r -= q;
        if (r == 0) {
          zero = true;
        } else {
          long long d = std::min(r, q - r);
          if (best_num < 0 || d < best_num) best_num = d;
        }
      }
      if (h == next_m) {
        big y = best_num < 0 ? big(1) : big(best_num) / big(q);
        out.push_back({next_m, y, zero});
        ++K;
        next_m <<= 1;
        if (K > K_max) break;
      }
    }
    return out;
  }
  const big alpha = alpha_big(lambda);
  big x = alpha;  // (h-1)*alpha mod 1 at h = 2
  big ymin(1);
  bool zero = false;
  long long next_m = 2;
  for (long long h = 2; h <= m_top; ++h) {
    if (x == 0) {
      zero = true;
    } else {
      big y = wrap_distance(x);
      if (y < ymin) ymin = y;
    }
    if (h == next_m) {
      out.push_back({next_m, ymin, zero});
      next_m <<= 1;
    }
    x = frac_part(x + alpha);
  }
  return out;
}

void guard_precision(const big& ymin, bool zero, long long m, int digits) {
  if (!zero && ymin < precision_floor(m, digits)) {
    throw Error("precision-exhausted",
                "mod-1 reduction at m=" + std::to_string(m) +
                    " leaves fewer than 10 trusted digits; raise precision");
  }
}

SmallDivisorReport report_from_sweep(const std::vector<SweepPoint>& pts,
                                     double stagnation_tol, int digits,
                                     bool throwing) {
  SmallDivisorReport rep;
  double sum = 0.0;
  for (size_t K = 0; K < pts.size(); ++K) {
    const auto& pt = pts[K];
    if (pt.zero) {
      if (throwing) {
        throw Error("root-of-unity",
                    "omega(" + std::to_string(pt.m) + ") = 0");
      }
      rep.m_values.push_back(pt.m);
      rep.omega_values.push_back(0.0);
      rep.verdict = "root-of-unity";
      return rep;
    }
    guard_precision(pt.y, pt.zero, pt.m, digits);
    const double om = two_sin_pi(pt.y);
    rep.m_values.push_back(pt.m);
    rep.omega_values.push_back(om);
    sum += std::ldexp(std::log(1.0 / om), -static_cast<int>(K));
    rep.partial_sums.push_back(sum);
  }
  const size_t n = rep.partial_sums.size();
  if (n >= 3 &&
      rep.partial_sums[n - 1] - rep.partial_sums[n - 3] < stagnation_tol) {
    rep.verdict = "brjuno-plausible";
  } else {
    rep.verdict = "inconclusive";
  }
  return rep;
}

}  // namespace

double omega(const RotationNumber& lambda, long long m, int digits) {
  if (m < 2) throw Error("config-invalid", "omega needs m >= 2");
  big::default_precision(static_cast<unsigned>(digits));
  if (lambda.kind == RotationNumber::Kind::fraction) {
    const long long q = lambda.q, p = lambda.p;
    long long r = 0;
    long long best_num = -1;
    bool zero = false;
    const long long steps = std::min(m - 1, q);  // residues repeat after q
    for (long long s = 0; s < steps; ++s) {
      r += p;
      if (r >= q) r -= q;
      if (r == 0) {
        zero = true;
      } else {
        long long d = std::min(r, q - r);
        if (best_num < 0 || d < best_num) best_num = d;
      }
    }
    if (zero) return 0.0;
    return two_sin_pi(big(best_num) / big(q));
  }
  const big alpha = alpha_big(lambda);
  big x = alpha;
  big ymin(1);
  bool zero = false;
  for (long long h = 2; h <= m; ++h) {
    if (x == 0) {
      zero = true;
    } else {
      big y = wrap_distance(x);
      if (y < ymin) ymin = y;
    }
    x = frac_part(x + alpha);
  }
  if (zero) return 0.0;
  guard_precision(ymin, zero, m, digits);
  return two_sin_pi(ymin);
}

SmallDivisorReport brjuno_partial_sums(const RotationNumber& lambda, int K_max,
                                       double stagnation_tol, int digits) {
  if (K_max < 0) throw Error("config-invalid", "K_max must be >= 0");
  big::default_precision(static_cast<unsigned>(digits));
  const auto pts = omega_sweep(lambda, K_max, digits);
  return report_from_sweep(pts, stagnation_tol, digits, /*throwing=*/true);
}

SmallDivisorReport small_divisor_scan(const RotationNumber& lambda, int K_max,
                                      double stagnation_tol, int digits) {
  if (K_max < 0) throw Error("config-invalid", "K_max must be >= 0");
  big::default_precision(static_cast<unsigned>(digits));
  const auto pts = omega_sweep(lambda, K_max, digits);
  return report_from_sweep(pts, stagnation_tol, digits, /*throwing=*/false);
}

OneResonanceReport check_one_resonant(const std::vector<RotationNumber>& alphas,
                                      int degree_bound, double tol,
                                      double near_miss, int digits) {
  const int k = static_cast<int>(alphas.size());
  if (k < 2) throw Error("config-invalid", "need a tuple of length >= 2");
  if (degree_bound < 2) throw Error("config-invalid", "degree bound >= 2");
  big::default_precision(static_cast<unsigned>(digits));
  std::vector<big> a(static_cast<size_t>(k));
  for (int j = 0; j < k; ++j) a[static_cast<size_t>(j)] = tuple_alpha_big(alphas, static_cast<size_t>(j));

  OneResonanceReport rep;
  rep.one_resonant = true;

  // Is m of the exempt product form e_j + t*(1,...,1), t >= 1?
  auto exempt = [&](const std::vector<int>& m, int j) {
    int t = -1;
    for (int i = 0; i < k; ++i) {
      int base = m[static_cast<size_t>(i)] - (i == j ? 1 : 0);
      if (base < 1) return false;
      if (t < 0) t = base;
      if (base != t) return false;
    }
    return t >= 1;
  };

  std::vector<int> m(static_cast<size_t>(k), 0);
  // Depth-first enumeration in lexicographic order over 0 <= m_i,
  // pruned by total degree.
  auto scan = [&](auto&& self, int pos, int remaining, const big& dot) -> void {
    if (pos == k) {
      const int total = degree_bound - remaining;
      if (total < 2) return;
      const big s = frac_part(dot);
      for (int j = 0; j < k; ++j) {
        big d = s - a[static_cast<size_t>(j)];
        d = frac_part(d);
        const big y = wrap_distance(d);
        const double gap = two_sin_pi(y);
        if (gap >= near_miss) continue;
        if (exempt(m, j)) continue;
        ResonanceHit hit;
        hit.j = j + 1;
        hit.m = m;
        hit.gap = gap;
        if (gap < tol) {
          rep.violations.push_back(hit);
          rep.one_resonant = false;
        } else {
          rep.warnings.push_back(hit);
        }
      }
      return;
    }
    for (int e = 0; e <= remaining; ++e) {
      m[static_cast<size_t>(pos)] = e;
      self(self, pos + 1, remaining - e, dot + e * a[static_cast<size_t>(pos)]);
    }
    m[static_cast<size_t>(pos)] = 0;
  };
  scan(scan, 0, degree_bound, big(0));
  return rep;
}

namespace {

std::vector<SweepPoint> admissible_sweep(const std::vector<big>& a, size_t j,
                                         int K_max) {
  const long long m_top = 1LL << (K_max + 1);
  std::vector<SweepPoint> out;
  out.reserve(static_cast<size_t>(K_max) + 1);
  big x = frac_part(a[j] + a[j]);  // h*alpha_j mod 1 at h = 2
  big ymin(1);
  bool zero = false;
  long long next_m = 2;
  for (long long h = 2; h <= m_top; ++h) {
    for (const big& ai : a) {
      big d = frac_part(x - ai);
      if (d == 0) {
        zero = true;
        continue;
      }
      big y = wrap_distance(d);
      if (y < ymin) ymin = y;
    }
    if (h == next_m) {
      out.push_back({next_m, ymin, zero});
      next_m <<= 1;
    }
    x = frac_part(x + a[j]);
  }
  return out;
}

std::vector<SmallDivisorReport> admissible_common(
    const std::vector<RotationNumber>& alphas, int K_max,
    double stagnation_tol, int digits, bool throwing) {
  const size_t k = alphas.size();
  if (k < 2) throw Error("config-invalid", "need a tuple of length >= 2");
  if (K_max < 0) throw Error("config-invalid", "K_max must be >= 0");
  big::default_precision(static_cast<unsigned>(digits));
  std::vector<big> a(k);
  for (size_t j = 0; j < k; ++j) a[j] = tuple_alpha_big(alphas, j);
  std::vector<SmallDivisorReport> reports;
  reports.reserve(k);
  for (size_t j = 0; j < k; ++j) {
    const auto pts = admissible_sweep(a, j, K_max);
    reports.push_back(report_from_sweep(pts, stagnation_tol, digits, throwing));
  }
  return reports;
}

}  // namespace

std::vector<SmallDivisorReport> admissible_partial_sums(
    const std::vector<RotationNumber>& alphas, int K_max,
    double stagnation_tol, int digits) {
  return admissible_common(alphas, K_max, stagnation_tol, digits, true);
}

std::vector<SmallDivisorReport> admissible_scan(
    const std::vector<RotationNumber>& alphas, int K_max,
    double stagnation_tol, int digits) {
  return admissible_common(alphas, K_max, stagnation_tol, digits, false);
}

}  // namespace rbl
