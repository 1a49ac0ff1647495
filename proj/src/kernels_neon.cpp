// 2-wide NEON realization of the canonical step sequence; see
// kernels_avx2.cpp for the lane-equivalence rules.  vnegq_f64 is an IEEE
// sign flip, identical to scalar unary minus.
#ifdef RBL_HAVE_NEON

#include <arm_neon.h>

#include "rbl/kernels.hpp"

namespace rbl::kern {

namespace {

struct V2 {
  float64x2_t re;
  float64x2_t im;
};

inline V2 vmul(V2 a, V2 b) {
  return {vsubq_f64(vmulq_f64(a.re, b.re), vmulq_f64(a.im, b.im)),
          vaddq_f64(vmulq_f64(a.re, b.im), vmulq_f64(a.im, b.re))};
}

inline V2 vadd(V2 a, V2 b) {
  return {vaddq_f64(a.re, b.re), vaddq_f64(a.im, b.im)};
}

inline V2 vpow_linear(V2 z, int e) {
  V2 acc = z;
  for (int i = 1; i < e; ++i) acc = vmul(acc, z);
  return acc;
}

}  // namespace

void step_batch_neon(const GermSpec& spec, double* re, double* im,
                     std::size_t n) {
  const int k = spec.k;
  const std::size_t main = n - n % 2;
  const float64x2_t ones = vdupq_n_f64(1.0);
  const float64x2_t invk = vdupq_n_f64(spec.inv_k);
  V2 lam[kMaxDim];
  for (int j = 0; j < k; ++j) {
    lam[j] = {vdupq_n_f64(spec.lambdas[static_cast<size_t>(j)].real()),
              vdupq_n_f64(spec.lambdas[static_cast<size_t>(j)].imag())};
  }
  for (std::size_t i = 0; i < main; i += 2) {
    V2 z[kMaxDim];
    for (int j = 0; j < k; ++j) {
      z[j] = {vld1q_f64(re + static_cast<size_t>(j) * n + i),
              vld1q_f64(im + static_cast<size_t>(j) * n + i)};
    }
    V2 u = z[0];
    for (int j = 1; j < k; ++j) u = vmul(u, z[j]);
    const V2 f = {vsubq_f64(ones, vmulq_f64(u.re, invk)),
                  vnegq_f64(vmulq_f64(u.im, invk))};
    V2 out[kMaxDim];
    for (int j = 0; j < k; ++j) {
      const V2 t = vmul(z[j], f);
      out[j] = vmul(lam[j], t);
    }
    for (const auto& term : spec.perturbation) {
      V2 acc = {vdupq_n_f64(term.coeff.real()),
                vdupq_n_f64(term.coeff.imag())};
      for (int j = 0; j < k; ++j) {
        const int e = term.exponents[static_cast<size_t>(j)];
        if (e > 0) acc = vmul(acc, vpow_linear(z[j], e));
      }
      out[term.target - 1] = vadd(out[term.target - 1], acc);
    }
    for (int j = 0; j < k; ++j) {
      vst1q_f64(re + static_cast<size_t>(j) * n + i, out[j].re);
      vst1q_f64(im + static_cast<size_t>(j) * n + i, out[j].im);
    }
  }
  step_batch_scalar_range(spec, re, im, n, main, n);
}

}  // namespace rbl::kern

#endif  // RBL_HAVE_NEON
