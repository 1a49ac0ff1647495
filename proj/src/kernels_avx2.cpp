// 4-wide AVX2 realization of the canonical step sequence.  Each intrinsic
// below corresponds one-to-one to a scalar operation in detail/step_ops.hpp
// (same operands, same order), so every lane reproduces the scalar kernel
// bitwise.  Negation is a sign-bit XOR, matching scalar unary minus exactly
// (an 0 - x subtraction would differ on signed zeros), and no FMA intrinsics
// are used since the scalar reference is compiled with contraction off.
#ifdef RBL_HAVE_AVX2

#include <immintrin.h>

#include "rbl/kernels.hpp"

namespace rbl::kern {

namespace {

struct V2 {
  __m256d re;
  __m256d im;
};

inline V2 vmul(V2 a, V2 b) {
  return {_mm256_sub_pd(_mm256_mul_pd(a.re, b.re), _mm256_mul_pd(a.im, b.im)),
          _mm256_add_pd(_mm256_mul_pd(a.re, b.im), _mm256_mul_pd(a.im, b.re))};
}

inline V2 vadd(V2 a, V2 b) {
  return {_mm256_add_pd(a.re, b.re), _mm256_add_pd(a.im, b.im)};
}

inline V2 vpow_linear(V2 z, int e) {
  // e >= 1 in all call sites (guarded like the scalar monomial helper).
  V2 acc = z;
  for (int i = 1; i < e; ++i) acc = vmul(acc, z);
  return acc;
}

}  // namespace

void step_batch_avx2(const GermSpec& spec, double* re, double* im,
                     std::size_t n) {
  const int k = spec.k;
  const std::size_t main = n - n % 4;
  const __m256d ones = _mm256_set1_pd(1.0);
  const __m256d invk = _mm256_set1_pd(spec.inv_k);
  const __m256d signmask = _mm256_set1_pd(-0.0);
  V2 lam[kMaxDim];
  for (int j = 0; j < k; ++j) {
    lam[j] = {_mm256_set1_pd(spec.lambdas[static_cast<size_t>(j)].real()),
              _mm256_set1_pd(spec.lambdas[static_cast<size_t>(j)].imag())};
  }
  for (std::size_t i = 0; i < main; i += 4) {
    V2 z[kMaxDim];
    for (int j = 0; j < k; ++j) {
      z[j] = {_mm256_loadu_pd(re + static_cast<size_t>(j) * n + i),
              _mm256_loadu_pd(im + static_cast<size_t>(j) * n + i)};
    }
    // u = z_1 * ... * z_k, left fold.
    V2 u = z[0];
    for (int j = 1; j < k; ++j) u = vmul(u, z[j]);
    // f = 1 - u/k: real part 1 - u.re*inv_k, imaginary part -(u.im*inv_k).
    const V2 f = {_mm256_sub_pd(ones, _mm256_mul_pd(u.re, invk)),
                  _mm256_xor_pd(_mm256_mul_pd(u.im, invk), signmask)};
    V2 out[kMaxDim];
    for (int j = 0; j < k; ++j) {
      const V2 t = vmul(z[j], f);
      out[j] = vmul(lam[j], t);
    }
    for (const auto& term : spec.perturbation) {
      V2 acc = {_mm256_set1_pd(term.coeff.real()),
                _mm256_set1_pd(term.coeff.imag())};
      for (int j = 0; j < k; ++j) {
        const int e = term.exponents[static_cast<size_t>(j)];
        if (e > 0) acc = vmul(acc, vpow_linear(z[j], e));
      }
      out[term.target - 1] = vadd(out[term.target - 1], acc);
    }
    for (int j = 0; j < k; ++j) {
      _mm256_storeu_pd(re + static_cast<size_t>(j) * n + i, out[j].re);
      _mm256_storeu_pd(im + static_cast<size_t>(j) * n + i, out[j].im);
    }
  }
  step_batch_scalar_range(spec, re, im, n, main, n);
}

}  // namespace rbl::kern

#endif  // RBL_HAVE_AVX2
