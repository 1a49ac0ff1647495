#pragma once

// Canonical scalar operation order for one germ step.
//
// Every backend (plain scalar, AVX2, NEON) must realize exactly this
// sequence of IEEE double operations so that orbits agree bitwise across
// backends. Keep this header free of std::complex arithmetic: the fused
// formulas live here as explicit multiply/add chains, and the build pins
// -ffp-contract=off so no backend may contract them into FMAs.

namespace rbl::detail {

struct D2 {
  double re;
  double im;
};

inline D2 cmul(D2 a, D2 b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline D2 cadd(D2 a, D2 b) { return {a.re + b.re, a.im + b.im}; }

// u = z_1 * z_2 * ... * z_k as a left fold.
inline D2 coordinate_product(const D2* z, int k) {
  D2 u = z[0];
  for (int j = 1; j < k; ++j) u = cmul(u, z[j]);
  return u;
}

// One model step given precomputed u: out_j = lambda_j * (z_j * (1 - u/k)).
// The shared factor f = 1 - u/k is formed once; each coordinate then does
// exactly two complex multiplies in the fixed order (z_j first, lambda last).
inline void model_step(const D2* z, const D2* lambda, int k, double inv_k,
                       D2* out) {
  const D2 u = coordinate_product(z, k);
  const D2 f = {1.0 - u.re * inv_k, -(u.im * inv_k)};
  for (int j = 0; j < k; ++j) {
    const D2 t = cmul(z[j], f);
    out[j] = cmul(lambda[j], t);
  }
}

// z^e by a linear chain of multiplies: z*z*...*z, (e-1) cmuls. Slower than
// square-and-multiply but order-canonical, and perturbation degrees are
// small enough that it never matters.
inline D2 linear_power(D2 z, int e) {
  if (e == 0) return {1.0, 0.0};
  D2 acc = z;
  for (int i = 1; i < e; ++i) acc = cmul(acc, z);
  return acc;
}

// Monomial coeff * prod_j z_j^{e_j}, factors multiplied in coordinate order.
inline D2 monomial(D2 coeff, const D2* z, const int* exps, int k) {
  D2 acc = coeff;
  for (int j = 0; j < k; ++j) {
    if (exps[j] > 0) acc = cmul(acc, linear_power(z[j], exps[j]));
  }
  return acc;
}

}  // namespace rbl::detail
