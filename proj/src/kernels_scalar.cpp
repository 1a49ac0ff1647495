#include "rbl/detail/step_ops.hpp"
#include "rbl/kernels.hpp"

namespace rbl::kern {

void step_batch_scalar_range(const GermSpec& spec, double* re, double* im,
                             std::size_t n, std::size_t begin,
                             std::size_t end) {
  const int k = spec.k;
  detail::D2 lam[kMaxDim];
  for (int j = 0; j < k; ++j) {
    lam[j] = {spec.lambdas[static_cast<size_t>(j)].real(),
              spec.lambdas[static_cast<size_t>(j)].imag()};
  }
  for (std::size_t i = begin; i < end; ++i) {
    detail::D2 z[kMaxDim], out[kMaxDim];
    for (int j = 0; j < k; ++j) {
      z[j] = {re[static_cast<size_t>(j) * n + i],
              im[static_cast<size_t>(j) * n + i]};
    }
    detail::model_step(z, lam, k, spec.inv_k, out);
    for (const auto& t : spec.perturbation) {
      const detail::D2 c = {t.coeff.real(), t.coeff.imag()};
      const detail::D2 m = detail::monomial(c, z, t.exponents.data(), k);
      out[t.target - 1] = detail::cadd(out[t.target - 1], m);
    }
    for (int j = 0; j < k; ++j) {
      re[static_cast<size_t>(j) * n + i] = out[j].re;
      im[static_cast<size_t>(j) * n + i] = out[j].im;
    }
  }
}

void step_batch_scalar(const GermSpec& spec, double* re, double* im,
                       std::size_t n) {
  step_batch_scalar_range(spec, re, im, n, 0, n);
}

}  // namespace rbl::kern
