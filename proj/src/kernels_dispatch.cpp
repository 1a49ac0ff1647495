#include <cstdlib>

#include "rbl/kernels.hpp"

namespace rbl::kern {

std::string name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "scalar";
}

bool supported(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#ifdef RBL_HAVE_AVX2
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Backend::neon:
#ifdef RBL_HAVE_NEON
      return true;  // baseline on AArch64 builds
#else
      return false;
#endif
  }
  return false;
}

namespace {

Backend parse_backend(const std::string& s) {
  if (s == "scalar") return Backend::scalar;
  if (s == "avx2") return Backend::avx2;
  if (s == "neon") return Backend::neon;
  throw Error("config-invalid", "unknown backend name: " + s);
}

Backend default_backend() {
  if (const char* env = std::getenv("RBL_FORCE_BACKEND")) {
    const Backend b = parse_backend(env);
    if (!supported(b)) {
      throw Error("config-invalid",
                  "RBL_FORCE_BACKEND names an unsupported backend: " +
                      std::string(env));
    }
    return b;
  }
  if (supported(Backend::avx2)) return Backend::avx2;
  if (supported(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend& selection() {
  static Backend b = default_backend();
  return b;
}

}  // namespace

Backend active() { return selection(); }

void force(Backend b) {
  if (!supported(b)) {
    throw Error("config-invalid",
                "backend not supported on this machine: " + name(b));
  }
  selection() = b;
}

void step_batch(const GermSpec& spec, double* re, double* im, std::size_t n) {
  if (n == 0) return;
  switch (selection()) {
    case Backend::scalar:
      step_batch_scalar(spec, re, im, n);
      return;
    case Backend::avx2:
#ifdef RBL_HAVE_AVX2
      step_batch_avx2(spec, re, im, n);
      return;
#else
      break;
#endif
    case Backend::neon:
#ifdef RBL_HAVE_NEON
      step_batch_neon(spec, re, im, n);
      return;
#else
      break;
#endif
  }
  step_batch_scalar(spec, re, im, n);
}

}  // namespace rbl::kern
