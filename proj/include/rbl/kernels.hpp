#pragma once

#include <cstddef>
#include <string>

#include "rbl/germ.hpp"

namespace rbl::kern {

// Vectorization backends for the orbit-stepping hot loop.  Every backend
// realizes the canonical operation order of detail/step_ops.hpp, so orbits
// agree bitwise no matter which one runs; selection is purely a speed choice.
enum class Backend { scalar, avx2, neon };

std::string name(Backend b);

// Compiled in and usable on this machine.
bool supported(Backend b);

// Currently selected backend.  The first query resolves the default:
// the RBL_FORCE_BACKEND environment variable (scalar|avx2|neon) wins if set
// (Error("config-invalid") if it names an unsupported backend); otherwise
// the widest supported backend is picked.
Backend active();

// Test hook: pin the backend explicitly.  Throws Error("config-invalid")
// if unsupported.
void force(Backend b);

// Apply one germ step in place to n points held as structure-of-arrays:
// coordinate j of point i lives at re[j*n + i] and im[j*n + i], 0 <= j < k.
// Dispatches to the active backend.
void step_batch(const GermSpec& spec, double* re, double* im, std::size_t n);

// Per-backend entry points (the dispatcher and the equivalence tests call
// these directly).
void step_batch_scalar(const GermSpec& spec, double* re, double* im,
                       std::size_t n);
// Scalar kernel on an index sub-range [begin, end) of a batch of n points
// (row stride stays n); the SIMD backends hand their tail lanes to this.
void step_batch_scalar_range(const GermSpec& spec, double* re, double* im,
                             std::size_t n, std::size_t begin,
                             std::size_t end);
#ifdef RBL_HAVE_AVX2
void step_batch_avx2(const GermSpec& spec, double* re, double* im,
                     std::size_t n);
#endif
#ifdef RBL_HAVE_NEON
void step_batch_neon(const GermSpec& spec, double* re, double* im,
                     std::size_t n);
#endif

}  // namespace rbl::kern
