#pragma once

#include <cmath>
#include <utility>

#include "rbl/common.hpp"
#include "rbl/point.hpp"

namespace rbl::detail {

// Solve A x = b for a small k x k complex system by Gaussian elimination
// with partial pivoting. A and b are clobbered. Throws Error("no-preimage")
// on a (numerically) singular matrix — callers are Newton steps.
inline void solve_linear(int k, cplx A[kMaxDim][kMaxDim], cplx b[kMaxDim],
                         cplx x[kMaxDim]) {
  int perm[kMaxDim];
  for (int i = 0; i < k; ++i) perm[i] = i;
  for (int col = 0; col < k; ++col) {
    int best = col;
    double best_mag = std::abs(A[perm[col]][col]);
    for (int r = col + 1; r < k; ++r) {
      double m = std::abs(A[perm[r]][col]);
      if (m > best_mag) {
        best = r;
        best_mag = m;
      }
    }
    if (!(best_mag > 0.0)) throw Error("no-preimage", "singular Jacobian");
    std::swap(perm[col], perm[best]);
    const cplx pivot = A[perm[col]][col];
    for (int r = col + 1; r < k; ++r) {
      const cplx f = A[perm[r]][col] / pivot;
      if (f == cplx(0.0, 0.0)) continue;
      A[perm[r]][col] = cplx(0.0, 0.0);
      for (int c = col + 1; c < k; ++c) A[perm[r]][c] -= f * A[perm[col]][c];
      b[perm[r]] -= f * b[perm[col]];
    }
  }
  for (int row = k - 1; row >= 0; --row) {
    cplx acc = b[perm[row]];
    for (int c = row + 1; c < k; ++c) acc -= A[perm[row]][c] * x[c];
    x[row] = acc / A[perm[row]][row];
  }
}

}  // namespace rbl::detail
