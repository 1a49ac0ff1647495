#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>

#include "rbl/common.hpp"

namespace rbl {

inline constexpr int kMaxDim = 8;

// A point of C^k with k fixed by the germ acting on it (2 <= k <= kMaxDim).
// Coordinates are 0-based in code; prose and reports use 1-based z_1..z_k.
struct ComplexPoint {
  int k = 2;
  std::array<cplx, kMaxDim> c{};

  ComplexPoint() = default;
  explicit ComplexPoint(int dim) : k(dim) {
    if (dim < 1 || dim > kMaxDim) throw Error("dimension-mismatch", "dimension out of range");
  }
  ComplexPoint(std::initializer_list<cplx> list) : k(static_cast<int>(list.size())) {
    if (k < 1 || k > kMaxDim) throw Error("dimension-mismatch", "dimension out of range");
    int i = 0;
    for (const cplx& z : list) c[i++] = z;
  }

  cplx& operator[](int j) { return c[j]; }
  const cplx& operator[](int j) const { return c[j]; }
};

inline ComplexPoint point2(cplx z, cplx w) { return ComplexPoint{z, w}; }

inline double sup_norm(const ComplexPoint& p) {
  double m = 0.0;
  for (int j = 0; j < p.k; ++j) m = std::max(m, std::abs(p.c[j]));
  return m;
}

inline double distance(const ComplexPoint& a, const ComplexPoint& b) {
  double s = 0.0;
  for (int j = 0; j < a.k; ++j) {
    double d = std::abs(a.c[j] - b.c[j]);
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool exactly_equal(const ComplexPoint& a, const ComplexPoint& b) {
  if (a.k != b.k) return false;
  for (int j = 0; j < a.k; ++j)
    if (a.c[j] != b.c[j]) return false;
  return true;
}

// Product of all coordinates: the monomial whose dynamics drives the basin.
inline cplx resonant_product(const ComplexPoint& p) {
  cplx u = p.c[0];
  for (int j = 1; j < p.k; ++j) u *= p.c[j];
  return u;
}

}  // namespace rbl
