#pragma once

#include <cmath>

#include "normlab/errors.hpp"
#include "normlab/sparse_vector.hpp"

namespace normlab {

// Piecewise Orlicz function: 0 at 0, (1/4)e^2 * e^{-1/t} on (0, 1/2), t^2 from
// 1/2 on. Both branches meet at M(1/2) = 1/4; convex, strictly increasing.
// For t below ~1/745 the exponential underflows and the value is an exact 0;
// that floor is below every tolerance used here.
inline double orlicz_m(double t) {
  if (t < 0.0) throw DomainError("orlicz_m: negative argument");
  if (t == 0.0) return 0.0;
  if (t < 0.5) return 0.25 * std::exp(2.0 - 1.0 / t);
  return t * t;
}

// Index-weighted power modular: sum of |v(n)|^{2n} with n the coordinate's
// own index, so evaluation does not depend on the shape of the support.
// Indices are 1-based; exponent 0 would degenerate the gauge.
inline double nakano_eval(const SparseVector& v) {
  double acc = 0.0;
  for (const auto& [c, val] : v.entries()) {
    if (c.index == 0) throw DomainError("nakano_eval: coordinate index 0 (indices are 1-based)");
    acc += std::pow(std::fabs(val), 2.0 * static_cast<double>(c.index));
  }
  return acc;
}

inline double orlicz_eval(const SparseVector& v) {
  double acc = 0.0;
  for (const auto& [c, val] : v.entries()) acc += orlicz_m(std::fabs(val));
  return acc;
}

}  // namespace normlab
