#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace bundlex {

using Cx = std::complex<double>;

// A point of the fiber C^n.
using FiberPoint = std::vector<Cx>;

inline double sup_norm(const FiberPoint& z) {
  double m = 0.0;
  for (const Cx& c : z) m = std::max(m, std::abs(c));
  return m;
}

inline double sup_dist(const FiberPoint& a, const FiberPoint& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Residual metric used by every numeric agreement check in the library:
// |a - b| / (1 + |a|) in the sup norm.
inline double relative_residual(const FiberPoint& a, const FiberPoint& b) {
  return sup_dist(a, b) / (1.0 + sup_norm(a));
}

inline bool all_finite(const FiberPoint& z) {
  for (const Cx& c : z)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace bundlex
