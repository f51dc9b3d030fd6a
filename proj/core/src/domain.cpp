#include "bundlex/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bundlex/errors.hpp"

namespace bundlex::geom {

DomainSpec validate_domain(DomainSpec spec) {
  if (!(spec.outer_radius > 0.0))
    throw HoleOutsideDomain("outer radius must be positive");
  std::sort(spec.holes.begin(), spec.holes.end(),
            [](const DiskSpec& a, const DiskSpec& b) { return a.center < b.center; });
  const double R = spec.outer_radius;
  for (std::size_t i = 0; i < spec.holes.size(); ++i) {
    const DiskSpec& h = spec.holes[i];
    if (!(h.radius > 0.0))
      throw HoleOutsideDomain("hole radius must be positive");
    const double reach = std::abs(h.center) + h.radius;
    if (reach >= R)
      throw HoleOutsideDomain("closed hole " + std::to_string(i) +
                              " is not inside the outer disc");
    // The outer collar annulus is R/2 < |zeta| < R; holes must stay clear
    // of it, touching at |zeta| = R/2 at most.
    if (reach > R / 2.0)
      throw CollarOverlap("hole " + std::to_string(i) +
                          " reaches into the outer collar annulus");
    if (std::abs(h.center) + 2.0 * h.radius > R)
      throw CollarOverlap("doubled collar of hole " + std::to_string(i) +
                          " leaves the outer disc");
    if (i > 0) {
      const DiskSpec& g = spec.holes[i - 1];
      if (g.center + g.radius >= h.center - h.radius)
        throw CollarOverlap("closed holes " + std::to_string(i - 1) + " and " +
                            std::to_string(i) + " intersect");
      if (2.0 * (g.radius + h.radius) > h.center - g.center)
        throw CollarOverlap("doubled collars of holes " + std::to_string(i - 1) +
                            " and " + std::to_string(i) + " overlap");
    }
  }
  return spec;
}

std::pair<double, double> band_interval(const DomainSpec& spec, int p) {
  const int n = static_cast<int>(spec.holes.size());
  if (p < 0 || p > n) throw Error("band index out of range");
  double lo = (p == 0) ? -spec.outer_radius
                       : spec.holes[static_cast<std::size_t>(p - 1)].center +
                             spec.holes[static_cast<std::size_t>(p - 1)].radius;
  double hi = (p == n) ? spec.outer_radius
                       : spec.holes[static_cast<std::size_t>(p)].center -
                             spec.holes[static_cast<std::size_t>(p)].radius;
  return {lo, hi};
}

}  // namespace bundlex::geom
