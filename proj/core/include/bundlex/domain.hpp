#pragma once

#include <vector>

#include "bundlex/types.hpp"

namespace bundlex::geom {

// Open disc centered on the real axis of the base plane.
struct DiskSpec {
  double center = 0.0;
  double radius = 0.0;
};

/* Base domain: the disc {|zeta| < outer_radius} minus the closed holes.
 * Holes are kept sorted by center (validate_domain normalizes). */
struct DomainSpec {
  double outer_radius = 0.0;
  std::vector<DiskSpec> holes;
};

/* Checks and normalizes a domain:
 * - positive radii, holes sorted by center
 * - each closed hole inside the outer disc (else HoleOutsideDomain)
 * - doubled-radius collar discs stay inside the outer disc, inside the
 *   half where they cannot meet the outer collar annulus
 *   (|c| + r <= R/2), and pairwise disjoint as open discs
 *   (else CollarOverlap). Touching collar circles are allowed. */
DomainSpec validate_domain(DomainSpec spec);

/* Real interval of the p-th band of the real axis inside the domain,
 * p = 0 (left of every hole) .. N (right of every hole). The p-th gap
 * word lives on this band. Requires a validated spec. */
std::pair<double, double> band_interval(const DomainSpec& spec, int p);

}  // namespace bundlex::geom
