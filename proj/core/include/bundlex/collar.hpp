#pragma once

#include <string>
#include <vector>

#include "bundlex/domain.hpp"
#include "bundlex/types.hpp"

namespace bundlex::geom {

/* One step of a base-coordinate change. Affine: x -> center + scale * x.
 * Inversion: x -> scale / x (center unused, kept zero). */
struct CoordStep {
  enum class Kind { affine, inversion };
  Kind kind = Kind::affine;
  Cx center = 0.0;
  double scale = 1.0;
};

/* Composition of coordinate steps, first step applied first. to_base maps
 * a chart coordinate to the base plane; to_chart inverts the composition. */
struct CoordMap {
  std::vector<CoordStep> steps;

  Cx to_base(Cx w) const;
  Cx to_chart(Cx zeta) const;

  static CoordMap affine(Cx center, double scale);
  static CoordMap inversion(double scale);
  // this map followed by `outer`: to_base = outer.to_base(this->to_base(w)).
  CoordMap then(const CoordMap& outer) const;
};

/* Collar neighborhood of a hole boundary (or of the outer circle), seen in
 * its chart coordinate w on the annulus 1 < |w| < 2. The chart maps the
 * unit disc onto the filled hole. */
struct CollarChart {
  std::string name;
  CoordMap map;
};

CollarChart hole_collar(const DomainSpec& spec, int hole);
CollarChart outer_collar(const DomainSpec& spec);

/* Chart-coordinate regions of the collar annulus:
 *   vplus      = {1 < |w| < 2, Im w > -1/2}
 *   vminus     = {1 < |w| < 2, Im w <  1/2}
 *   omega      = vplus ∩ vminus ∩ {Re w > 0}   (right crossing band)
 *   omegaPrime = vplus ∩ vminus ∩ {Re w < 0}   (left crossing band)
 *   upper      = {1 < |w| < 2, Im w > 0}       (refinement chart overlaps)
 *   lower      = {1 < |w| < 2, Im w < 0}
 * A positive margin shrinks the region by that amount in every inequality. */
enum class CollarRegion {
  vplus,
  vminus,
  omega,
  omega_prime,
  annulus_upper,
  annulus_lower
};

bool in_region(CollarRegion region, Cx w, double margin = 0.0);

const char* region_name(CollarRegion region);

}  // namespace bundlex::geom
