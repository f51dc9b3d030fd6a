#include "bundlex/collar.hpp"

#include <cmath>

#include "bundlex/errors.hpp"

namespace bundlex::geom {

Cx CoordMap::to_base(Cx w) const {
  for (const CoordStep& s : steps)
    w = (s.kind == CoordStep::Kind::affine) ? s.center + s.scale * w : s.scale / w;
  return w;
}

Cx CoordMap::to_chart(Cx zeta) const {
  for (auto it = steps.rbegin(); it != steps.rend(); ++it)
    zeta = (it->kind == CoordStep::Kind::affine) ? (zeta - it->center) / it->scale
                                                 : it->scale / zeta;
  return zeta;
}

CoordMap CoordMap::affine(Cx center, double scale) {
  return CoordMap{{CoordStep{CoordStep::Kind::affine, center, scale}}};
}

CoordMap CoordMap::inversion(double scale) {
  return CoordMap{{CoordStep{CoordStep::Kind::inversion, 0.0, scale}}};
}

CoordMap CoordMap::then(const CoordMap& outer) const {
  CoordMap out = *this;
  out.steps.insert(out.steps.end(), outer.steps.begin(), outer.steps.end());
  return out;
}

CollarChart hole_collar(const DomainSpec& spec, int hole) {
  if (hole < 0 || hole >= static_cast<int>(spec.holes.size()))
    throw Error("hole index out of range");
  const DiskSpec& h = spec.holes[static_cast<std::size_t>(hole)];
  return CollarChart{"hole" + std::to_string(hole),
                     CoordMap::affine(h.center, h.radius)};
}

CollarChart outer_collar(const DomainSpec& spec) {
  // w = R / zeta: the unit disc in w covers the outside of the outer
  // circle including infinity, and the collar annulus lands on
  // R/2 < |zeta| < R.
  return CollarChart{"outer", CoordMap::inversion(spec.outer_radius)};
}

bool in_region(CollarRegion region, Cx w, double margin) {
  const double r = std::abs(w);
  if (!(r > 1.0 + margin && r < 2.0 - margin)) return false;
  switch (region) {
    case CollarRegion::vplus:
      return w.imag() > -0.5 + margin;
    case CollarRegion::vminus:
      return w.imag() < 0.5 - margin;
    case CollarRegion::omega:
      return std::abs(w.imag()) < 0.5 - margin && w.real() > margin;
    case CollarRegion::omega_prime:
      return std::abs(w.imag()) < 0.5 - margin && w.real() < -margin;
    case CollarRegion::annulus_upper:
      return w.imag() > margin;
    case CollarRegion::annulus_lower:
      return w.imag() < -margin;
  }
  return false;
}

const char* region_name(CollarRegion region) {
  switch (region) {
    case CollarRegion::vplus: return "vplus";
    case CollarRegion::vminus: return "vminus";
    case CollarRegion::omega: return "omega";
    case CollarRegion::omega_prime: return "omegaPrime";
    case CollarRegion::annulus_upper: return "upper";
    case CollarRegion::annulus_lower: return "lower";
  }
  return "?";
}

}  // namespace bundlex::geom
