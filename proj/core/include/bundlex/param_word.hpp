#pragma once

#include <string>
#include <variant>
#include <vector>

#include "bundlex/automorphism.hpp"
#include "bundlex/branch.hpp"
#include "bundlex/collar.hpp"
#include "bundlex/flow.hpp"
#include "bundlex/types.hpp"

namespace bundlex::ext {

// Transition factor that does not depend on the base point.
struct ConstFactor {
  aut::ElementaryAutomorphism map;
};

/* Transition factor S^{t(w)}: the flow evaluated at a base-dependent time.
 * The flow is held by value, so two factors built from the same flow can
 * be perturbed independently. */
struct FlowFactor {
  aut::OneParameterFlow flow;
  geom::BranchFunction time;
};

using ParamFactor = std::variant<ConstFactor, FlowFactor>;

/* Word of parameterized factors, first factor applied first (the same
 * application order as AutomorphismWord). Evaluation needs the chart
 * coordinate w of the transition's own chart; constant factors ignore it. */
class ParamWord {
 public:
  explicit ParamWord(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  const std::vector<ParamFactor>& factors() const { return factors_; }
  std::vector<ParamFactor>& mutable_factors() { return factors_; }
  bool is_const() const;

  void push_const(aut::ElementaryAutomorphism e);
  void push_flow(aut::OneParameterFlow f, geom::BranchFunction time);
  void append_word(const aut::AutomorphismWord& w);

  static ParamWord from_word(const aut::AutomorphismWord& w);

  FiberPoint apply(Cx w, const FiberPoint& z) const;
  // Applies the factor-wise inverses in reversed order.
  FiberPoint apply_inverse(Cx w, const FiberPoint& z) const;

 private:
  int dim_;
  std::vector<ParamFactor> factors_;
};

/* Where a transition (or an identity check) may be sampled, in the
 * coordinate of its chart. chart_map sends that coordinate to the base
 * plane; zeta_im_clamp > 0 additionally restricts |Im zeta| of the image
 * (needed wherever both halves of the base cover must be present). */
struct SampleRegion {
  enum class Kind { collar_region, band_rect, fiber_only };

  std::string chart;
  geom::CoordMap chart_map;
  Kind kind = Kind::fiber_only;
  geom::CollarRegion region = geom::CollarRegion::omega;  // collar_region only
  double x0 = 0.0, x1 = 0.0, half_band = 0.0;             // band_rect only
  double zeta_im_clamp = 0.0;
  std::string label;

  static SampleRegion fiber_only_region(std::string label);
  static SampleRegion collar(std::string chart, geom::CoordMap map,
                             geom::CollarRegion region, double zeta_im_clamp,
                             std::string label);
  static SampleRegion band(std::string chart, geom::CoordMap map, double x0,
                           double x1, double half_band, double zeta_im_clamp,
                           std::string label);
};

}  // namespace bundlex::ext
