#include "bundlex/param_word.hpp"

#include <utility>

#include "bundlex/errors.hpp"

namespace bundlex::ext {

bool ParamWord::is_const() const {
  for (const auto& f : factors_)
    if (std::holds_alternative<FlowFactor>(f)) return false;
  return true;
}

void ParamWord::push_const(aut::ElementaryAutomorphism e) {
  if (e.dim() != dim_)
    throw DimensionMismatch("constant factor dimension does not match word");
  factors_.push_back(ConstFactor{std::move(e)});
}

void ParamWord::push_flow(aut::OneParameterFlow f, geom::BranchFunction time) {
  if (f.dim() != dim_)
    throw DimensionMismatch("flow factor dimension does not match word");
  factors_.push_back(FlowFactor{std::move(f), std::move(time)});
}

void ParamWord::append_word(const aut::AutomorphismWord& w) {
  if (w.dim() != dim_)
    throw DimensionMismatch("appended word dimension does not match word");
  for (const auto& e : w.factors()) factors_.push_back(ConstFactor{e});
}

ParamWord ParamWord::from_word(const aut::AutomorphismWord& w) {
  ParamWord out(w.dim());
  out.append_word(w);
  return out;
}

FiberPoint ParamWord::apply(Cx w, const FiberPoint& z) const {
  if (static_cast<int>(z.size()) != dim_)
    throw DimensionMismatch("fiber point dimension does not match word");
  FiberPoint cur = z;
  for (const auto& f : factors_) {
    if (const auto* c = std::get_if<ConstFactor>(&f)) {
      cur = c->map.apply(cur);
    } else {
      const auto& fl = std::get<FlowFactor>(f);
      cur = fl.flow.apply(fl.time.eval(w), cur);
    }
  }
  return cur;
}

FiberPoint ParamWord::apply_inverse(Cx w, const FiberPoint& z) const {
  if (static_cast<int>(z.size()) != dim_)
    throw DimensionMismatch("fiber point dimension does not match word");
  FiberPoint cur = z;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    if (const auto* c = std::get_if<ConstFactor>(&*it)) {
      cur = c->map.inverse().apply(cur);
    } else {
      const auto& fl = std::get<FlowFactor>(*it);
      cur = fl.flow.apply(-fl.time.eval(w), cur);
    }
  }
  return cur;
}

SampleRegion SampleRegion::fiber_only_region(std::string label) {
  SampleRegion r;
  r.chart = "none";
  r.kind = Kind::fiber_only;
  r.label = std::move(label);
  return r;
}

SampleRegion SampleRegion::collar(std::string chart, geom::CoordMap map,
                                  geom::CollarRegion region,
                                  double zeta_im_clamp, std::string label) {
  SampleRegion r;
  r.chart = std::move(chart);
  r.chart_map = std::move(map);
  r.kind = Kind::collar_region;
  r.region = region;
  r.zeta_im_clamp = zeta_im_clamp;
  r.label = std::move(label);
  return r;
}

SampleRegion SampleRegion::band(std::string chart, geom::CoordMap map,
                                double x0, double x1, double half_band,
                                double zeta_im_clamp, std::string label) {
  SampleRegion r;
  r.chart = std::move(chart);
  r.chart_map = std::move(map);
  r.kind = Kind::band_rect;
  r.x0 = x0;
  r.x1 = x1;
  r.half_band = half_band;
  r.zeta_im_clamp = zeta_im_clamp;
  r.label = std::move(label);
  return r;
}

}  // namespace bundlex::ext
