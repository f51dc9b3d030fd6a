#include "bundlex/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bundlex/errors.hpp"
#include "bundlex/rng.hpp"

namespace bundlex::ext {

namespace {

constexpr int kMaxDraws = 10000;
constexpr double kFiberRadius = 2.0;
constexpr double kTimeRadius = 1.2;

double shrink(double width) { return std::min(1e-3, width / 10.0); }

bool clamp_ok(const SampleRegion& reg, Cx w) {
  if (reg.zeta_im_clamp <= 0.0) return true;
  Cx zeta = reg.chart_map.to_base(w);
  return std::abs(zeta.imag()) <= reg.zeta_im_clamp - shrink(reg.zeta_im_clamp);
}

Cx sample_base(Rng& rng, const SampleRegion& reg) {
  if (reg.kind == SampleRegion::Kind::fiber_only) return Cx(0.0);
  for (int i = 0; i < kMaxDraws; ++i) {
    Cx w;
    if (reg.kind == SampleRegion::Kind::collar_region) {
      w = rng.rect(-2.0, 2.0, -2.0, 2.0);
      if (!geom::in_region(reg.region, w, 1e-3)) continue;
    } else {
      double mx = shrink(reg.x1 - reg.x0);
      double my = shrink(reg.half_band);
      w = rng.rect(reg.x0 + mx, reg.x1 - mx, -reg.half_band + my,
                   reg.half_band - my);
    }
    if (clamp_ok(reg, w)) return w;
  }
  throw Error("sampling region too thin: " + reg.label);
}

/* Every parameterized factor along a stored path lives in the chart the
 * record samples, so one coordinate serves the whole composite; constant
 * factors ignore it. */
FiberPoint apply_path(const ExtendedBundle& ext,
                      const std::vector<PathStep>& path, Cx w,
                      const FiberPoint& z) {
  FiberPoint cur = z;
  for (const PathStep& st : path) {
    const ParamWord& word =
        st.fixed ? *st.fixed : ext.transitions.at(st.transition).word;
    cur = st.inverted ? word.apply_inverse(w, cur) : word.apply(w, cur);
  }
  return cur;
}

double record_residual(const ExtendedBundle& ext, const CheckRecord& rec,
                       Rng& rng, int fiber_dim) {
  switch (rec.metric) {
    case CheckRecord::Metric::path_agreement: {
      Cx w = sample_base(rng, rec.region);
      FiberPoint z = rng.polydisc(fiber_dim, kFiberRadius);
      FiberPoint p1 = apply_path(ext, rec.path1, w, z);
      FiberPoint p2 = apply_path(ext, rec.path2, w, z);
      if (!all_finite(p1) || !all_finite(p2))
        return std::numeric_limits<double>::infinity();
      return relative_residual(p1, p2);
    }
    case CheckRecord::Metric::cousin_sum: {
      Cx w = sample_base(rng, rec.region);
      Cx sum = rec.cousin_a.eval(w) + rec.cousin_b.eval(w);
      double res = std::abs(sum - rec.cousin_target);
      return std::isfinite(res) ? res
                                : std::numeric_limits<double>::infinity();
    }
    case CheckRecord::Metric::flow_group_law: {
      Cx s = rng.disc(kTimeRadius);
      Cx t = rng.disc(kTimeRadius);
      FiberPoint z = rng.polydisc(fiber_dim, kFiberRadius);
      const aut::OneParameterFlow& f = *rec.flow;
      FiberPoint lhs = f.apply(s + t, z);
      FiberPoint rhs = f.apply(s, f.apply(t, z));
      if (!all_finite(lhs) || !all_finite(rhs))
        return std::numeric_limits<double>::infinity();
      return relative_residual(lhs, rhs);
    }
  }
  throw Error("unreachable record metric");
}

}  // namespace

VerificationReport verify_cocycle(const ExtendedBundle& ext, int samples,
                                  double tol, std::uint64_t seed) {
  if (samples < 1) throw Error("verify_cocycle needs at least one sample");
  VerificationReport rep;
  rep.seed = seed;
  rep.samples = samples;
  rep.tolerance = tol;
  rep.scope_note =
      "Checks the gluing identities of the extension numerically; whether "
      "the extended bundle is holomorphically trivial, and whether its "
      "total space is Stein, are outside the scope of this tool.";
  rep.outer_convention =
      "The outer region is read in the w = outer_radius / zeta chart with "
      "monodromy G_0 after inverse of G_N; an outer_override in the input "
      "replaces this default.";
  rep.overall_pass = true;
  rep.regions = ext.regions;
  rep.degree_scan = scan_degrees(ext);

  int fiber_dim = ext.spec.fiber_dim;
  for (const CheckRecord& rec : ext.checks) {
    Rng rng(seed, rec.name);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i)
      worst = std::max(worst, record_residual(ext, rec, rng, fiber_dim));
    RecordResult rr;
    rr.name = rec.name;
    rr.where = rec.where;
    rr.samples = samples;
    rr.max_residual = worst;
    rr.tolerance = rec.fixed_tolerance.value_or(tol);
    rr.pass = worst <= rr.tolerance;
    if (!rr.pass) rep.overall_pass = false;
    rep.records.push_back(std::move(rr));
  }
  return rep;
}

namespace {

std::string slot_name(const ExtendedBundle& ext, int t, int f,
                      const std::string& detail) {
  const Transition& tr = ext.transitions[static_cast<std::size_t>(t)];
  return tr.from + "->" + tr.to + " factor " + std::to_string(f) + " " +
         detail;
}

void push_poly_slots(std::vector<CoefficientSlot>& out,
                     const ExtendedBundle& ext, int t, int f, int base,
                     const aut::Polynomial& q, const std::string& what) {
  int i = 0;
  for (const auto& term : q.terms()) {
    (void)term;
    out.push_back({t, f, base + i,
                   slot_name(ext, t, f, what + " term " + std::to_string(i))});
    ++i;
  }
}

void push_matrix_slots(std::vector<CoefficientSlot>& out,
                       const ExtendedBundle& ext, int t, int f, int base,
                       const Eigen::MatrixXcd& m, const std::string& what) {
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out.push_back({t, f, base + static_cast<int>(r * m.cols() + c),
                     slot_name(ext, t, f,
                               what + "(" + std::to_string(r) + "," +
                                   std::to_string(c) + ")")});
}

// Coefficient count of the flow parameters; time-function slots follow.
int flow_param_count(const aut::OneParameterFlow& flow) {
  return std::visit(
      [](const auto& fl) -> int {
        using T = std::decay_t<decltype(fl)>;
        if constexpr (std::is_same_v<T, aut::ShearFlow> ||
                      std::is_same_v<T, aut::OverShearFlow>)
          return static_cast<int>(fl.q.terms().size());
        else
          return static_cast<int>(fl.generator.rows() * fl.generator.cols());
      },
      flow.data());
}

aut::Polynomial perturb_poly(const aut::Polynomial& q, int idx, double delta) {
  aut::Polynomial out(q.nvars());
  int i = 0;
  for (const auto& [exps, coeff] : q.terms()) {
    out.add_term(exps, i == idx ? coeff + delta : coeff);
    ++i;
  }
  return out;
}

}  // namespace

std::vector<CoefficientSlot> enumerate_slots(const ExtendedBundle& ext) {
  std::vector<CoefficientSlot> out;
  for (int t = 0; t < static_cast<int>(ext.transitions.size()); ++t) {
    const auto& factors = ext.transitions[static_cast<std::size_t>(t)]
                              .word.factors();
    for (int f = 0; f < static_cast<int>(factors.size()); ++f) {
      const ParamFactor& pf = factors[static_cast<std::size_t>(f)];
      if (const auto* cf = std::get_if<ConstFactor>(&pf)) {
        std::visit(
            [&](const auto& e) {
              using T = std::decay_t<decltype(e)>;
              if constexpr (std::is_same_v<T, aut::Affine>) {
                push_matrix_slots(out, ext, t, f, 0, e.matrix, "matrix");
                int n2 = static_cast<int>(e.matrix.rows() * e.matrix.cols());
                for (int i = 0; i < static_cast<int>(e.translation.size());
                     ++i)
                  out.push_back(
                      {t, f, n2 + i,
                       slot_name(ext, t, f,
                                 "translation[" + std::to_string(i) + "]")});
              } else {
                push_poly_slots(out, ext, t, f, 0, e.q,
                                std::is_same_v<T, aut::Shear> ? "shear"
                                                              : "overshear");
              }
            },
            cf->map.data());
      } else {
        const auto& ff = std::get<FlowFactor>(pf);
        std::visit(
            [&](const auto& fl) {
              using T = std::decay_t<decltype(fl)>;
              if constexpr (std::is_same_v<T, aut::ShearFlow>)
                push_poly_slots(out, ext, t, f, 0, fl.q, "flow shear");
              else if constexpr (std::is_same_v<T, aut::OverShearFlow>)
                push_poly_slots(out, ext, t, f, 0, fl.q, "flow overshear");
              else
                push_matrix_slots(out, ext, t, f, 0, fl.generator,
                                  "flow generator");
            },
            ff.flow.data());
        int base = flow_param_count(ff.flow);
        out.push_back({t, f, base, slot_name(ext, t, f, "time constant")});
        out.push_back({t, f, base + 1, slot_name(ext, t, f, "time linear")});
        for (int l = 0; l < static_cast<int>(ff.time.logs.size()); ++l)
          out.push_back({t, f, base + 2 + l,
                         slot_name(ext, t, f,
                                   "time log " + std::to_string(l))});
      }
    }
  }
  return out;
}

ExtendedBundle perturb_slot(const ExtendedBundle& ext,
                            const CoefficientSlot& slot, double delta) {
  ExtendedBundle out = ext;
  auto& word = out.transitions.at(static_cast<std::size_t>(slot.transition))
                   .word;
  ParamFactor& pf =
      word.mutable_factors().at(static_cast<std::size_t>(slot.factor));
  int idx = slot.index;

  if (auto* cf = std::get_if<ConstFactor>(&pf)) {
    int dim = cf->map.dim();
    std::visit(
        [&](const auto& e) {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, aut::Affine>) {
            Eigen::MatrixXcd m = e.matrix;
            Eigen::VectorXcd b = e.translation;
            int n = static_cast<int>(m.rows());
            if (idx < n * n)
              m(idx / n, idx % n) += delta;
            else
              b(idx - n * n) += delta;
            cf->map = aut::ElementaryAutomorphism::affine(std::move(m),
                                                          std::move(b));
          } else if constexpr (std::is_same_v<T, aut::Shear>) {
            cf->map = aut::ElementaryAutomorphism::shear(
                dim, e.axis, perturb_poly(e.q, idx, delta));
          } else {
            cf->map = aut::ElementaryAutomorphism::over_shear(
                dim, e.axis, perturb_poly(e.q, idx, delta));
          }
        },
        cf->map.data());
    return out;
  }

  auto& ff = std::get<FlowFactor>(pf);
  int params = flow_param_count(ff.flow);
  if (idx >= params) {
    int k = idx - params;
    if (k == 0)
      ff.time.constant += delta;
    else if (k == 1)
      ff.time.linear += delta;
    else
      ff.time.logs.at(static_cast<std::size_t>(k - 2)).coefficient += delta;
    return out;
  }
  int dim = ff.flow.dim();
  std::visit(
      [&](const auto& fl) {
        using T = std::decay_t<decltype(fl)>;
        if constexpr (std::is_same_v<T, aut::ShearFlow>) {
          ff.flow = aut::OneParameterFlow(
              dim, aut::ShearFlow{fl.axis, perturb_poly(fl.q, idx, delta)});
        } else if constexpr (std::is_same_v<T, aut::OverShearFlow>) {
          ff.flow = aut::OneParameterFlow(
              dim,
              aut::OverShearFlow{fl.axis, perturb_poly(fl.q, idx, delta)});
        } else {
          Eigen::MatrixXcd g = fl.generator;
          int cols = static_cast<int>(g.cols());
          g(idx / cols, idx % cols) += delta;
          if constexpr (std::is_same_v<T, aut::LinearFlow>)
            ff.flow = aut::OneParameterFlow(
                dim, aut::LinearFlow{std::move(g), fl.branch_adjusted});
          else
            ff.flow = aut::OneParameterFlow(
                dim, aut::AffineFlow{std::move(g), fl.branch_adjusted});
        }
      },
      ff.flow.data());
  return out;
}

}  // namespace bundlex::ext
