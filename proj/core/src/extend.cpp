#include "bundlex/extend.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "bundlex/errors.hpp"

namespace bundlex::ext {

namespace {

constexpr int kPreSamples = 100;
constexpr double kPreTol = 1e-9;
constexpr double kCousinTol = 1e-12;

aut::AutomorphismWord quotient_word(const HoleGluing& g) {
  return aut::concat(aut::invert_word(g.t0), g.t1);
}

bool time_one_matches(const HoleGluing& g, const aut::OneParameterFlow& f) {
  aut::AutomorphismWord one(g.t0.dim());
  one.push_back(aut::flow_at(f, 1.0));
  return aut::words_agree(one, quotient_word(g), kPreSamples, kPreTol);
}

/* phi_plus = t0^{-1} ∘ S^{lplus}, phi_minus = S^{-lminus}. An empty e_word
 * means the zero flow; its factor is dropped so trivial gluing data stays
 * structurally trivial. */
Case1Filling make_filling(const HoleGluing& g, const aut::OneParameterFlow& f,
                          const geom::CousinData& cousin) {
  const int dim = g.t0.dim();
  Case1Filling fill{ParamWord(dim), ParamWord(dim)};
  if (!g.e_word.empty()) fill.phi_plus.push_flow(f, cousin.lplus);
  fill.phi_plus.append_word(aut::invert_word(g.t0));
  if (!g.e_word.empty()) fill.phi_minus.push_flow(f, cousin.lminus.negated());
  return fill;
}

std::pair<double, double> arc_interval(const SubHoleLayout& lay, int p) {
  const int j = lay.k - p;  // geometric gap index, 0 = leftmost
  const double lo =
      (j == 0) ? -2.0 : lay.centers[static_cast<std::size_t>(j - 1)] + lay.rho;
  const double hi =
      (j == lay.k) ? 2.0 : lay.centers[static_cast<std::size_t>(j)] - lay.rho;
  return {lo, hi};
}

}  // namespace

aut::OneParameterFlow case1_flow(const HoleGluing& g, int fiber_dim) {
  if (g.e_word.empty())
    return aut::OneParameterFlow(fiber_dim,
                                 aut::ShearFlow{0, aut::Polynomial(fiber_dim)});
  if (g.e_word.size() != 1)
    throw Error("single-flow filling needs a gluing with at most one factor");
  return aut::recognize_flow(g.e_word.factors()[0]);
}

Case1Filling extend_case1(const HoleGluing& g, const aut::OneParameterFlow& f,
                          const geom::CollarChart&,
                          const geom::CousinData& cousin) {
  if (!time_one_matches(g, f))
    throw NotTimeOneMap(
        "the time-1 map of the flow does not reproduce t1 ∘ t0^{-1} on "
        "sampled fiber points");
  return make_filling(g, f, cousin);
}

SubHoleLayout SubHoleLayout::make(int k) {
  SubHoleLayout lay;
  lay.k = k;
  lay.len = 2.0 / k;
  lay.rho = lay.len / 4.0;
  lay.centers.reserve(static_cast<std::size_t>(k));
  for (int s = 1; s <= k; ++s)
    lay.centers.push_back(-1.0 + (2.0 * s - 1.0) / k);
  return lay;
}

RefinedHole refine_hole(const HoleGluing& g, const geom::CollarChart&) {
  const int k = static_cast<int>(g.e_word.size());
  if (k < 2) throw Error("collar refinement needs at least two factors");
  RefinedHole out;
  out.layout = SubHoleLayout::make(k);
  out.arc_words.reserve(static_cast<std::size_t>(k) + 1);
  out.arc_words.push_back(g.t0);
  for (int p = 1; p <= k; ++p) {
    aut::AutomorphismWord w = out.arc_words.back();
    w.push_back(g.e_word.factors()[static_cast<std::size_t>(p - 1)]);
    out.arc_words.push_back(std::move(w));
  }
  for (int p = 1; p <= k; ++p) {
    const auto& factor = g.e_word.factors()[static_cast<std::size_t>(p - 1)];
    (void)aut::recognize_flow(factor);  // surface NoKnownFlow before building
    out.sub_gluings.push_back(
        HoleGluing{out.arc_words[static_cast<std::size_t>(p - 1)],
                   out.arc_words[static_cast<std::size_t>(p)],
                   aut::AutomorphismWord(g.t0.dim(), {factor})});
  }
  return out;
}

namespace {

/* Everything a single-flow filling needs to know about the collar it
 * fills: the two neighbor charts, the stored crossing edges between them,
 * the fill-edge words with their home regions, and how to assemble
 * t1 ∘ t0^{-1} from stored edges. */
struct FillSite {
  std::string prefix;       // record-name prefix ("hole0", "outer/sub2", ...)
  std::string place;        // prose location for `where` fields
  std::string fill_chart;   // new chart name
  std::string coord;        // coordinate label of the collar
  geom::CoordMap coord_map;
  std::string chart_up;     // source of the crossing edges
  std::string chart_down;   // target of the crossing edges
  int cross_right = -1, cross_left = -1;
  ParamWord word_up, word_down;  // fill -> chart_up / chart_down
  geom::CollarRegion region_up = geom::CollarRegion::vplus;
  geom::CollarRegion region_down = geom::CollarRegion::vminus;
  std::vector<PathStep> time_one_path;
  double clamp = 0.0;  // |Im zeta| bound for the crossing-band records
  // False only for an empty gluing: no flow is distributed, so the
  // splitting-function records would be vacuous.
  bool has_flow = true;

  FillSite(int dim) : word_up(dim), word_down(dim) {}
};

struct Builder {
  const BundleSpec& spec;
  BuildMode mode;
  ExtendedBundle out;
  int dim;
  int n_holes;
  std::vector<int> band_edge;

  Builder(const BundleSpec& s, BuildMode m)
      : spec(s),
        mode(m),
        dim(s.fiber_dim),
        n_holes(static_cast<int>(s.domain.holes.size())) {
    out.spec = s;
    double min_r = 0.0;
    for (const auto& h : s.domain.holes)
      min_r = (min_r == 0.0) ? h.radius : std::min(min_r, h.radius);
    out.delta_glob =
        n_holes > 0 ? 0.45 * min_r : s.domain.outer_radius / 4.0;
  }

  void add_chart(std::string name, geom::CoordMap map) {
    out.charts.push_back(ChartInfo{std::move(name), std::move(map)});
  }

  int add_transition(Transition t) {
    out.transitions.push_back(std::move(t));
    return static_cast<int>(out.transitions.size()) - 1;
  }

  void require_consistent(const HoleGluing& g, const std::string& what) {
    if (mode == BuildMode::strict && !gluing_consistent(g))
      throw Error("the factorization for " + what +
                  " does not compose to its monodromy (sampled check)");
  }

  void require_time_one(const HoleGluing& g, const aut::OneParameterFlow& f,
                        const std::string& what) {
    if (mode == BuildMode::strict && !time_one_matches(g, f))
      throw NotTimeOneMap("the recognized flow of " + what +
                          " does not reach t1 ∘ t0^{-1} at time 1");
  }

  void build() {
    add_chart("lambda_plus", geom::CoordMap{});
    add_chart("lambda_minus", geom::CoordMap{});
    add_bands();
    for (int h = 0; h < n_holes; ++h) build_hole(h);
    build_outer();
  }

  void add_bands() {
    for (int p = 0; p <= n_holes; ++p) {
      auto [lo, hi] = geom::band_interval(spec.domain, p);
      Transition t{"lambda_plus", "lambda_minus",
                   ParamWord::from_word(spec.gap_words[static_cast<std::size_t>(p)]),
                   SampleRegion::band("base", geom::CoordMap{}, lo, hi,
                                      out.delta_glob, 0.0,
                                      "gap band " + std::to_string(p)),
                   "gap word " + std::to_string(p)};
      band_edge.push_back(add_transition(std::move(t)));
    }
  }

  /* Records shared by every single-flow filling: the two crossing-band
   * identities, the splitting-function sums, the time-1 reconstruction of
   * the gluing quotient, and the group law of the flow itself. */
  void attach_case1(const FillSite& site, const aut::OneParameterFlow& f,
                    const geom::CousinData& cousin) {
    add_chart(site.fill_chart, site.coord_map);
    const int e_up = add_transition(
        Transition{site.fill_chart, site.chart_up, site.word_up,
                   SampleRegion::collar(site.coord, site.coord_map,
                                        site.region_up, 0.0,
                                        "fill overlap with " + site.chart_up),
                   site.place + " filling"});
    const int e_down = add_transition(
        Transition{site.fill_chart, site.chart_down, site.word_down,
                   SampleRegion::collar(site.coord, site.coord_map,
                                        site.region_down, 0.0,
                                        "fill overlap with " + site.chart_down),
                   site.place + " filling"});

    CheckRecord right;
    right.name = site.prefix + "/identity_right";
    right.where = "right crossing band of " + site.place;
    right.region =
        SampleRegion::collar(site.coord, site.coord_map,
                             geom::CollarRegion::omega, site.clamp, "omega");
    right.path1 = {PathStep::fwd(e_up), PathStep::fwd(site.cross_right)};
    right.path2 = {PathStep::fwd(e_down)};
    out.checks.push_back(std::move(right));

    CheckRecord left;
    left.name = site.prefix + "/identity_left";
    left.where = "left crossing band of " + site.place;
    left.region = SampleRegion::collar(site.coord, site.coord_map,
                                       geom::CollarRegion::omega_prime,
                                       site.clamp, "omegaPrime");
    left.path1 = {PathStep::fwd(e_up), PathStep::fwd(site.cross_left)};
    left.path2 = {PathStep::fwd(e_down)};
    out.checks.push_back(std::move(left));

    if (site.has_flow) {
      CheckRecord cr;
      cr.name = site.prefix + "/cousin_right";
      cr.where = "right crossing band of " + site.place;
      cr.region = SampleRegion::collar(site.coord, site.coord_map,
                                       geom::CollarRegion::omega, 0.0, "omega");
      cr.metric = CheckRecord::Metric::cousin_sum;
      cr.cousin_a = cousin.lplus;
      cr.cousin_b = cousin.lminus;
      cr.cousin_target = 0.0;
      cr.fixed_tolerance = kCousinTol;
      out.checks.push_back(std::move(cr));

      CheckRecord cl;
      cl.name = site.prefix + "/cousin_left";
      cl.where = "left crossing band of " + site.place;
      cl.region = SampleRegion::collar(site.coord, site.coord_map,
                                       geom::CollarRegion::omega_prime, 0.0,
                                       "omegaPrime");
      cl.metric = CheckRecord::Metric::cousin_sum;
      cl.cousin_a = cousin.lplus;
      cl.cousin_b = cousin.lminus;
      cl.cousin_target = -1.0;
      cl.fixed_tolerance = kCousinTol;
      out.checks.push_back(std::move(cl));
    }

    CheckRecord t1;
    t1.name = site.prefix + "/flow_time_one";
    t1.where = "gluing quotient of " + site.place;
    t1.region = SampleRegion::fiber_only_region("fiber samples");
    ParamWord one(dim);
    one.push_flow(f, geom::BranchFunction::constant_fn(1.0));
    t1.path1 = {PathStep::fixed_word(std::move(one))};
    t1.path2 = site.time_one_path;
    out.checks.push_back(std::move(t1));

    CheckRecord gl;
    gl.name = site.prefix + "/flow_group_law";
    gl.where = "flow of " + site.place;
    gl.region = SampleRegion::fiber_only_region("complex times and fiber");
    gl.metric = CheckRecord::Metric::flow_group_law;
    gl.flow = f;
    out.checks.push_back(std::move(gl));
  }

  void build_hole(int h) {
    const HoleGluing g = hole_gluing(spec, h);
    const std::string name = "hole" + std::to_string(h);
    require_consistent(g, name);
    const geom::CollarChart collar = geom::hole_collar(spec.domain, h);
    const geom::CousinData cousin = geom::cousin_solve(collar);
    const int k = static_cast<int>(g.e_word.size());

    if (k <= 1) {
      const aut::OneParameterFlow f = case1_flow(g, dim);
      require_time_one(g, f, name);
      const Case1Filling fill = make_filling(g, f, cousin);

      FillSite site(dim);
      site.prefix = name;
      site.place = "the " + name + " collar";
      site.fill_chart = name + "_fill";
      site.coord = collar.name;
      site.coord_map = collar.map;
      site.chart_up = "lambda_plus";
      site.chart_down = "lambda_minus";
      site.cross_right = band_edge[static_cast<std::size_t>(h + 1)];
      site.cross_left = band_edge[static_cast<std::size_t>(h)];
      site.word_up = fill.phi_plus;
      site.word_down = fill.phi_minus;
      site.region_up = geom::CollarRegion::vplus;
      site.region_down = geom::CollarRegion::vminus;
      site.time_one_path = {PathStep::inv(site.cross_right),
                            PathStep::fwd(site.cross_left)};
      site.clamp = out.delta_glob;
      site.has_flow = !g.e_word.empty();
      attach_case1(site, f, cousin);
      out.regions.push_back(RegionSummary{name, "case1", 0});
    } else {
      build_general(g, collar, name, /*flipped=*/false,
                    band_edge[static_cast<std::size_t>(h + 1)],
                    band_edge[static_cast<std::size_t>(h)],
                    {PathStep::fwd(band_edge[static_cast<std::size_t>(h)])});
      out.regions.push_back(RegionSummary{name, "general", k});
    }
  }

  void build_outer() {
    const HoleGluing g = outer_gluing(spec);
    require_consistent(g, "outer");
    const geom::CollarChart collar = geom::outer_collar(spec.domain);
    const geom::CousinData cousin = geom::cousin_solve(collar);
    const int k = static_cast<int>(g.e_word.size());
    const int right = band_edge[static_cast<std::size_t>(n_holes)];
    const int left = band_edge[0];
    // t1 = G_N ∘ G_0^{-1} ∘ G_N out of stored band edges.
    const std::vector<PathStep> t1_path = {
        PathStep::fwd(right), PathStep::inv(left), PathStep::fwd(right)};

    if (k <= 1) {
      const aut::OneParameterFlow f = case1_flow(g, dim);
      require_time_one(g, f, "outer");

      /* The w = R/zeta chart swaps the halves: the filling's upper collar
       * edge lands in lambda_minus via the G_N frame tie (which cancels
       * against t0 = G_N), the lower one in lambda_plus through G_N^{-1}. */
      ParamWord to_minus(dim), to_plus(dim);
      if (!g.e_word.empty()) to_minus.push_flow(f, cousin.lplus);
      if (!g.e_word.empty()) to_plus.push_flow(f, cousin.lminus.negated());
      to_plus.append_word(aut::invert_word(g.t0));

      FillSite site(dim);
      site.prefix = "outer";
      site.place = "the outer collar";
      site.fill_chart = "outer_fill";
      site.coord = collar.name;
      site.coord_map = collar.map;
      site.chart_up = "lambda_plus";
      site.chart_down = "lambda_minus";
      site.cross_right = right;
      site.cross_left = left;
      site.word_up = to_plus;
      site.word_down = to_minus;
      site.region_up = geom::CollarRegion::vminus;
      site.region_down = geom::CollarRegion::vplus;
      site.time_one_path = {PathStep::inv(right), PathStep::fwd(right),
                            PathStep::inv(left), PathStep::fwd(right)};
      site.clamp = out.delta_glob;
      site.has_flow = !g.e_word.empty();
      attach_case1(site, f, cousin);
      out.regions.push_back(RegionSummary{"outer", "case1", 0});
    } else {
      build_general(g, collar, "outer", /*flipped=*/true, right, left,
                    t1_path);
      out.regions.push_back(RegionSummary{"outer", "general", k});
    }
  }

  /* Refines the collar into k sub-holes. The two half covers W+/W- carry
   * the cumulative words on the real arcs between sub-discs and tie to
   * the ambient halves over the annulus; each sub-hole is then a
   * single-factor gluing filled exactly like a top-level hole. flipped
   * marks the outer chart, where W+ adjoins lambda_minus through t0 = G_N
   * instead of lambda_plus through the identity. */
  void build_general(const HoleGluing& g, const geom::CollarChart& collar,
                     const std::string& name, bool flipped, int cross_right,
                     int cross_left, std::vector<PathStep> t1_path) {
    const RefinedHole ref = refine_hole(g, collar);
    const int k = ref.layout.k;
    const std::string wp = name + "_wplus", wm = name + "_wminus";
    add_chart(wp, collar.map);
    add_chart(wm, collar.map);

    int wp_edge, wm_edge;
    if (!flipped) {
      wp_edge = add_transition(Transition{
          wp, "lambda_plus", ParamWord(dim),
          SampleRegion::collar(collar.name, collar.map,
                               geom::CollarRegion::annulus_upper, 0.0,
                               "upper half annulus"),
          name + " refinement cover, upper half"});
      wm_edge = add_transition(Transition{
          wm, "lambda_minus", ParamWord(dim),
          SampleRegion::collar(collar.name, collar.map,
                               geom::CollarRegion::annulus_lower, 0.0,
                               "lower half annulus"),
          name + " refinement cover, lower half"});
    } else {
      wp_edge = add_transition(Transition{
          wp, "lambda_minus", ParamWord::from_word(g.t0),
          SampleRegion::collar(collar.name, collar.map,
                               geom::CollarRegion::annulus_upper, 0.0,
                               "upper half annulus"),
          name + " refinement cover, upper half"});
      wm_edge = add_transition(Transition{
          wm, "lambda_plus", ParamWord::from_word(aut::invert_word(g.t0)),
          SampleRegion::collar(collar.name, collar.map,
                               geom::CollarRegion::annulus_lower, 0.0,
                               "lower half annulus"),
          name + " refinement cover, lower half"});
    }

    std::vector<int> arc(static_cast<std::size_t>(k) + 1);
    for (int p = 0; p <= k; ++p) {
      auto [lo, hi] = arc_interval(ref.layout, p);
      arc[static_cast<std::size_t>(p)] = add_transition(Transition{
          wp, wm,
          ParamWord::from_word(ref.arc_words[static_cast<std::size_t>(p)]),
          SampleRegion::band(collar.name, collar.map, lo, hi,
                             ref.layout.rho / 2.0, 0.0,
                             "arc " + std::to_string(p)),
          name + " arc " + std::to_string(p) + " cumulative word"});
    }

    /* Crossing the refinement cover on the outermost arcs must reproduce
     * the ambient gap transitions. */
    const std::vector<PathStep> through_right =
        flipped ? std::vector<PathStep>{PathStep::inv(wm_edge),
                                        PathStep::inv(arc[0]),
                                        PathStep::fwd(wp_edge)}
                : std::vector<PathStep>{PathStep::inv(wp_edge),
                                        PathStep::fwd(arc[0]),
                                        PathStep::fwd(wm_edge)};
    const std::vector<PathStep> through_left =
        flipped
            ? std::vector<PathStep>{PathStep::inv(wm_edge),
                                    PathStep::inv(arc[static_cast<std::size_t>(k)]),
                                    PathStep::fwd(wp_edge)}
            : std::vector<PathStep>{PathStep::inv(wp_edge),
                                    PathStep::fwd(arc[static_cast<std::size_t>(k)]),
                                    PathStep::fwd(wm_edge)};

    CheckRecord rr;
    rr.name = name + "/restriction_right";
    rr.where = "annulus right of the " + name + " sub-holes";
    rr.region = SampleRegion::band(collar.name, collar.map, 1.05, 1.9,
                                   ref.layout.rho / 2.0, out.delta_glob,
                                   "right annulus band");
    rr.path1 = {PathStep::fwd(cross_right)};
    rr.path2 = through_right;
    out.checks.push_back(std::move(rr));

    CheckRecord rl;
    rl.name = name + "/restriction_left";
    rl.where = "annulus left of the " + name + " sub-holes";
    rl.region = SampleRegion::band(collar.name, collar.map, -1.9, -1.05,
                                   ref.layout.rho / 2.0, out.delta_glob,
                                   "left annulus band");
    rl.path1 = {PathStep::fwd(cross_left)};
    rl.path2 = through_left;
    out.checks.push_back(std::move(rl));

    for (int p = 1; p <= k; ++p) {
      CheckRecord tp;
      tp.name = name + "/telescoping_" + std::to_string(p);
      tp.where = "arcs " + std::to_string(p - 1) + " and " +
                 std::to_string(p) + " of " + name;
      tp.region = SampleRegion::fiber_only_region("fiber samples");
      tp.path1 = {PathStep::fwd(arc[static_cast<std::size_t>(p)])};
      aut::AutomorphismWord e_p(dim);
      e_p.push_back(g.e_word.factors()[static_cast<std::size_t>(p - 1)]);
      tp.path2 = {PathStep::fwd(arc[static_cast<std::size_t>(p - 1)]),
                  PathStep::fixed_word(ParamWord::from_word(e_p))};
      out.checks.push_back(std::move(tp));
    }

    CheckRecord fe;
    fe.name = name + "/factorization_end";
    fe.where = "last arc of " + name + " against the ambient t1";
    fe.region = SampleRegion::fiber_only_region("fiber samples");
    fe.path1 = {PathStep::fwd(arc[static_cast<std::size_t>(k)])};
    fe.path2 = std::move(t1_path);
    out.checks.push_back(std::move(fe));

    for (int p = 1; p <= k; ++p) {
      const HoleGluing& sub = ref.sub_gluings[static_cast<std::size_t>(p - 1)];
      const std::string sub_coord = name + "_sub" + std::to_string(p);
      const geom::CoordMap sub_map =
          geom::CoordMap::affine(ref.layout.center_for(p), ref.layout.rho)
              .then(collar.map);
      const geom::CousinData sub_cousin =
          geom::cousin_solve(geom::CollarChart{sub_coord, sub_map});
      const aut::OneParameterFlow f = case1_flow(sub, dim);
      require_time_one(sub, f, sub_coord);
      const Case1Filling fill = make_filling(sub, f, sub_cousin);

      FillSite site(dim);
      site.prefix = name + "/sub" + std::to_string(p);
      site.place = "sub-hole " + std::to_string(p) + " of " + name;
      site.fill_chart = sub_coord + "_fill";
      site.coord = sub_coord;
      site.coord_map = sub_map;
      site.chart_up = wp;
      site.chart_down = wm;
      site.cross_right = arc[static_cast<std::size_t>(p - 1)];
      site.cross_left = arc[static_cast<std::size_t>(p)];
      site.word_up = fill.phi_plus;
      site.word_down = fill.phi_minus;
      site.region_up = geom::CollarRegion::vplus;
      site.region_down = geom::CollarRegion::vminus;
      site.time_one_path = {PathStep::inv(site.cross_right),
                            PathStep::fwd(site.cross_left)};
      site.clamp = 0.0;
      attach_case1(site, f, sub_cousin);
    }
  }
};

}  // namespace

ExtendedBundle extend_bundle(const BundleSpec& spec, BuildMode mode) {
  validate_spec(spec);
  Builder b(spec, mode);
  b.build();
  return std::move(b.out);
}

DegreeScan scan_degrees(const ExtendedBundle& ext) {
  DegreeScan scan;
  auto bump = [&scan](int d) {
    scan.max_polynomial_degree = std::max(scan.max_polynomial_degree, d);
  };
  auto poly_degree = [](const aut::Polynomial& q) {
    return q.is_zero() ? 0 : std::max(1, q.degree());
  };
  for (const Transition& t : ext.transitions) {
    for (const ParamFactor& f : t.word.factors()) {
      if (const auto* c = std::get_if<ConstFactor>(&f)) {
        if (c->map.is_affine()) {
          bump(1);
        } else if (c->map.is_shear()) {
          bump(poly_degree(std::get<aut::Shear>(c->map.data()).q));
        } else {
          scan.overshear_present = true;
          bump(poly_degree(std::get<aut::OverShear>(c->map.data()).q));
        }
      } else {
        const auto& fl = std::get<FlowFactor>(f);
        if (const auto* sf = std::get_if<aut::ShearFlow>(&fl.flow.data())) {
          bump(poly_degree(sf->q));
        } else if (const auto* of =
                       std::get_if<aut::OverShearFlow>(&fl.flow.data())) {
          scan.overshear_present = true;
          bump(poly_degree(of->q));
        } else {
          bump(1);
        }
      }
    }
  }
  return scan;
}

}  // namespace bundlex::ext
