#include "bundlex/serialize.hpp"

#include <json.hpp>

#include "bundlex/errors.hpp"

namespace bundlex::io {

namespace {

using nlohmann::json;

json cx_json(Cx c) { return json::array({c.real(), c.imag()}); }

Cx cx_parse(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("complex numbers serialize as [re, im]");
  return Cx(j[0].get<double>(), j[1].get<double>());
}

json poly_json(const aut::Polynomial& q) {
  json terms = json::array();
  for (const auto& [exps, coeff] : q.terms())
    terms.push_back(
        json{{"exponents", exps}, {"coefficient", cx_json(coeff)}});
  return json{{"variables", q.nvars()}, {"terms", terms}};
}

aut::Polynomial poly_parse(const json& j) {
  aut::Polynomial q(j.at("variables").get<int>());
  for (const auto& t : j.at("terms")) {
    auto exps = t.at("exponents").get<std::vector<unsigned>>();
    if (static_cast<int>(exps.size()) != q.nvars())
      throw ParseError("term exponent tuple length must equal variables");
    q.add_term(exps, cx_parse(t.at("coefficient")));
  }
  return q;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cx_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXcd matrix_parse(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a row list");
  const auto nrows = static_cast<Eigen::Index>(j.size());
  const auto ncols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(nrows, ncols);
  for (Eigen::Index r = 0; r < nrows; ++r) {
    if (static_cast<Eigen::Index>(j[r].size()) != ncols)
      throw ParseError("matrix rows must have equal length");
    for (Eigen::Index c = 0; c < ncols; ++c)
      m(r, c) = cx_parse(j[r][static_cast<std::size_t>(c)]);
  }
  return m;
}

json elem_json(const aut::ElementaryAutomorphism& e) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, aut::Affine>) {
          json b = json::array();
          for (Eigen::Index i = 0; i < v.translation.size(); ++i)
            b.push_back(cx_json(v.translation(i)));
          return json{{"type", "affine"},
                      {"matrix", matrix_json(v.matrix)},
                      {"translation", b}};
        } else {
          return json{
              {"type", std::is_same_v<T, aut::Shear> ? "shear" : "overshear"},
              {"axis", v.axis},
              {"polynomial", poly_json(v.q)}};
        }
      },
      e.data());
}

aut::ElementaryAutomorphism elem_parse(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "affine") {
    Eigen::MatrixXcd m = matrix_parse(j.at("matrix"));
    const auto& bt = j.at("translation");
    Eigen::VectorXcd b(static_cast<Eigen::Index>(bt.size()));
    for (Eigen::Index i = 0; i < b.size(); ++i)
      b(i) = cx_parse(bt[static_cast<std::size_t>(i)]);
    return aut::ElementaryAutomorphism::affine(std::move(m), std::move(b));
  }
  if (type == "shear" || type == "overshear") {
    aut::Polynomial q = poly_parse(j.at("polynomial"));
    const int axis = j.at("axis").get<int>();
    return type == "shear"
               ? aut::ElementaryAutomorphism::shear(q.nvars(), axis, std::move(q))
               : aut::ElementaryAutomorphism::over_shear(q.nvars(), axis,
                                                         std::move(q));
  }
  throw ParseError("unknown elementary type \"" + type + "\"");
}

json word_json(const aut::AutomorphismWord& w) {
  json factors = json::array();
  for (const auto& f : w.factors()) factors.push_back(elem_json(f));
  return json{{"order", "application"},
              {"dimension", w.dim()},
              {"factors", std::move(factors)}};
}

aut::AutomorphismWord word_parse(const json& j) {
  if (j.at("order").get<std::string>() != "application")
    throw ParseError("words must declare \"order\": \"application\"");
  aut::AutomorphismWord w(j.at("dimension").get<int>());
  for (const auto& f : j.at("factors")) {
    aut::ElementaryAutomorphism e = elem_parse(f);
    if (e.dim() != w.dim())
      throw ParseError("word factor dimension differs from the word's");
    w.push_back(std::move(e));
  }
  return w;
}

json spec_json(const ext::BundleSpec& spec) {
  json holes = json::array();
  for (const auto& h : spec.domain.holes)
    holes.push_back(json{{"center", h.center}, {"radius", h.radius}});
  json words = json::array();
  for (const auto& w : spec.gap_words) words.push_back(word_json(w));
  json j{{"format", "bundle-extension-spec"},
         {"version", 1},
         {"fiber_dimension", spec.fiber_dim},
         {"domain",
          {{"outer_radius", spec.domain.outer_radius}, {"holes", holes}}},
         {"gap_words", std::move(words)}};
  if (!spec.hole_factorizations.empty()) {
    json hf = json::object();
    for (const auto& [h, w] : spec.hole_factorizations)
      hf[std::to_string(h)] = word_json(w);
    j["hole_factorizations"] = std::move(hf);
  }
  if (spec.outer.monodromy || spec.outer.factorization) {
    json o = json::object();
    if (spec.outer.monodromy) o["monodromy"] = word_json(*spec.outer.monodromy);
    if (spec.outer.factorization)
      o["factorization"] = word_json(*spec.outer.factorization);
    j["outer_override"] = std::move(o);
  }
  return j;
}

json flow_json(const aut::OneParameterFlow& f) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, aut::ShearFlow> ||
                      std::is_same_v<T, aut::OverShearFlow>) {
          return json{{"type", std::is_same_v<T, aut::ShearFlow>
                                   ? "shear_flow"
                                   : "overshear_flow"},
                      {"axis", v.axis},
                      {"polynomial", poly_json(v.q)}};
        } else {
          return json{{"type", std::is_same_v<T, aut::LinearFlow>
                                   ? "linear_flow"
                                   : "affine_flow"},
                      {"generator", matrix_json(v.generator)},
                      {"branch_adjusted", v.branch_adjusted}};
        }
      },
      f.data());
}

json branch_json(const geom::BranchFunction& b) {
  json logs = json::array();
  for (const auto& t : b.logs)
    logs.push_back(json{
        {"cut", t.cut == geom::BranchCut::downward ? "downward" : "upward"},
        {"coefficient", cx_json(t.coefficient)}});
  return json{{"constant", cx_json(b.constant)},
              {"linear", cx_json(b.linear)},
              {"logs", std::move(logs)}};
}

json coordmap_json(const geom::CoordMap& m) {
  json steps = json::array();
  for (const auto& s : m.steps) {
    if (s.kind == geom::CoordStep::Kind::affine)
      steps.push_back(json{{"map", "affine"},
                           {"center", cx_json(s.center)},
                           {"scale", s.scale}});
    else
      steps.push_back(json{{"map", "inversion"}, {"scale", s.scale}});
  }
  return json{{"steps", std::move(steps)}};
}

json region_json(const ext::SampleRegion& r) {
  switch (r.kind) {
    case ext::SampleRegion::Kind::collar_region:
      return json{{"kind", "collar"},
                  {"chart", r.chart},
                  {"region", geom::region_name(r.region)},
                  {"im_clamp", r.zeta_im_clamp},
                  {"label", r.label}};
    case ext::SampleRegion::Kind::band_rect:
      return json{{"kind", "band"},
                  {"chart", r.chart},
                  {"x0", r.x0},
                  {"x1", r.x1},
                  {"half_band", r.half_band},
                  {"im_clamp", r.zeta_im_clamp},
                  {"label", r.label}};
    case ext::SampleRegion::Kind::fiber_only:
      return json{{"kind", "fiber"}, {"label", r.label}};
  }
  throw Error("unreachable region kind");
}

json factor_json(const ext::ParamFactor& f) {
  if (const auto* c = std::get_if<ext::ConstFactor>(&f))
    return json{{"kind", "constant"}, {"map", elem_json(c->map)}};
  const auto& fl = std::get<ext::FlowFactor>(f);
  return json{{"kind", "flow"},
              {"flow", flow_json(fl.flow)},
              {"time", branch_json(fl.time)}};
}

}  // namespace

std::string serialize_spec(const ext::BundleSpec& spec) {
  return spec_json(spec).dump(2) + "\n";
}

ext::BundleSpec parse_spec(const std::string& text) {
  try {
    json j = json::parse(text);
    if (j.at("format").get<std::string>() != "bundle-extension-spec")
      throw ParseError("not a bundle-extension-spec file");
    if (j.at("version").get<int>() != 1)
      throw ParseError("unsupported spec version");
    ext::BundleSpec spec;
    spec.fiber_dim = j.at("fiber_dimension").get<int>();
    const json& dom = j.at("domain");
    spec.domain.outer_radius = dom.at("outer_radius").get<double>();
    for (const auto& h : dom.at("holes"))
      spec.domain.holes.push_back(geom::DiskSpec{
          h.at("center").get<double>(), h.at("radius").get<double>()});
    for (const auto& w : j.at("gap_words"))
      spec.gap_words.push_back(word_parse(w));
    if (j.contains("hole_factorizations"))
      for (const auto& [key, w] : j.at("hole_factorizations").items())
        spec.hole_factorizations.insert_or_assign(std::stoi(key),
                                                  word_parse(w));
    if (j.contains("outer_override")) {
      const json& o = j.at("outer_override");
      if (o.contains("monodromy"))
        spec.outer.monodromy = word_parse(o.at("monodromy"));
      if (o.contains("factorization"))
        spec.outer.factorization = word_parse(o.at("factorization"));
    }
    return spec;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed spec file: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw ParseError("hole_factorizations keys must be hole indices");
  }
}

std::string serialize_extension(const ext::ExtendedBundle& ext) {
  json charts = json::array();
  for (const auto& c : ext.charts)
    charts.push_back(json{{"name", c.name}, {"map", coordmap_json(c.map)}});
  json transitions = json::array();
  for (const auto& t : ext.transitions) {
    json factors = json::array();
    for (const auto& f : t.word.factors()) factors.push_back(factor_json(f));
    transitions.push_back(json{{"from", t.from},
                               {"to", t.to},
                               {"provenance", t.provenance},
                               {"region", region_json(t.region)},
                               {"factors", std::move(factors)}});
  }
  json regions = json::array();
  for (const auto& r : ext.regions)
    regions.push_back(json{
        {"name", r.name}, {"method", r.method}, {"sub_holes", r.sub_holes}});
  json j{{"format", "bundle-extension"},
         {"version", 1},
         {"spec", spec_json(ext.spec)},
         {"delta_glob", ext.delta_glob},
         {"charts", std::move(charts)},
         {"transitions", std::move(transitions)},
         {"regions", std::move(regions)}};
  return j.dump(2) + "\n";
}

std::string serialize_report(const ext::VerificationReport& rep,
                             const ReportMeta& meta) {
  json records = json::array();
  for (const auto& r : rep.records)
    records.push_back(json{{"name", r.name},
                           {"where", r.where},
                           {"samples", r.samples},
                           {"max_residual", r.max_residual},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
  json regions = json::array();
  for (const auto& r : rep.regions)
    regions.push_back(json{
        {"name", r.name}, {"method", r.method}, {"sub_holes", r.sub_holes}});
  json j{{"format", "bundle-extension-report"},
         {"tool_version", "0.1.0"},
         {"generated_at", meta.generated_at},
         {"wall_clock_seconds", meta.wall_clock_seconds},
         {"seed", rep.seed},
         {"samples", rep.samples},
         {"tolerance", rep.tolerance},
         {"scope_note", rep.scope_note},
         {"outer_convention", rep.outer_convention},
         {"overall_pass", rep.overall_pass},
         {"degree_scan",
          {{"max_polynomial_degree", rep.degree_scan.max_polynomial_degree},
           {"overshear_present", rep.degree_scan.overshear_present}}},
         {"regions", std::move(regions)},
         {"records", std::move(records)}};
  return j.dump(2) + "\n";
}

}  // namespace bundlex::io
