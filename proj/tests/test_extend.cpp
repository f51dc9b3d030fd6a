#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "bundlex/branch.hpp"
#include "bundlex/bundle.hpp"
#include "bundlex/errors.hpp"
#include "bundlex/extend.hpp"
#include "bundlex/rng.hpp"
#include "oracles.hpp"

using bundlex::Cx;
using bundlex::FiberPoint;
using bundlex::NoKnownFlow;
using bundlex::NotTimeOneMap;
using bundlex::Rng;
using bundlex::relative_residual;
using namespace bundlex::aut;
using namespace bundlex::ext;
namespace geom = bundlex::geom;

namespace {

Cx draw_region(Rng& rng, geom::CollarRegion reg) {
  for (;;) {
    Cx w = rng.rect(-2.0, 2.0, -2.0, 2.0);
    if (geom::in_region(reg, w, 1e-3)) return w;
  }
}

geom::CollarChart unit_chart() {
  return geom::CollarChart{"unit", geom::CoordMap::affine(Cx(0.0), 1.0)};
}

/* The two defining identities of a single-flow filling, evaluated from
 * scratch: leaving the filled disc through one collar half and coming
 * back through the other is the identity of the fill fiber. */
void check_star_identities(const HoleGluing& g, const Case1Filling& fill,
                           std::uint64_t seed) {
  Rng rng(seed, "case1-star");
  for (int i = 0; i < 200; ++i) {
    FiberPoint z = rng.polydisc(g.t0.dim(), 2.0);
    Cx w = draw_region(rng, geom::CollarRegion::omega);
    FiberPoint round = fill.phi_minus.apply_inverse(
        w, eval_word(g.t0, fill.phi_plus.apply(w, z)));
    CHECK(relative_residual(round, z) < 1e-9);
    w = draw_region(rng, geom::CollarRegion::omega_prime);
    round = fill.phi_minus.apply_inverse(
        w, eval_word(g.t1, fill.phi_plus.apply(w, z)));
    CHECK(relative_residual(round, z) < 1e-9);
  }
}

ElementaryAutomorphism skoda_overshear() {
  return ElementaryAutomorphism::over_shear(2, 1, Polynomial::variable(2, 0));
}

ElementaryAutomorphism skoda_linear() {
  Eigen::MatrixXcd m(2, 2);
  m << Cx(0, 0), Cx(0, 1), Cx(1, 0), Cx(0, 0);
  return ElementaryAutomorphism::affine(m, Eigen::VectorXcd::Zero(2));
}

HoleGluing one_factor_gluing(const ElementaryAutomorphism& e) {
  HoleGluing g{AutomorphismWord(2), AutomorphismWord(2), AutomorphismWord(2)};
  g.t1.push_back(e);
  g.e_word.push_back(e);
  return g;
}

}  // namespace

TEST_CASE("one-flow filling: over-shear gluing") {
  HoleGluing g = one_factor_gluing(skoda_overshear());
  OneParameterFlow f = case1_flow(g, 2);
  CHECK(std::holds_alternative<OverShearFlow>(f.data()));
  geom::CollarChart chart = unit_chart();
  Case1Filling fill =
      extend_case1(g, f, chart, geom::cousin_solve(chart));
  check_star_identities(g, fill, 21);
}

TEST_CASE("one-flow filling: linear gluing through the matrix logarithm") {
  HoleGluing g = one_factor_gluing(skoda_linear());
  OneParameterFlow f = case1_flow(g, 2);
  CHECK(std::holds_alternative<LinearFlow>(f.data()));
  geom::CollarChart chart = unit_chart();
  Case1Filling fill =
      extend_case1(g, f, chart, geom::cousin_solve(chart));
  check_star_identities(g, fill, 22);
}

TEST_CASE("one-flow filling: trivial gluing stays structurally trivial") {
  HoleGluing g{AutomorphismWord(2), AutomorphismWord(2), AutomorphismWord(2)};
  OneParameterFlow f = case1_flow(g, 2);
  geom::CollarChart chart = unit_chart();
  Case1Filling fill =
      extend_case1(g, f, chart, geom::cousin_solve(chart));
  CHECK(fill.phi_plus.factors().empty());
  CHECK(fill.phi_minus.factors().empty());
  FiberPoint z{Cx(0.4, 1.0), Cx(-2.0, 0.1)};
  FiberPoint image = fill.phi_plus.apply(Cx(1.5, 0.2), z);
  CHECK(relative_residual(image, z) == 0.0);
}

TEST_CASE("one-flow filling rejects a flow with the wrong time-1 map") {
  HoleGluing g = one_factor_gluing(skoda_overshear());
  OneParameterFlow wrong = recognize_flow(skoda_linear());
  geom::CollarChart chart = unit_chart();
  CHECK_THROWS_AS(extend_case1(g, wrong, chart, geom::cousin_solve(chart)),
                  NotTimeOneMap);
}

TEST_CASE("sub-hole layout covers the middle half of each subinterval") {
  SubHoleLayout lay = SubHoleLayout::make(3);
  CHECK(lay.len == doctest::Approx(2.0 / 3.0));
  CHECK(lay.rho == doctest::Approx(1.0 / 6.0));
  REQUIRE(lay.centers.size() == 3);
  CHECK(lay.centers[0] == doctest::Approx(-2.0 / 3.0));
  CHECK(lay.centers[1] == doctest::Approx(0.0));
  CHECK(lay.centers[2] == doctest::Approx(2.0 / 3.0));
  // telescoping index 1 fills the rightmost sub-hole
  CHECK(lay.center_for(1) == lay.centers[2]);
  CHECK(lay.center_for(3) == lay.centers[0]);
  for (std::size_t s = 0; s + 1 < lay.centers.size(); ++s) {
    // closed sub-discs stay pairwise disjoint and inside the unit disc
    CHECK(lay.centers[s] + lay.rho < lay.centers[s + 1] - lay.rho);
  }
  CHECK(lay.centers.front() - lay.rho > -1.0);
  CHECK(lay.centers.back() + lay.rho < 1.0);
}

TEST_CASE("refinement telescopes the factorization") {
  BundleSpec spec = builtin_example("demailly", 3);
  HoleGluing g = hole_gluing(spec, 0);
  RefinedHole ref = refine_hole(g, geom::hole_collar(spec.domain, 0));
  REQUIRE(ref.layout.k == 3);
  REQUIRE(ref.arc_words.size() == 4);
  REQUIRE(ref.sub_gluings.size() == 3);

  Rng rng(23, "telescope");
  for (int p = 0; p <= 3; ++p) {
    CHECK(ref.arc_words[static_cast<std::size_t>(p)].size() ==
          g.t0.size() + static_cast<std::size_t>(p));
    // arc word p composes to E_p ∘ ... ∘ E_1 ∘ t0, checked directly
    for (int i = 0; i < 30; ++i) {
      FiberPoint z = rng.polydisc(2, 2.0);
      FiberPoint expect = eval_word(g.t0, z);
      for (int q = 0; q < p; ++q)
        expect = g.e_word.factors()[static_cast<std::size_t>(q)].apply(expect);
      CHECK(relative_residual(
                eval_word(ref.arc_words[static_cast<std::size_t>(p)], z),
                expect) < 1e-12);
    }
  }
  // last arc reaches the other collar transition
  CHECK(words_agree(ref.arc_words[3], g.t1));

  for (int p = 1; p <= 3; ++p) {
    const HoleGluing& sub = ref.sub_gluings[static_cast<std::size_t>(p - 1)];
    REQUIRE(sub.e_word.size() == 1);
    CHECK(gluing_consistent(sub));
    // consecutive arc quotient is the single factor E_p
    AutomorphismWord quotient = concat(invert_word(sub.t0), sub.t1);
    CHECK(words_agree(quotient, sub.e_word));
  }
}

TEST_CASE("refinement demands a flow for every factor") {
  Eigen::MatrixXcd m(3, 3);
  m << Cx(1, 0), Cx(1, 0), Cx(0, 0),
       Cx(0, 0), Cx(1, 0), Cx(0, 0),
       Cx(0, 0), Cx(0, 0), Cx(2, 0);
  auto defective = ElementaryAutomorphism::affine(m, Eigen::VectorXcd::Zero(3));
  HoleGluing g{AutomorphismWord(3), AutomorphismWord(3), AutomorphismWord(3)};
  g.t1.push_back(defective);
  g.t1.push_back(defective);
  g.e_word.push_back(defective);
  g.e_word.push_back(defective);
  geom::DomainSpec dom{10.0, {{0.0, 1.0}}};
  CHECK_THROWS_AS(refine_hole(g, geom::hole_collar(dom, 0)), NoKnownFlow);
}

TEST_CASE("skoda extension structure") {
  ExtendedBundle ext = extend_bundle(builtin_example("skoda"));
  CHECK(ext.delta_glob == doctest::Approx(0.45));

  REQUIRE(ext.regions.size() == 3);
  CHECK(ext.regions[0].name == "hole0");
  CHECK(ext.regions[0].method == "case1");
  CHECK(ext.regions[1].name == "hole1");
  CHECK(ext.regions[1].method == "case1");
  CHECK(ext.regions[2].name == "outer");
  CHECK(ext.regions[2].method == "general");
  CHECK(ext.regions[2].sub_holes == 2);

  CHECK(ext.charts.size() == 8);
  CHECK(ext.transitions.size() == 16);
  CHECK(ext.checks.size() == 29);

  DegreeScan scan = scan_degrees(ext);
  CHECK(scan.overshear_present);
}

TEST_CASE("demailly extension structure and degree bound") {
  ExtendedBundle ext = extend_bundle(builtin_example("demailly", 2));
  REQUIRE(ext.regions.size() == 2);
  CHECK(ext.regions[0].name == "hole0");
  CHECK(ext.regions[0].method == "general");
  CHECK(ext.regions[0].sub_holes == 2);
  CHECK(ext.regions[1].method == "general");
  CHECK(ext.regions[1].sub_holes == 2);

  CHECK(ext.charts.size() == 10);
  CHECK(ext.transitions.size() == 20);
  CHECK(ext.checks.size() == 34);

  DegreeScan scan = scan_degrees(ext);
  CHECK(scan.max_polynomial_degree == 2);
  CHECK_FALSE(scan.overshear_present);
}

TEST_CASE("band transitions carry the unmodified gap words") {
  BundleSpec spec = builtin_example("skoda");
  ExtendedBundle ext = extend_bundle(spec);
  Rng rng(24, "bands");
  for (std::size_t p = 0; p < 3; ++p) {
    const Transition& t = ext.transitions[p];
    CHECK(t.from == "lambda_plus");
    CHECK(t.to == "lambda_minus");
    REQUIRE(t.word.is_const());
    CHECK(t.word.factors().size() == spec.gap_words[p].size());
    for (int i = 0; i < 25; ++i) {
      FiberPoint z = rng.polydisc(2, 2.0);
      CHECK(relative_residual(t.word.apply(Cx(0.0), z),
                              eval_word(spec.gap_words[p], z)) == 0.0);
    }
  }
}

TEST_CASE("no hole: the outer filling alone closes the sphere") {
  BundleSpec spec;
  spec.domain.outer_radius = 8.0;
  spec.fiber_dim = 2;
  spec.gap_words.assign(1, AutomorphismWord(2));
  ExtendedBundle ext = extend_bundle(spec);

  CHECK(ext.delta_glob == doctest::Approx(2.0));
  REQUIRE(ext.regions.size() == 1);
  CHECK(ext.regions[0].name == "outer");
  CHECK(ext.regions[0].method == "case1");
  CHECK(ext.charts.size() == 3);
  CHECK(ext.transitions.size() == 3);
  CHECK(ext.checks.size() == 4);  // no flow distributed, no splitting records
  for (const Transition& t : ext.transitions) {
    CHECK(t.word.is_const());
    CHECK(t.word.factors().empty());
  }
}

TEST_CASE("strict construction rejects an inconsistent factorization") {
  BundleSpec spec = builtin_example("demailly", 2);
  AutomorphismWord wrong(2);
  Eigen::MatrixXcd rot(2, 2);
  rot << Cx(0, 0), Cx(1, 0), Cx(-1, 0), Cx(0, 0);
  wrong.push_back(ElementaryAutomorphism::affine(rot, Eigen::VectorXcd::Zero(2)));
  wrong.push_back(ElementaryAutomorphism::affine(rot, Eigen::VectorXcd::Zero(2)));
  spec.hole_factorizations.insert_or_assign(0, wrong);

  CHECK_THROWS_AS(extend_bundle(spec), bundlex::Error);
  // permissive mode builds anyway; the verifier is expected to flag it
  ExtendedBundle ext = extend_bundle(spec, BuildMode::permissive);
  CHECK(ext.regions[0].method == "general");
}
