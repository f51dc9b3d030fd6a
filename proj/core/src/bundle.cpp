#include "bundlex/bundle.hpp"

#include <string>

#include "bundlex/errors.hpp"

namespace bundlex::ext {

namespace {

const aut::AutomorphismWord& checked_gap(const BundleSpec& spec, int p) {
  return spec.gap_words.at(static_cast<std::size_t>(p));
}

}  // namespace

void validate_spec(const BundleSpec& spec) {
  /* Gap words are keyed by band position, so reordering holes behind the
   * caller's back would scramble the association; demand sorted input. */
  for (std::size_t i = 1; i < spec.domain.holes.size(); ++i)
    if (spec.domain.holes[i - 1].center > spec.domain.holes[i].center)
      throw ParseError("holes must be listed left to right");
  geom::validate_domain(spec.domain);
  if (spec.fiber_dim < 1) throw ParseError("fiber dimension must be positive");
  const auto holes = spec.domain.holes.size();
  if (spec.gap_words.size() != holes + 1)
    throw ParseError("expected " + std::to_string(holes + 1) +
                     " gap words for " + std::to_string(holes) + " holes, got " +
                     std::to_string(spec.gap_words.size()));
  for (const auto& w : spec.gap_words)
    if (w.dim() != spec.fiber_dim)
      throw ParseError("gap word dimension does not match fiber dimension");
  for (const auto& [h, w] : spec.hole_factorizations) {
    if (h < 0 || h >= static_cast<int>(holes))
      throw ParseError("factorization given for nonexistent hole " +
                       std::to_string(h));
    if (w.dim() != spec.fiber_dim)
      throw ParseError("hole factorization dimension does not match fiber");
  }
  for (const auto& w : {spec.outer.monodromy, spec.outer.factorization})
    if (w && w->dim() != spec.fiber_dim)
      throw ParseError("outer override dimension does not match fiber");
}

aut::AutomorphismWord monodromy_word(const BundleSpec& spec, int hole) {
  return aut::reduce_word(
      aut::concat(aut::invert_word(checked_gap(spec, hole)),
                  checked_gap(spec, hole + 1)));
}

HoleGluing hole_gluing(const BundleSpec& spec, int hole) {
  HoleGluing g{checked_gap(spec, hole + 1), checked_gap(spec, hole),
               aut::AutomorphismWord(spec.fiber_dim)};
  auto it = spec.hole_factorizations.find(hole);
  const aut::AutomorphismWord fact =
      it != spec.hole_factorizations.end() ? it->second
                                           : monodromy_word(spec, hole);
  g.e_word = aut::invert_word(fact);
  return g;
}

HoleGluing outer_gluing(const BundleSpec& spec) {
  const int n_holes = static_cast<int>(spec.domain.holes.size());
  const auto& g_last = checked_gap(spec, n_holes);
  const auto& g_first = checked_gap(spec, 0);

  HoleGluing g{g_last,
               aut::concat(aut::concat(g_last, aut::invert_word(g_first)),
                           g_last),
               aut::AutomorphismWord(spec.fiber_dim)};

  if (spec.outer.factorization) {
    g.e_word = aut::invert_word(*spec.outer.factorization);
  } else if (spec.outer.monodromy) {
    g.e_word = aut::invert_word(aut::reduce_word(*spec.outer.monodromy));
  } else {
    /* The hole monodromies compose (rightmost hole innermost) to the
     * inverse of the outer monodromy, so the e_word is the left-to-right
     * concatenation of the hole factorizations. */
    for (int h = 0; h < n_holes; ++h)
      g.e_word.append(aut::invert_word(hole_gluing(spec, h).e_word));
  }
  return g;
}

bool gluing_consistent(const HoleGluing& g, int samples, double tol) {
  return aut::words_agree(
      g.e_word, aut::concat(aut::invert_word(g.t0), g.t1), samples, tol);
}

namespace {

BundleSpec skoda_spec() {
  BundleSpec spec;
  spec.domain.outer_radius = 10.0;
  spec.domain.holes = {{-4.0, 1.0}, {4.0, 1.0}};
  spec.fiber_dim = 2;

  const auto over = aut::ElementaryAutomorphism::over_shear(
      2, 1, aut::Polynomial::variable(2, 0));
  Eigen::MatrixXcd m(2, 2);
  m << Cx(0, 0), Cx(0, 1), Cx(1, 0), Cx(0, 0);
  const auto linear =
      aut::ElementaryAutomorphism::affine(m, Eigen::VectorXcd::Zero(2));

  spec.gap_words = {aut::AutomorphismWord(2),
                    aut::AutomorphismWord(2, {over}),
                    aut::AutomorphismWord(2, {over, linear})};
  return spec;
}

BundleSpec demailly_spec(int k) {
  if (k < 2)
    throw Error("the demailly example needs k >= 2 so the monodromy splits "
                "into at least two factors");
  BundleSpec spec;
  spec.domain.outer_radius = 10.0;
  spec.domain.holes = {{0.0, 1.0}};
  spec.fiber_dim = 2;
  spec.gap_words = {aut::AutomorphismWord(2), aut::henon_word(k)};

  /* Split the degree-k shear of the Henon word into k - 1 equal shears,
   * so the monodromy factors into exactly k elementary pieces. */
  Eigen::MatrixXcd rot(2, 2);
  rot << Cx(0, 0), Cx(1, 0), Cx(-1, 0), Cx(0, 0);
  aut::AutomorphismWord fact(2);
  fact.push_back(
      aut::ElementaryAutomorphism::affine(rot, Eigen::VectorXcd::Zero(2)));
  const auto piece = aut::Polynomial::monomial(
      2, {static_cast<unsigned>(k), 0u}, Cx(1.0 / (k - 1), 0));
  for (int i = 0; i < k - 1; ++i)
    fact.push_back(aut::ElementaryAutomorphism::shear(2, 1, piece));
  spec.hole_factorizations.insert_or_assign(0, fact);
  return spec;
}

}  // namespace

BundleSpec builtin_example(const std::string& name, int k) {
  if (name == "skoda") return skoda_spec();
  if (name == "demailly") return demailly_spec(k);
  throw UnknownExample("unknown example \"" + name +
                       "\" (available: skoda, demailly)");
}

}  // namespace bundlex::ext
