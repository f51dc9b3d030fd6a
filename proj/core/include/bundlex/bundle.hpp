#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bundlex/automorphism.hpp"
#include "bundlex/domain.hpp"

namespace bundlex::ext {

struct OuterOverride {
  std::optional<aut::AutomorphismWord> monodromy;
  std::optional<aut::AutomorphismWord> factorization;
};

/* Bundle over the disc minus holes, in gap normal form: trivial over the
 * upper and lower halves of the domain, glued over the real-axis band
 * left of hole 0, between consecutive holes, and right of the last hole
 * by z^- = G_p(z^+), where G_p = gap_words[p] (bands left to right, so
 * gap_words has holes+1 entries). hole_factorizations optionally factors
 * the monodromy of a hole into elementary pieces; outer overrides replace
 * the derived monodromy/factorization of the point at infinity. */
struct BundleSpec {
  geom::DomainSpec domain;
  int fiber_dim = 0;
  std::vector<aut::AutomorphismWord> gap_words;
  std::map<int, aut::AutomorphismWord> hole_factorizations;
  OuterOverride outer;
};

// Domain rules plus word-count and dimension coherence. Throws on failure.
void validate_spec(const BundleSpec& spec);

// Monodromy of hole h as a word: gap_words[h+1] ∘ gap_words[h]^{-1}, reduced.
aut::AutomorphismWord monodromy_word(const BundleSpec& spec, int hole);

/* Gluing data of one collar annulus: z^- = t0(z^+) on the right crossing
 * band, z^- = t1(z^+) on the left one. e_word = [E_1, ..., E_k] composes
 * (in application order) to t1 ∘ t0^{-1}; its length k decides whether
 * the single-flow filling applies (k <= 1) or the collar is refined into
 * k sub-holes first. */
struct HoleGluing {
  aut::AutomorphismWord t0, t1, e_word;
};

HoleGluing hole_gluing(const BundleSpec& spec, int hole);

/* Gluing of the outer collar in the w = R/zeta chart. The chart flips
 * orientation, so the collar frames are tied to the ambient ones through
 * the last gap word: t0 = G_N and t1 = G_N ∘ G_0^{-1} ∘ G_N, which makes
 * the outer monodromy G_0 ∘ G_N^{-1}. The default e_word concatenates the
 * hole monodromy factorizations left to right; overrides take precedence. */
HoleGluing outer_gluing(const BundleSpec& spec);

// Samples whether e_word composes to t1 ∘ t0^{-1}.
bool gluing_consistent(const HoleGluing& g, int samples = 100,
                       double tol = 1e-9);

/* Ready-made specs:
 *   "skoda"       two holes; one over-shear monodromy, one linear
 *   "demailly"    one hole with Henon-map monodromy, factored into k
 *                 elementary pieces (requires k >= 2)
 * Unknown names throw UnknownExample. */
BundleSpec builtin_example(const std::string& name, int k = 2);

}  // namespace bundlex::ext
