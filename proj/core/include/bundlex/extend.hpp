#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bundlex/branch.hpp"
#include "bundlex/bundle.hpp"
#include "bundlex/collar.hpp"
#include "bundlex/flow.hpp"
#include "bundlex/param_word.hpp"

namespace bundlex::ext {

struct ChartInfo {
  std::string name;
  geom::CoordMap map;  // chart coordinate -> base plane
};

// Stored gluing edge: the `to`-frame value is word(w, `from`-frame value)
// for w in the region, w in the coordinate of the transition's own chart.
struct Transition {
  std::string from, to;
  ParamWord word;
  SampleRegion region;
  std::string provenance;
};

/* One step of a frame path: a stored transition applied forward or
 * inverted, or a fixed word that is not part of the stored data (used to
 * pin an expected value such as the time-1 flow map). Referencing stored
 * transitions by index keeps every check tied to the data it certifies. */
struct PathStep {
  int transition = -1;
  bool inverted = false;
  std::optional<ParamWord> fixed;

  static PathStep fwd(int idx) { return PathStep{idx, false, std::nullopt}; }
  static PathStep inv(int idx) { return PathStep{idx, true, std::nullopt}; }
  static PathStep fixed_word(ParamWord w) {
    return PathStep{-1, false, std::move(w)};
  }
};

/* A verifiable identity. path_agreement compares two frame paths on
 * sampled (w, z); cousin_sum checks the splitting functions against their
 * target on sampled w; flow_group_law checks S^{s+t} = S^s S^t on sampled
 * (s, t, z). Records with no natural base region use fiber_only and
 * sample the fiber alone. */
struct CheckRecord {
  enum class Metric { path_agreement, cousin_sum, flow_group_law };

  std::string name, where;
  SampleRegion region;
  Metric metric = Metric::path_agreement;
  std::vector<PathStep> path1, path2;
  geom::BranchFunction cousin_a, cousin_b;
  Cx cousin_target = 0.0;
  std::optional<aut::OneParameterFlow> flow;
  // When unset the verification-time tolerance applies.
  std::optional<double> fixed_tolerance;
};

struct RegionSummary {
  std::string name;    // "hole<h>" or "outer"
  std::string method;  // "case1" or "general"
  int sub_holes = 0;
};

/* k sub-discs on the real diameter of the unit disc of the collar chart.
 * Geometric positions run left to right; the telescoping index p = 1..k
 * runs right to left, matching the order in which the monodromy factors
 * peel off. Doubled sub-collars touch but their open discs are disjoint. */
struct SubHoleLayout {
  int k = 0;
  double len = 0.0, rho = 0.0;
  std::vector<double> centers;  // geometric, left to right

  static SubHoleLayout make(int k);
  double center_for(int p) const {  // telescoping index
    return centers[static_cast<std::size_t>(k - p)];
  }
};

/* Transitions from the filled-disc frame u of a single-flow filling to
 * the two collar frames: z^+ = phi_plus(w, u) on the upper collar region,
 * z^- = phi_minus(w, u) on the lower one. */
struct Case1Filling {
  ParamWord phi_plus, phi_minus;
};

/* Single-flow filling of a collar whose gluing quotient t1 ∘ t0^{-1} is
 * the time-1 map of f: phi_plus = t0^{-1} ∘ S^{lplus}, phi_minus =
 * S^{-lminus}. Throws NotTimeOneMap when the time-1 precondition fails
 * (sampled at 1e-9). */
Case1Filling extend_case1(const HoleGluing& g, const aut::OneParameterFlow& f,
                          const geom::CollarChart& chart,
                          const geom::CousinData& cousin);

// The flow of a k <= 1 gluing: recognized from E_1, or the zero shear
// flow when the e_word is empty. Throws NoKnownFlow.
aut::OneParameterFlow case1_flow(const HoleGluing& g, int fiber_dim);

/* Collar refinement for k >= 2: arc_words[p] carries the cumulative word
 * U_p = E_p ∘ ... ∘ E_1 ∘ t0 glued along the p-th real arc (telescoping
 * order), so U_0 = t0 and U_k agrees with t1 exactly when the e_word
 * composes to t1 ∘ t0^{-1}. sub_gluings[p-1] is the single-factor gluing
 * of sub-hole p. Throws NoKnownFlow if some factor admits no flow. */
struct RefinedHole {
  SubHoleLayout layout;
  std::vector<aut::AutomorphismWord> arc_words;
  std::vector<HoleGluing> sub_gluings;
};

RefinedHole refine_hole(const HoleGluing& g, const geom::CollarChart& chart);

struct DegreeScan {
  int max_polynomial_degree = 0;
  bool overshear_present = false;
};

/* The bundle over the sphere: charts with their base-coordinate maps, the
 * stored gluing edges between them, the identity checks certifying that
 * the edges form a cocycle, and a per-region construction summary. */
struct ExtendedBundle {
  BundleSpec spec;
  double delta_glob = 0.0;  // half-height of the gap bands in the base
  std::vector<ChartInfo> charts;
  std::vector<Transition> transitions;
  std::vector<CheckRecord> checks;
  std::vector<RegionSummary> regions;
};

/* strict throws on an inconsistent factorization or a failed time-1
 * precondition; permissive builds anyway and lets the emitted checks
 * report the violation numerically. */
enum class BuildMode { strict, permissive };

ExtendedBundle extend_bundle(const BundleSpec& spec,
                             BuildMode mode = BuildMode::strict);

// Degree bookkeeping over all stored transition factors.
DegreeScan scan_degrees(const ExtendedBundle& ext);

}  // namespace bundlex::ext
