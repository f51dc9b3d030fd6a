#pragma once

#include <vector>

#include "bundlex/collar.hpp"
#include "bundlex/types.hpp"

namespace bundlex::geom {

/* Logarithm branches used on the collar annulus. The downward cut removes
 * the ray {Re w = 0, Im w < 0} and carries arguments in (-pi/2, 3pi/2),
 * so it is evaluable on all of vplus. The upward cut removes
 * {Re w = 0, Im w > 0}, arguments in (-3pi/2, pi/2), evaluable on vminus. */
enum class BranchCut { downward, upward };

// log|w| + i arg(w) with the argument range of the cut. Throws
// BranchCutCrossing within 1e-12 of the removed ray (or at w = 0).
Cx branch_log(Cx w, BranchCut cut);

struct LogTerm {
  BranchCut cut = BranchCut::downward;
  Cx coefficient = 0.0;
};

/* constant + linear * w + sum of coefficient * branch_log(w, cut).
 * Holomorphic wherever all its branch logs are evaluable. */
struct BranchFunction {
  Cx constant = 0.0;
  Cx linear = 0.0;
  std::vector<LogTerm> logs;

  Cx eval(Cx w) const;
  BranchFunction negated() const;
  bool is_structurally_zero() const;

  static BranchFunction constant_fn(Cx c);
};

/* The two halves of the splitting: lplus is holomorphic on vplus, lminus
 * on vminus, and lplus + lminus is 0 on omega and -1 on omegaPrime. */
struct CousinData {
  BranchFunction lplus;
  BranchFunction lminus;
};

/* lplus(w) = -log_down(w) / (2 pi i), lminus(w) = +log_up(w) / (2 pi i).
 * The same pair works in every collar chart, so the chart argument only
 * fixes the intended domain of use. */
CousinData cousin_solve(const CollarChart& chart);

}  // namespace bundlex::geom
