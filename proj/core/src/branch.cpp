#include "bundlex/branch.hpp"

#include <cmath>

#include "bundlex/errors.hpp"

namespace bundlex::geom {

Cx branch_log(Cx w, BranchCut cut) {
  const bool near_axis = std::abs(w.real()) < 1e-12;
  if (cut == BranchCut::downward) {
    if (near_axis && w.imag() <= 0.0)
      throw BranchCutCrossing("evaluation on the downward branch cut");
    double a = std::arg(w);
    if (a < -M_PI_2) a += 2.0 * M_PI;
    return Cx(std::log(std::abs(w)), a);
  }
  if (near_axis && w.imag() >= 0.0)
    throw BranchCutCrossing("evaluation on the upward branch cut");
  double a = std::arg(w);
  if (a > M_PI_2) a -= 2.0 * M_PI;
  return Cx(std::log(std::abs(w)), a);
}

Cx BranchFunction::eval(Cx w) const {
  Cx out = constant + linear * w;
  for (const LogTerm& t : logs) out += t.coefficient * branch_log(w, t.cut);
  return out;
}

BranchFunction BranchFunction::negated() const {
  BranchFunction out;
  out.constant = -constant;
  out.linear = -linear;
  out.logs.reserve(logs.size());
  for (const LogTerm& t : logs) out.logs.push_back(LogTerm{t.cut, -t.coefficient});
  return out;
}

bool BranchFunction::is_structurally_zero() const {
  if (constant != Cx(0.0) || linear != Cx(0.0)) return false;
  for (const LogTerm& t : logs)
    if (t.coefficient != Cx(0.0)) return false;
  return true;
}

BranchFunction BranchFunction::constant_fn(Cx c) {
  BranchFunction out;
  out.constant = c;
  return out;
}

CousinData cousin_solve(const CollarChart&) {
  const double inv2pi = 1.0 / (2.0 * M_PI);
  CousinData out;
  // -1/(2 pi i) = +i/(2 pi);  +1/(2 pi i) = -i/(2 pi)
  out.lplus.logs.push_back(LogTerm{BranchCut::downward, Cx(0.0, inv2pi)});
  out.lminus.logs.push_back(LogTerm{BranchCut::upward, Cx(0.0, -inv2pi)});
  return out;
}

}  // namespace bundlex::geom
