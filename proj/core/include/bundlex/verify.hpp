#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bundlex/extend.hpp"

namespace bundlex::ext {

struct RecordResult {
  std::string name, where;
  int samples = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerificationReport {
  std::uint64_t seed = 0;
  int samples = 0;
  double tolerance = 0.0;
  std::string scope_note;
  // The outer chart orientation is a convention, not a theorem; reports
  // state it so users know what an override would replace.
  std::string outer_convention;
  bool overall_pass = false;
  std::vector<RecordResult> records;
  std::vector<RegionSummary> regions;
  DegreeScan degree_scan;
};

/* Runs every check of the extension: per record, draws `samples` points
 * (base point by rejection against the region, fiber point in the
 * polydisc of radius 2, flow times in a disc) from a per-record
 * substream of `seed` and reports the max of
 * ‖path1 − path2‖ / (1 + ‖path1‖). Deterministic given seed; failures
 * are reported, never thrown. Records carrying their own tolerance
 * (the splitting-function sums) keep it; the rest use `tol`. */
VerificationReport verify_cocycle(const ExtendedBundle& ext,
                                  int samples = 1000, double tol = 1e-9,
                                  std::uint64_t seed = 42);

/* Negative-control hooks. A slot addresses one stored complex
 * coefficient: an affine matrix or translation entry, a polynomial term
 * coefficient of a (over-)shear or of a shear-type flow, a flow
 * generator entry, or a coefficient of a flow factor's time function. */
struct CoefficientSlot {
  int transition = -1;
  int factor = -1;
  int index = 0;
  std::string description;
};

std::vector<CoefficientSlot> enumerate_slots(const ExtendedBundle& ext);

// Copy of the extension with delta added to the real part of the slot's
// coefficient. Checks are untouched, so they measure against the
// unperturbed expectations.
ExtendedBundle perturb_slot(const ExtendedBundle& ext,
                            const CoefficientSlot& slot, double delta);

}  // namespace bundlex::ext
