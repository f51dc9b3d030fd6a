#pragma once

#include <stdexcept>
#include <string>

namespace bundlex {

/* All library errors derive from Error so callers can catch one type.
 * The CLI maps any Error to exit code 2 (malformed input); identity
 * failures during verification are reported, not thrown. */
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// Construction of an elementary map whose data violates its invariants
// (shear polynomial touching the shear axis, non-invertible affine part).
struct InvalidAutomorphism : Error {
  using Error::Error;
};

// Symbolic expansion requested for a word containing an exponential factor.
struct TranscendentalWord : Error {
  using Error::Error;
};

// Matrix logarithm unavailable: several eigenvalue clusters with an
// ill-conditioned eigenvector basis.
struct NonDiagonalizable : Error {
  using Error::Error;
};

// No one-parameter group is known whose time-1 map is the given factor.
struct NoKnownFlow : Error {
  using Error::Error;
};

struct HoleOutsideDomain : Error {
  using Error::Error;
};

struct CollarOverlap : Error {
  using Error::Error;
};

// Evaluation of a branch logarithm on (or numerically too close to) its cut.
struct BranchCutCrossing : Error {
  using Error::Error;
};

// A gluing handed to the one-flow extension step whose transition quotient
// is not the time-1 map of the supplied flow.
struct NotTimeOneMap : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

struct UnknownExample : Error {
  using Error::Error;
};

}  // namespace bundlex
