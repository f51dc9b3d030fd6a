#pragma once

#include <variant>

#include "bundlex/automorphism.hpp"
#include "bundlex/matrix_log.hpp"

namespace bundlex::aut {

// S^t: z_axis += t q(z).
struct ShearFlow {
  int axis;
  Polynomial q;
};

// S^t: z_axis *= exp(t q(z)).
struct OverShearFlow {
  int axis;
  Polynomial q;
};

// S^t = exp(t A).
struct LinearFlow {
  Eigen::MatrixXcd generator;
  bool branch_adjusted = false;
};

// S^t = exp(t H) acting through the homogeneous (n+1)x(n+1) embedding
// z -> (z, 1); the bottom row of H is zero.
struct AffineFlow {
  Eigen::MatrixXcd generator;
  bool branch_adjusted = false;
};

/* One-parameter group t -> S^t of automorphisms, satisfying
 * S^{s+t} = S^s ∘ S^t for all complex s, t. */
class OneParameterFlow {
 public:
  OneParameterFlow(int dim, std::variant<ShearFlow, OverShearFlow, LinearFlow, AffineFlow> v)
      : dim_(dim), v_(std::move(v)) {}

  int dim() const { return dim_; }
  const std::variant<ShearFlow, OverShearFlow, LinearFlow, AffineFlow>& data() const {
    return v_;
  }
  bool branch_adjusted() const;

  // The automorphism S^t as a concrete elementary map.
  ElementaryAutomorphism time_map(Cx t) const;

  // S^t applied to z without materializing intermediate structures.
  FiberPoint apply(Cx t, const FiberPoint& z) const;

 private:
  int dim_;
  std::variant<ShearFlow, OverShearFlow, LinearFlow, AffineFlow> v_;
};

/* Recovers a flow whose time-1 map is the given elementary:
 * shears and over-shears directly, affine maps through the matrix
 * logarithm (of the homogeneous embedding when the translation is
 * nonzero). Throws NoKnownFlow when the logarithm does not exist. */
OneParameterFlow recognize_flow(const ElementaryAutomorphism& e);

inline ElementaryAutomorphism flow_at(const OneParameterFlow& f, Cx t) {
  return f.time_map(t);
}

}  // namespace bundlex::aut
