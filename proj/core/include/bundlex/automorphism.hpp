#pragma once

#include <Eigen/Dense>
#include <optional>
#include <variant>
#include <vector>

#include "bundlex/polynomial.hpp"
#include "bundlex/types.hpp"

namespace bundlex::aut {

// z -> M z + b with M invertible.
struct Affine {
  Eigen::MatrixXcd matrix;
  Eigen::VectorXcd translation;
};

// z_axis -> z_axis + q(z), q free of the axis variable.
struct Shear {
  int axis;
  Polynomial q;
};

// z_axis -> z_axis * exp(q(z)), q free of the axis variable.
struct OverShear {
  int axis;
  Polynomial q;
};

/* One generator of the automorphism group: an invertible affine map, a
 * shear, or an over-shear of C^n. Construction validates the variant
 * invariants; a value of this type is always applicable and invertible. */
class ElementaryAutomorphism {
 public:
  static ElementaryAutomorphism affine(Eigen::MatrixXcd m, Eigen::VectorXcd b);
  static ElementaryAutomorphism shear(int dim, int axis, Polynomial q);
  static ElementaryAutomorphism over_shear(int dim, int axis, Polynomial q);
  static ElementaryAutomorphism identity(int dim);

  int dim() const { return dim_; }
  const std::variant<Affine, Shear, OverShear>& data() const { return v_; }
  bool is_affine() const { return std::holds_alternative<Affine>(v_); }
  bool is_shear() const { return std::holds_alternative<Shear>(v_); }
  bool is_over_shear() const { return std::holds_alternative<OverShear>(v_); }

  FiberPoint apply(const FiberPoint& z) const;
  ElementaryAutomorphism inverse() const;

  // Structural test used by free reduction of concatenated words.
  bool is_structural_inverse_of(const ElementaryAutomorphism& other,
                                double tol = 1e-12) const;

 private:
  ElementaryAutomorphism(int dim, std::variant<Affine, Shear, OverShear> v)
      : dim_(dim), v_(std::move(v)) {}
  int dim_;
  std::variant<Affine, Shear, OverShear> v_;
};

/* Finite word of elementary automorphisms. factors()[0] is applied first:
 * the word [e1, ..., em] acts as the composition em ∘ ... ∘ e1. All
 * consumers of serialized words rely on this application order. */
class AutomorphismWord {
 public:
  explicit AutomorphismWord(int dim) : dim_(dim) {}
  AutomorphismWord(int dim, std::vector<ElementaryAutomorphism> factors);

  int dim() const { return dim_; }
  const std::vector<ElementaryAutomorphism>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }

  void push_back(ElementaryAutomorphism e);
  void append(const AutomorphismWord& w);

 private:
  int dim_;
  std::vector<ElementaryAutomorphism> factors_;
};

// Applies the word to a fiber point, first factor first.
FiberPoint eval_word(const AutomorphismWord& w, const FiberPoint& z);

// Reversed factor-wise inverses: eval_word(invert_word(w), eval_word(w, z)) == z.
AutomorphismWord invert_word(const AutomorphismWord& w);

// w2 ∘ w1 as a word: the factors of w1 followed by the factors of w2.
AutomorphismWord concat(const AutomorphismWord& w1, const AutomorphismWord& w2);

// Cancels adjacent factor pairs that are structural inverses of each other.
AutomorphismWord reduce_word(const AutomorphismWord& w);

struct ExpandedWord {
  std::vector<Polynomial> components;
  int degree;
};

// Symbolic composition of the word into one polynomial map of C^n.
// Throws TranscendentalWord if any factor is an over-shear.
ExpandedWord expand_polynomial(const AutomorphismWord& w);

// Sampled equality in the residual metric; deterministic for a given seed.
bool words_agree(const AutomorphismWord& a, const AutomorphismWord& b,
                 int samples = 100, double tol = 1e-9,
                 std::uint64_t seed = 0x5eedu);

/* The composition of the rotation (z1, z2) -> (z2, -z1) with the shear
 * (z1, z2) -> (z1, z2 + z1^k), i.e. the polynomial automorphism
 * (z1, z2) -> (z2, -z1 + z2^k) of C^2. Requires k >= 1. */
AutomorphismWord henon_word(int k);

}  // namespace bundlex::aut
