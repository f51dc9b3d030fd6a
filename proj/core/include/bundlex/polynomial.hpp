#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bundlex/types.hpp"

namespace bundlex::aut {

/* Sparse polynomial in n complex variables. Terms are keyed by the full
 * exponent tuple (length n); zero coefficients are never stored, so
 * structural equality is meaningful. */
class Polynomial {
 public:
  using Exponents = std::vector<unsigned>;
  using TermMap = std::map<Exponents, Cx>;

  explicit Polynomial(int nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(int nvars, Cx c);
  static Polynomial variable(int nvars, int index);
  static Polynomial monomial(int nvars, Exponents exps, Cx c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // max total degree; 0 for the zero polynomial
  const TermMap& terms() const { return terms_; }

  bool involves(int var) const;

  // Nested Horner evaluation, recursing over variables in index order.
  Cx eval(std::span<const Cx> point) const;
  Cx eval(std::initializer_list<Cx> point) const {
    return eval(std::span<const Cx>(point.begin(), point.size()));
  }

  void add_term(const Exponents& exps, Cx c);

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-() const;
  Polynomial operator-(const Polynomial& rhs) const { return *this + (-rhs); }
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial scaled(Cx s) const;

  // Substitution of one polynomial per variable.
  Polynomial compose(std::span<const Polynomial> subs) const;

  bool operator==(const Polynomial& rhs) const {
    return nvars_ == rhs.nvars_ && terms_ == rhs.terms_;
  }

  std::string str() const;

 private:
  int nvars_;
  TermMap terms_;
};

}  // namespace bundlex::aut
