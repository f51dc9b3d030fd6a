#include "bundlex/automorphism.hpp"

#include <cmath>

#include "bundlex/errors.hpp"
#include "bundlex/rng.hpp"

namespace bundlex::aut {

namespace {

/* Scale-invariant invertibility guard: |det M| must exceed 1e-12 times the
 * product of row sup-norms (a Hadamard-type bound on |det|), so uniformly
 * scaling M cannot flip the verdict. */
void require_invertible(const Eigen::MatrixXcd& m) {
  const Eigen::Index n = m.rows();
  double scale = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double row = m.row(i).cwiseAbs().maxCoeff();
    if (row == 0.0) throw InvalidAutomorphism("affine matrix has a zero row");
    scale *= row;
  }
  const double det = std::abs(Eigen::FullPivLU<Eigen::MatrixXcd>(m).determinant());
  if (det <= 1e-12 * scale)
    throw InvalidAutomorphism("affine matrix is numerically singular");
}

void require_axis_free(int dim, int axis, const Polynomial& q) {
  if (axis < 0 || axis >= dim) throw DimensionMismatch("shear axis out of range");
  if (q.nvars() != dim)
    throw DimensionMismatch("shear polynomial variable count does not match dimension");
  if (q.involves(axis))
    throw InvalidAutomorphism("shear polynomial involves the axis variable");
}

bool poly_negates(const Polynomial& a, const Polynomial& b, double tol) {
  if (a.nvars() != b.nvars() || a.terms().size() != b.terms().size()) return false;
  auto ib = b.terms().begin();
  for (const auto& [e, c] : a.terms()) {
    if (ib->first != e || std::abs(ib->second + c) > tol) return false;
    ++ib;
  }
  return true;
}

}  // namespace

ElementaryAutomorphism ElementaryAutomorphism::affine(Eigen::MatrixXcd m,
                                                      Eigen::VectorXcd b) {
  if (m.rows() != m.cols() || m.rows() != b.size())
    throw DimensionMismatch("affine matrix and translation sizes disagree");
  if (m.rows() == 0) throw DimensionMismatch("affine map of dimension zero");
  require_invertible(m);
  const int n = static_cast<int>(m.rows());  // read before the moves below
  return ElementaryAutomorphism(n, Affine{std::move(m), std::move(b)});
}

ElementaryAutomorphism ElementaryAutomorphism::shear(int dim, int axis, Polynomial q) {
  require_axis_free(dim, axis, q);
  return ElementaryAutomorphism(dim, Shear{axis, std::move(q)});
}

ElementaryAutomorphism ElementaryAutomorphism::over_shear(int dim, int axis,
                                                          Polynomial q) {
  require_axis_free(dim, axis, q);
  return ElementaryAutomorphism(dim, OverShear{axis, std::move(q)});
}

ElementaryAutomorphism ElementaryAutomorphism::identity(int dim) {
  return affine(Eigen::MatrixXcd::Identity(dim, dim), Eigen::VectorXcd::Zero(dim));
}

FiberPoint ElementaryAutomorphism::apply(const FiberPoint& z) const {
  if (static_cast<int>(z.size()) != dim_)
    throw DimensionMismatch("fiber point dimension does not match automorphism");
  if (const Affine* a = std::get_if<Affine>(&v_)) {
    Eigen::VectorXcd v(dim_);
    for (int i = 0; i < dim_; ++i) v(i) = z[static_cast<std::size_t>(i)];
    Eigen::VectorXcd w = a->matrix * v + a->translation;
    FiberPoint out(z.size());
    for (int i = 0; i < dim_; ++i) out[static_cast<std::size_t>(i)] = w(i);
    return out;
  }
  if (const Shear* s = std::get_if<Shear>(&v_)) {
    FiberPoint out = z;
    out[static_cast<std::size_t>(s->axis)] += s->q.eval(z);
    return out;
  }
  const OverShear& o = std::get<OverShear>(v_);
  FiberPoint out = z;
  out[static_cast<std::size_t>(o.axis)] *= std::exp(o.q.eval(z));
  return out;
}

ElementaryAutomorphism ElementaryAutomorphism::inverse() const {
  if (const Affine* a = std::get_if<Affine>(&v_)) {
    Eigen::MatrixXcd mi = a->matrix.fullPivLu().inverse();
    return affine(mi, -(mi * a->translation));
  }
  if (const Shear* s = std::get_if<Shear>(&v_))
    return shear(dim_, s->axis, -s->q);
  const OverShear& o = std::get<OverShear>(v_);
  return over_shear(dim_, o.axis, -o.q);
}

bool ElementaryAutomorphism::is_structural_inverse_of(
    const ElementaryAutomorphism& other, double tol) const {
  if (dim_ != other.dim_) return false;
  if (const Shear* s = std::get_if<Shear>(&v_)) {
    const Shear* t = std::get_if<Shear>(&other.v_);
    return t && s->axis == t->axis && poly_negates(s->q, t->q, tol);
  }
  if (const OverShear* s = std::get_if<OverShear>(&v_)) {
    const OverShear* t = std::get_if<OverShear>(&other.v_);
    return t && s->axis == t->axis && poly_negates(s->q, t->q, tol);
  }
  const Affine& a = std::get<Affine>(v_);
  const Affine* b = std::get_if<Affine>(&other.v_);
  if (!b) return false;
  double scale = std::max(1.0, a.matrix.cwiseAbs().maxCoeff());
  if (((b->matrix * a.matrix) - Eigen::MatrixXcd::Identity(dim_, dim_))
          .cwiseAbs()
          .maxCoeff() > tol * scale)
    return false;
  return (b->matrix * a.translation + b->translation).cwiseAbs().maxCoeff() <=
         tol * std::max(1.0, a.translation.cwiseAbs().maxCoeff());
}

AutomorphismWord::AutomorphismWord(int dim,
                                   std::vector<ElementaryAutomorphism> factors)
    : dim_(dim), factors_(std::move(factors)) {
  for (const auto& e : factors_)
    if (e.dim() != dim_)
      throw DimensionMismatch("word factor dimension does not match word");
}

void AutomorphismWord::push_back(ElementaryAutomorphism e) {
  if (e.dim() != dim_)
    throw DimensionMismatch("word factor dimension does not match word");
  factors_.push_back(std::move(e));
}

void AutomorphismWord::append(const AutomorphismWord& w) {
  if (w.dim() != dim_) throw DimensionMismatch("word dimensions differ");
  for (const auto& e : w.factors()) factors_.push_back(e);
}

FiberPoint eval_word(const AutomorphismWord& w, const FiberPoint& z) {
  if (static_cast<int>(z.size()) != w.dim())
    throw DimensionMismatch("fiber point dimension does not match word");
  FiberPoint out = z;
  for (const auto& e : w.factors()) out = e.apply(out);
  return out;
}

AutomorphismWord invert_word(const AutomorphismWord& w) {
  AutomorphismWord out(w.dim());
  for (auto it = w.factors().rbegin(); it != w.factors().rend(); ++it)
    out.push_back(it->inverse());
  return out;
}

AutomorphismWord concat(const AutomorphismWord& w1, const AutomorphismWord& w2) {
  AutomorphismWord out = w1;
  out.append(w2);
  return out;
}

AutomorphismWord reduce_word(const AutomorphismWord& w) {
  std::vector<ElementaryAutomorphism> stack;
  for (const auto& e : w.factors()) {
    if (!stack.empty() && e.is_structural_inverse_of(stack.back()))
      stack.pop_back();
    else
      stack.push_back(e);
  }
  return AutomorphismWord(w.dim(), std::move(stack));
}

ExpandedWord expand_polynomial(const AutomorphismWord& w) {
  const int n = w.dim();
  std::vector<Polynomial> comps;
  comps.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) comps.push_back(Polynomial::variable(n, i));
  for (const auto& e : w.factors()) {
    if (const Affine* a = std::get_if<Affine>(&e.data())) {
      std::vector<Polynomial> next;
      next.reserve(comps.size());
      for (int i = 0; i < n; ++i) {
        Polynomial row = Polynomial::constant(n, a->translation(i));
        for (int j = 0; j < n; ++j)
          row = row + comps[static_cast<std::size_t>(j)].scaled(a->matrix(i, j));
        next.push_back(std::move(row));
      }
      comps = std::move(next);
    } else if (const Shear* s = std::get_if<Shear>(&e.data())) {
      comps[static_cast<std::size_t>(s->axis)] =
          comps[static_cast<std::size_t>(s->axis)] + s->q.compose(comps);
    } else {
      throw TranscendentalWord("word contains an over-shear; expansion is not polynomial");
    }
  }
  int deg = 0;
  for (const auto& p : comps) deg = std::max(deg, p.degree());
  return ExpandedWord{std::move(comps), deg};
}

bool words_agree(const AutomorphismWord& a, const AutomorphismWord& b, int samples,
                 double tol, std::uint64_t seed) {
  if (a.dim() != b.dim()) return false;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    FiberPoint z = rng.polydisc(a.dim(), 2.0);
    if (relative_residual(eval_word(a, z), eval_word(b, z)) > tol) return false;
  }
  return true;
}

AutomorphismWord henon_word(int k) {
  if (k < 1) throw Error("henon word requires exponent k >= 1");
  Eigen::MatrixXcd rot(2, 2);
  rot << Cx(0, 0), Cx(1, 0), Cx(-1, 0), Cx(0, 0);
  Polynomial q = Polynomial::monomial(
      2, {static_cast<unsigned>(k), 0u}, Cx(1.0, 0.0));
  AutomorphismWord w(2);
  w.push_back(ElementaryAutomorphism::affine(rot, Eigen::VectorXcd::Zero(2)));
  w.push_back(ElementaryAutomorphism::shear(2, 1, std::move(q)));
  return w;
}

}  // namespace bundlex::aut
