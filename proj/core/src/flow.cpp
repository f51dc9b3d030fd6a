#include "bundlex/flow.hpp"

#include "bundlex/errors.hpp"

namespace bundlex::aut {

bool OneParameterFlow::branch_adjusted() const {
  if (const LinearFlow* f = std::get_if<LinearFlow>(&v_)) return f->branch_adjusted;
  if (const AffineFlow* f = std::get_if<AffineFlow>(&v_)) return f->branch_adjusted;
  return false;
}

ElementaryAutomorphism OneParameterFlow::time_map(Cx t) const {
  if (const ShearFlow* f = std::get_if<ShearFlow>(&v_))
    return ElementaryAutomorphism::shear(dim_, f->axis, f->q.scaled(t));
  if (const OverShearFlow* f = std::get_if<OverShearFlow>(&v_))
    return ElementaryAutomorphism::over_shear(dim_, f->axis, f->q.scaled(t));
  if (const LinearFlow* f = std::get_if<LinearFlow>(&v_))
    return ElementaryAutomorphism::affine(matrix_exp(t * f->generator),
                                          Eigen::VectorXcd::Zero(dim_));
  const AffineFlow& f = std::get<AffineFlow>(v_);
  Eigen::MatrixXcd e = matrix_exp(t * f.generator);
  return ElementaryAutomorphism::affine(e.topLeftCorner(dim_, dim_),
                                        e.topRightCorner(dim_, 1).col(0));
}

FiberPoint OneParameterFlow::apply(Cx t, const FiberPoint& z) const {
  if (const ShearFlow* f = std::get_if<ShearFlow>(&v_)) {
    FiberPoint out = z;
    out[static_cast<std::size_t>(f->axis)] += t * f->q.eval(z);
    return out;
  }
  if (const OverShearFlow* f = std::get_if<OverShearFlow>(&v_)) {
    FiberPoint out = z;
    out[static_cast<std::size_t>(f->axis)] *= std::exp(t * f->q.eval(z));
    return out;
  }
  return time_map(t).apply(z);
}

OneParameterFlow recognize_flow(const ElementaryAutomorphism& e) {
  const int n = e.dim();
  if (const Shear* s = std::get_if<Shear>(&e.data()))
    return OneParameterFlow(n, ShearFlow{s->axis, s->q});
  if (const OverShear* o = std::get_if<OverShear>(&e.data()))
    return OneParameterFlow(n, OverShearFlow{o->axis, o->q});

  const Affine& a = std::get<Affine>(e.data());
  try {
    if (a.translation.cwiseAbs().maxCoeff() == 0.0) {
      MatrixLogResult lg = matrix_log(a.matrix);
      return OneParameterFlow(n, LinearFlow{lg.log, lg.negative_axis_adjusted});
    }
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    h.topLeftCorner(n, n) = a.matrix;
    h.topRightCorner(n, 1) = a.translation;
    h(n, n) = Cx(1.0, 0.0);
    MatrixLogResult lg = matrix_log(h);
    // The true log of [[A,b],[0,1]] has a zero bottom row; project away
    // the rounding left by the eigendecomposition so exp(t H) stays affine.
    lg.log.row(n).setZero();
    return OneParameterFlow(n, AffineFlow{lg.log, lg.negative_axis_adjusted});
  } catch (const NonDiagonalizable& err) {
    throw NoKnownFlow(std::string("no one-parameter group found for affine factor: ") +
                      err.what());
  }
}

}  // namespace bundlex::aut
