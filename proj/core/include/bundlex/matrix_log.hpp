#pragma once

#include <Eigen/Dense>

namespace bundlex::aut {

struct MatrixLogResult {
  Eigen::MatrixXcd log;
  // True when an eigenvalue lay within angle 1e-6 of the negative real
  // axis, where the branch choice is forced rather than canonical.
  bool negative_axis_adjusted = false;
};

/* Logarithm with exp(result.log) == M to 1e-9 (entrywise, relative).
 *
 * Route 1: all eigenvalues form one cluster and M - lambda I is nilpotent;
 * the finite series log(I + N) applies and is exact for Jordan blocks.
 * Route 2: eigenvector basis with condition number <= 1e8; diagonalize and
 * take scalar logs with a deterministic branch (arguments in
 * (-pi + eps, pi + eps], eps = 1e-6, so values just below the negative
 * real axis do not flip branch between nearby inputs).
 * Otherwise: NonDiagonalizable. */
MatrixLogResult matrix_log(const Eigen::MatrixXcd& m);

// Scaling-and-squaring exponential (Pade via Eigen's implementation).
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a);

}  // namespace bundlex::aut
