#include "bundlex/matrix_log.hpp"

#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "bundlex/errors.hpp"
#include "bundlex/types.hpp"

namespace bundlex::aut {

namespace {

constexpr double kBranchEps = 1e-6;      // angular guard band at the cut
constexpr double kCondLimit = 1e8;       // eigenvector basis conditioning
// Computed eigenvalues of a defective block scatter by roughly
// eps^(1/blocksize), so the clustering gate has to be loose. A wrong
// clustering is harmless: the series route is only accepted after
// exponentiating back, otherwise we fall through to diagonalization.
constexpr double kClusterTol = 1e-3;

/* Scalar log whose argument lies in (-pi + eps, pi + eps]. Rotating the
 * argument window by eps keeps the branch stable for eigenvalues straddling
 * the negative real axis while exp(log z) == z stays exact. */
Cx stable_log(Cx z, bool* adjusted) {
  double a = std::arg(z * std::polar(1.0, -kBranchEps)) + kBranchEps;
  if (z.real() < 0.0 && M_PI - std::abs(std::arg(z)) < kBranchEps)
    *adjusted = true;
  return Cx(std::log(std::abs(z)), a);
}

}  // namespace

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& a) { return a.exp(); }

MatrixLogResult matrix_log(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionMismatch("matrix log requires a square matrix");
  const Eigen::Index n = m.rows();

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, true);
  if (es.info() != Eigen::Success)
    throw NonDiagonalizable("eigenvalue iteration failed to converge");
  const Eigen::VectorXcd& lam = es.eigenvalues();
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(lam(i)) <= 1e-14 * scale)
      throw NonDiagonalizable("matrix has a numerically zero eigenvalue");

  // Single-cluster test: all eigenvalues within kClusterTol of their mean.
  Cx mean = lam.mean();
  bool single = true;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(lam(i) - mean) > kClusterTol * (1.0 + std::abs(mean))) {
      single = false;
      break;
    }

  MatrixLogResult result;
  if (single) {
    // M = lambda (I + N); if N is nilpotent the series log(I + N)
    // terminates after n - 1 terms and is exact for defective blocks.
    Eigen::MatrixXcd nmat = m / mean - Eigen::MatrixXcd::Identity(n, n);
    Eigen::MatrixXcd pow = nmat;
    for (Eigen::Index i = 1; i < n; ++i) pow = pow * nmat;  // pow = N^n
    const double nscale = std::pow(1.0 + nmat.cwiseAbs().maxCoeff(), double(n));
    if (pow.cwiseAbs().maxCoeff() <= 1e-8 * nscale) {
      Eigen::MatrixXcd series = Eigen::MatrixXcd::Zero(n, n);
      Eigen::MatrixXcd term = Eigen::MatrixXcd::Identity(n, n);
      for (Eigen::Index i = 1; i < n; ++i) {
        term = term * nmat;
        series += term * (((i % 2) ? 1.0 : -1.0) / double(i));
      }
      bool adjusted = false;
      Eigen::MatrixXcd candidate =
          series + stable_log(mean, &adjusted) * Eigen::MatrixXcd::Identity(n, n);
      if ((candidate.exp() - m).cwiseAbs().maxCoeff() <= 1e-10 * scale) {
        result.log = candidate;
        result.negative_axis_adjusted = adjusted;
        return result;
      }
    }
  }

  const Eigen::MatrixXcd& v = es.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const double smin = svd.singularValues()(n - 1);
  const double cond =
      smin > 0.0 ? svd.singularValues()(0) / smin : std::numeric_limits<double>::infinity();
  if (cond > kCondLimit)
    throw NonDiagonalizable(
        "eigenvector basis too ill-conditioned and the matrix is not a "
        "scalar-plus-nilpotent block");

  Eigen::VectorXcd loglam(n);
  for (Eigen::Index i = 0; i < n; ++i)
    loglam(i) = stable_log(lam(i), &result.negative_axis_adjusted);
  result.log = v * loglam.asDiagonal() * v.fullPivLu().inverse();
  // Defective matrices can present a finite but large eigenvector condition
  // number; accept only logs that actually reproduce the input.
  if ((result.log.exp() - m).cwiseAbs().maxCoeff() > 1e-9 * scale)
    throw NonDiagonalizable(
        "eigendecomposition too inaccurate to produce a usable logarithm");
  return result;
}

}  // namespace bundlex::aut
