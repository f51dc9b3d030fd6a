#include "doctest.h"

#include <Eigen/Dense>

#include "bundlex/errors.hpp"
#include "bundlex/matrix_log.hpp"
#include "bundlex/rng.hpp"
#include "oracles.hpp"

using bundlex::Cx;
using bundlex::aut::matrix_log;

namespace {

double mat_dist(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("log of a quarter rotation") {
  Eigen::MatrixXcd j(2, 2);
  j << Cx(0, 0), Cx(-1, 0), Cx(1, 0), Cx(0, 0);
  auto r = matrix_log(j);
  Eigen::MatrixXcd expect = (M_PI / 2.0) * j;
  CHECK(mat_dist(r.log, expect) < 1e-9);
  CHECK_FALSE(r.negative_axis_adjusted);
}

TEST_CASE("log of a unipotent shear is exact") {
  Eigen::MatrixXcd u(2, 2);
  u << Cx(1, 0), Cx(1, 0), Cx(0, 0), Cx(1, 0);
  auto r = matrix_log(u);
  Eigen::MatrixXcd expect(2, 2);
  expect << Cx(0, 0), Cx(1, 0), Cx(0, 0), Cx(0, 0);
  CHECK(mat_dist(r.log, expect) < 1e-13);
}

TEST_CASE("exp of log recovers the swap-with-phase matrix") {
  Eigen::MatrixXcd m(2, 2);
  m << Cx(0, 0), Cx(0, 1), Cx(1, 0), Cx(0, 0);
  auto r = matrix_log(m);
  CHECK(mat_dist(oracle::exp_series(r.log), m) < 1e-9);
}

TEST_CASE("negative real eigenvalues land just above the cut") {
  Eigen::MatrixXcd m = -2.0 * Eigen::MatrixXcd::Identity(2, 2);
  auto r = matrix_log(m);
  CHECK(r.negative_axis_adjusted);
  // imaginary part of log(-2) should be close to +pi, not -pi
  CHECK(r.log(0, 0).imag() > 3.0);
  CHECK(mat_dist(oracle::exp_series(r.log), m) < 1e-9);
}

TEST_CASE("defective matrix with distinct blocks is rejected") {
  Eigen::MatrixXcd m(3, 3);
  m << Cx(1, 0), Cx(1, 0), Cx(0, 0),
       Cx(0, 0), Cx(1, 0), Cx(0, 0),
       Cx(0, 0), Cx(0, 0), Cx(2, 0);
  CHECK_THROWS_AS(matrix_log(m), bundlex::NonDiagonalizable);
}

TEST_CASE("zero eigenvalue is rejected") {
  Eigen::MatrixXcd m(2, 2);
  m << Cx(1, 0), Cx(0, 0), Cx(0, 0), Cx(0, 0);
  CHECK_THROWS_AS(matrix_log(m), bundlex::NonDiagonalizable);
}

TEST_CASE("exp of log round trips on random well conditioned matrices") {
  bundlex::Rng rng(37, "matlog-roundtrip");
  int done = 0;
  while (done < 150) {
    int n = 2 + static_cast<int>(rng.uniform01() * 2.0);
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) m(r, c) = rng.disc(1.0);
    m += 1.5 * Eigen::MatrixXcd::Identity(n, n);  // keep eigenvalues off zero
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
    if (es.info() != Eigen::Success) continue;
    if (es.eigenvalues().cwiseAbs().minCoeff() < 0.3) continue;
    bundlex::aut::MatrixLogResult r;
    try {
      r = matrix_log(m);
    } catch (const bundlex::NonDiagonalizable&) {
      continue;
    }
    CHECK(mat_dist(oracle::exp_series(r.log), m) <
          1e-9 * (1.0 + m.cwiseAbs().maxCoeff()));
    ++done;
  }
}

TEST_CASE("scaled identity takes the exact unipotent route") {
  Eigen::MatrixXcd m = Cx(0, 2) * Eigen::MatrixXcd::Identity(3, 3);
  auto r = matrix_log(m);
  // log(2i) = log 2 + i pi/2 on the diagonal, zero off diagonal
  Cx expect = Cx(std::log(2.0), M_PI / 2.0);
  CHECK(std::abs(r.log(0, 0) - expect) < 1e-13);
  CHECK(std::abs(r.log(0, 1)) == 0.0);
}

TEST_CASE("single eigenvalue with nilpotent part uses the finite series") {
  // 3x3 Jordan block at eigenvalue 2 is defective but handled exactly
  Eigen::MatrixXcd m(3, 3);
  m << Cx(2, 0), Cx(1, 0), Cx(0, 0),
       Cx(0, 0), Cx(2, 0), Cx(1, 0),
       Cx(0, 0), Cx(0, 0), Cx(2, 0);
  auto r = matrix_log(m);
  CHECK(mat_dist(oracle::exp_series(r.log), m) < 1e-12);
}
