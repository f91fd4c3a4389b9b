#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "sntd/linalg.hpp"

using namespace sntd;

namespace {

Matrix random_spd(Rng& rng, std::size_t n, double shift) {
  const auto a = oracle::random_matrix(rng, n, n);
  return gram(a) + shift * Matrix::identity(n);
}

}  // namespace

TEST_CASE("products agree with Eigen") {
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const auto a = oracle::random_matrix(rng, 4, 3), b = oracle::random_matrix(rng, 3, 5);
    const auto c = oracle::random_matrix(rng, 6, 3);
    const Eigen::MatrixXd ea = oracle::to_eigen(a);
    CHECK(oracle::max_abs_diff(oracle::to_eigen(matmul(a, b)), ea * oracle::to_eigen(b)) < 1e-14);
    CHECK(oracle::max_abs_diff(oracle::to_eigen(matmul_bt(a, c)), ea * oracle::to_eigen(c).transpose()) < 1e-14);
    CHECK(oracle::max_abs_diff(oracle::to_eigen(gram(a)), ea.transpose() * ea) < 1e-14);
    CHECK(oracle::max_abs_diff(oracle::to_eigen(outer_gram(a)), ea * ea.transpose()) < 1e-14);
    CHECK(oracle::max_abs_diff(oracle::to_eigen(transpose(a)), ea.transpose()) == 0.0);
  }
  CHECK_THROWS_AS(matmul(Matrix(2, 3), Matrix(2, 3)), std::invalid_argument);
}

TEST_CASE("SPD solves agree with Eigen LLT") {
  Rng rng(2);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.uniform_index(6);
    const auto s = random_spd(rng, n, 0.5);
    const auto b = oracle::random_matrix(rng, n, 3);
    const Eigen::MatrixXd es = oracle::to_eigen(s);
    const Eigen::MatrixXd x = es.llt().solve(oracle::to_eigen(b));
    CHECK(oracle::max_abs_diff(oracle::to_eigen(solve_spd(s, b)), x) < 1e-10);
    const auto br = oracle::random_matrix(rng, 4, n);
    const Eigen::MatrixXd xr = es.llt().solve(oracle::to_eigen(br).transpose()).transpose();
    CHECK(oracle::max_abs_diff(oracle::to_eigen(solve_spd_right(s, br)), xr) < 1e-10);
  }
  CHECK_THROWS_AS(solve_spd(Matrix::from_rows({{1, 2}, {2, 1}}), Matrix(2, 1, 1.0)), std::runtime_error);
}

TEST_CASE("Jacobi eigensolver matches Eigen's self-adjoint solver") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 1 + rng.uniform_index(8);
    const auto a = oracle::random_matrix(rng, n, n);
    const auto s = a + transpose(a);
    const auto eig = symmetric_eigen(s);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(oracle::to_eigen(s));
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(eig.values[k] == doctest::Approx(ref.eigenvalues()(n - 1 - k)).epsilon(1e-10).scale(1.0));
      if (k > 0) CHECK(eig.values[k - 1] >= eig.values[k]);
    }
    const Eigen::MatrixXd v = oracle::to_eigen(eig.vectors);
    CHECK(oracle::max_abs_diff(v.transpose() * v, Eigen::MatrixXd::Identity(n, n)) < 1e-10);
    Eigen::VectorXd lam(n);
    for (std::size_t k = 0; k < n; ++k) lam(k) = eig.values[k];
    CHECK(oracle::max_abs_diff(v * lam.asDiagonal() * v.transpose(), oracle::to_eigen(s)) < 1e-10);
  }
}
