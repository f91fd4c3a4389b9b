#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "sntd/hosvd.hpp"
#include "sntd/linalg.hpp"

using namespace sntd;

namespace {

Eigen::MatrixXd projector(const Matrix& u) {
  const Eigen::MatrixXd e = oracle::to_eigen(u);
  return e * e.transpose();
}

TuckerModel random_model(Rng& rng, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& ranks) {
  TuckerModel m;
  m.core = oracle::random_tensor(rng, Shape(ranks), 0.0, 1.0);
  for (std::size_t i = 0; i < dims.size(); ++i) m.factors.push_back(oracle::random_matrix(rng, dims[i], ranks[i], 0.0, 1.0));
  m.amplitude_bounds.assign(dims.size(), 1.0);
  return m;
}

}  // namespace

TEST_CASE("rank vector") {
  RankVector r{2, 3, 4};
  CHECK(r.product() == 24);
  CHECK_NOTHROW(r.validate_for(Shape{2, 3, 4}));
  CHECK_THROWS_AS(r.validate_for(Shape{2, 2, 4}), std::invalid_argument);
  CHECK_THROWS_AS(RankVector({0, 1, 1}).validate_for(Shape{2, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(r.validate_for(Shape{2, 3}), std::invalid_argument);
}

TEST_CASE("leading singular vectors of the identity and a rank-1 matrix") {
  const auto u = leading_left_singular_vectors(Matrix::identity(3), 2);
  const Eigen::MatrixXd p = projector(u);
  CHECK(oracle::max_abs_diff(p * p, p) < 1e-10);
  CHECK(std::abs(p.trace() - 2.0) < 1e-10);

  Matrix uv(4, 3);
  const double uvec[4] = {1, -2, 0.5, 3}, vvec[3] = {2, 1, -1};
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) uv(i, j) = uvec[i] * vvec[j];
  const auto u1 = leading_left_singular_vectors(uv, 1);
  Eigen::Vector4d ue(1, -2, 0.5, 3);
  CHECK(oracle::max_abs_diff(projector(u1), ue * ue.transpose() / ue.squaredNorm()) < 1e-10);
  // Sign convention: largest-magnitude entry nonnegative.
  CHECK(u1(3, 0) > 0.0);
  CHECK_THROWS_AS(leading_left_singular_vectors(uv, 4), std::invalid_argument);
  CHECK_THROWS_AS(leading_left_singular_vectors(uv, 0), std::invalid_argument);
}

TEST_CASE("leading singular subspace is optimal (Eckart-Young)") {
  Rng rng(8);
  const auto m = oracle::random_matrix(rng, 20, 30);
  const auto u = leading_left_singular_vectors(m, 5);
  const Eigen::MatrixXd em = oracle::to_eigen(m);
  const Eigen::MatrixXd eu = oracle::to_eigen(u);
  CHECK(oracle::max_abs_diff(eu.transpose() * eu, Eigen::MatrixXd::Identity(5, 5)) < 1e-10);
  const double err = (em - eu * eu.transpose() * em).norm();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(em, Eigen::ComputeThinU);
  const Eigen::MatrixXd ref = svd.matrixU().leftCols(5);
  CHECK(oracle::max_abs_diff(eu * eu.transpose(), ref * ref.transpose()) < 1e-9);
  for (int t = 0; t < 100; ++t) {
    const Eigen::MatrixXd q = oracle::to_eigen(oracle::random_matrix(rng, 20, 5)).householderQr().householderQ() *
                              Eigen::MatrixXd::Identity(20, 5);
    CHECK(err <= (em - q * q.transpose() * em).norm() + 1e-12);
  }
}

TEST_CASE("st-hosvd recovers exact-rank tensors") {
  Rng rng(10);
  for (int t = 0; t < 10; ++t) {
    const auto model = random_model(rng, {6, 5, 7}, {2, 3, 2});
    const auto x = tucker_reconstruct(model);
    const auto h = st_hosvd(x, RankVector{2, 3, 2});
    CHECK(relative_error(tucker_reconstruct(h), x) <= 1e-8);
    for (const auto& f : h.factors) {
      const Eigen::MatrixXd e = oracle::to_eigen(f);
      CHECK(oracle::max_abs_diff(e.transpose() * e, Eigen::MatrixXd::Identity(f.cols(), f.cols())) < 1e-10);
    }
    CHECK(h.amplitude_bounds.empty());
  }
}

TEST_CASE("st-hosvd edge cases") {
  Rng rng(12);
  const auto x = oracle::random_tensor(rng, Shape{3, 4, 2});
  const auto full = st_hosvd(x, RankVector{3, 4, 2});
  CHECK(oracle::max_abs_diff(oracle::to_eigen(tucker_reconstruct(full)), oracle::to_eigen(x)) < 1e-10);
  const DenseTensor zero(Shape{3, 4, 2});
  const auto hz = st_hosvd(zero, RankVector{2, 2, 1});
  CHECK(infinity_norm(hz.core) == 0.0);
  CHECK(infinity_norm(tucker_reconstruct(hz)) == 0.0);
  CHECK_THROWS_AS(st_hosvd(x, RankVector{4, 1, 1}), std::invalid_argument);
  CHECK(st_hosvd(x, RankVector{2, 2, 2}).core == st_hosvd(x, RankVector{2, 2, 2}).core);
}

TEST_CASE("st-hosvd truncation error is monotone in the ranks") {
  Rng rng(14);
  for (int t = 0; t < 10; ++t) {
    auto x = tucker_reconstruct(random_model(rng, {6, 6, 6}, {4, 4, 4}));
    for (auto& v : x.values()) v += 0.01 * (rng.uniform() - 0.5);
    double prev = 1e300;
    for (std::size_t r = 1; r <= 6; ++r) {
      const double e = relative_error(tucker_reconstruct(st_hosvd(x, RankVector{r, r, r})), x);
      CHECK(e <= prev + 1e-12);
      prev = e;
    }
  }
}
