#include "sntd/hosvd.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sntd/linalg.hpp"

namespace sntd {

std::size_t RankVector::product() const {
  std::size_t p = 1;
  for (auto r : ranks_) p *= r;
  return p;
}

void RankVector::validate_for(const Shape& shape) const {
  if (ranks_.size() != shape.order()) {
    throw std::invalid_argument("rank vector length does not match tensor order");
  }
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (ranks_[i] < 1 || ranks_[i] > shape.dim(i)) {
      throw std::invalid_argument("rank " + std::to_string(ranks_[i]) + " out of range for mode " +
                                  std::to_string(i) + " of size " + std::to_string(shape.dim(i)));
    }
  }
}

namespace {

// Leading r eigenvectors of m m^T with the sign convention applied.
Matrix top_left_vectors(const Matrix& m, std::size_t r) {
  const auto eig = symmetric_eigen(outer_gram(m));
  Matrix u(m.rows(), r);
  for (std::size_t k = 0; k < r; ++k) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < m.rows(); ++i) {
      if (std::abs(eig.vectors(i, k)) > std::abs(eig.vectors(arg, k))) arg = i;
    }
    const double sign = eig.vectors(arg, k) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) u(i, k) = sign * eig.vectors(i, k);
  }
  return u;
}

}  // namespace

Matrix leading_left_singular_vectors(const Matrix& m, std::size_t r) {
  if (r < 1 || r > m.rows() || r > m.cols()) {
    throw std::invalid_argument("leading_left_singular_vectors: r out of range");
  }
  return top_left_vectors(m, r);
}

TuckerModel st_hosvd(const DenseTensor& x, const RankVector& ranks) {
  ranks.validate_for(x.shape());
  TuckerModel model;
  DenseTensor current = x;
  model.factors.reserve(x.order());
  for (std::size_t n = 0; n < x.order(); ++n) {
    // A rank above the column count of the truncated unfolding is still valid
    // (r_n <= n_n); the extra columns span the null space of the Gram matrix.
    Matrix u = top_left_vectors(unfold(current, n), ranks[n]);
    current = mode_product_transposed(current, u, n);
    model.factors.push_back(std::move(u));
  }
  model.core = std::move(current);
  model.entry_bound = infinity_norm(x);
  return model;
}

}  // namespace sntd
