#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "sntd/tensor.hpp"

namespace sntd {

/// Tucker rank (r_1, ..., r_d).
class RankVector {
 public:
  RankVector() = default;
  explicit RankVector(std::vector<std::size_t> ranks) : ranks_(std::move(ranks)) {}
  RankVector(std::initializer_list<std::size_t> ranks) : ranks_(ranks) {}

  std::size_t size() const { return ranks_.size(); }
  std::size_t operator[](std::size_t i) const { return ranks_[i]; }
  const std::vector<std::size_t>& values() const { return ranks_; }
  std::size_t product() const;

  /// Throws std::invalid_argument unless 1 <= r_i <= n_i for every mode.
  void validate_for(const Shape& shape) const;

  friend bool operator==(const RankVector&, const RankVector&) = default;

 private:
  std::vector<std::size_t> ranks_;
};

/// Top-r left singular vectors of m, computed from the eigendecomposition of
/// m m^T. Each column is flipped so its largest-magnitude entry is >= 0.
Matrix leading_left_singular_vectors(const Matrix& m, std::size_t r);

/// Sequentially truncated HOSVD, truncating modes in ascending order. Factors
/// have orthonormal columns; the core is x projected onto them. Amplitude
/// bounds are left empty and the entry bound is ||x||_inf.
TuckerModel st_hosvd(const DenseTensor& x, const RankVector& ranks);

}  // namespace sntd
