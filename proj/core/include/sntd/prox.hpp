#pragma once

#include <span>

#include "sntd/tensor.hpp"

namespace sntd {

/// Closed interval [lo, hi].
struct Box {
  double lo = 0.0;
  double hi = 1.0;

  Box() = default;
  Box(double lo_, double hi_);

  double clamp(double v) const { return v < lo ? lo : (v > hi ? hi : v); }
};

/// Scalar proximal map of lam * ||.||_0: zero when |y| <= sqrt(2 lam), y
/// otherwise. The tie |y| == sqrt(2 lam) resolves to zero.
double hard_threshold(double y, double lam);

/// Elementwise hard threshold with parameter lam_over_rho (> 0).
Matrix hard_threshold_matrix(const Matrix& m, double lam_over_rho);

/// Same as hard_threshold_matrix but also admits lam_over_rho == 0, which is
/// the identity map (no sparsity penalty).
Matrix hard_threshold_or_identity(const Matrix& m, double lam_over_rho);

void box_project_inplace(std::span<double> values, const Box& box);
DenseTensor box_project(DenseTensor t, const Box& box);
Matrix box_project(Matrix m, const Box& box);

}  // namespace sntd
