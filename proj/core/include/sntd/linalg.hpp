#pragma once

// Small dense linear algebra on sntd::Matrix. Sizes here are the Tucker ranks
// and mode dimensions, so everything is straightforward O(n^3).

#include <vector>

#include "sntd/tensor.hpp"

namespace sntd {

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
/// a * b^T
Matrix matmul_bt(const Matrix& a, const Matrix& b);
/// a^T * a
Matrix gram(const Matrix& a);
/// a * a^T
Matrix outer_gram(const Matrix& a);

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// Solves X * S = B for X where S is symmetric positive definite (Cholesky).
/// Throws std::runtime_error if S is not numerically positive definite.
Matrix solve_spd_right(const Matrix& s, const Matrix& b);
/// Solves S * X = B.
Matrix solve_spd(const Matrix& s, const Matrix& b);

struct SymmetricEigen {
  std::vector<double> values;  // descending
  Matrix vectors;              // column k pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Sweeps until the
/// off-diagonal Frobenius norm falls below `tol` times the matrix norm.
SymmetricEigen symmetric_eigen(const Matrix& a, double tol = 1e-12);

}  // namespace sntd
