#pragma once

// Dense order-d tensors and the Tucker algebra.
//
// Storage follows the vectorization order: entry (i_0, ..., i_{d-1}) (0-based)
// lives at linear offset sum_k i_k * stride_k with stride_k = n_0 * ... * n_{k-1},
// i.e. the first index varies fastest. Matrices are order-2 tensors in the same
// (column-major) layout. All modes in this API are 0-based.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace sntd {

class Shape {
 public:
  Shape() = default;
  explicit Shape(std::vector<std::size_t> dims);
  Shape(std::initializer_list<std::size_t> dims);

  std::size_t order() const { return dims_.size(); }
  std::size_t dim(std::size_t mode) const { return dims_.at(mode); }
  std::size_t total() const { return total_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t max_dim() const;

  /// Linear offset of a 0-based multi-index.
  std::size_t offset(std::span<const std::size_t> index) const;
  /// Inverse of offset().
  std::vector<std::size_t> multi_index(std::size_t offset) const;

  /// Same shape with dimension `mode` replaced by `extent`.
  Shape with_dim(std::size_t mode, std::size_t extent) const;

  friend bool operator==(const Shape&, const Shape&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 0;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  static Matrix identity(std::size_t n);
  /// Row-major nested initializer, convenient for tests: {{1,2},{3,4}}.
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }

  double& operator()(std::size_t i, std::size_t j) { return values_[i + j * rows_]; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i + j * rows_]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

class DenseTensor {
 public:
  DenseTensor() = default;
  explicit DenseTensor(Shape shape, double fill = 0.0);
  DenseTensor(Shape shape, std::vector<double> values);

  const Shape& shape() const { return shape_; }
  std::size_t order() const { return shape_.order(); }
  std::size_t size() const { return values_.size(); }

  double& operator[](std::size_t offset) { return values_[offset]; }
  double operator[](std::size_t offset) const { return values_[offset]; }
  double& at(std::span<const std::size_t> index) { return values_[shape_.offset(index)]; }
  double at(std::span<const std::size_t> index) const { return values_[shape_.offset(index)]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vec() const { return values_; }

  friend bool operator==(const DenseTensor&, const DenseTensor&) = default;

 private:
  Shape shape_;
  std::vector<double> values_;
};

/// Tucker model X = core x_1 A_1 x_2 ... x_d A_d with the amplitude bounds of
/// the feasible set: 0 <= core <= 1, 0 <= A_i <= a_i, 0 <= X <= c.
struct TuckerModel {
  DenseTensor core;
  std::vector<Matrix> factors;
  std::vector<double> amplitude_bounds;
  double entry_bound = 1.0;

  std::size_t order() const { return factors.size(); }
  Shape full_shape() const;
  std::vector<std::size_t> ranks() const { return core.shape().dims(); }

  /// Throws std::invalid_argument on any dimensional inconsistency.
  void validate() const;
  /// Entry bounds of the feasible set, checked with slack `tol`. The
  /// reconstruction bound is only checked when `check_reconstruction` is set.
  bool is_feasible(double tol = 0.0, bool check_reconstruction = true) const;
};

Matrix unfold(const DenseTensor& x, std::size_t mode);
DenseTensor fold(const Matrix& m, std::size_t mode, const Shape& shape);

/// (c x_mode a): contracts dimension `mode` of c with the columns of a.
DenseTensor mode_product(const DenseTensor& c, const Matrix& a, std::size_t mode);
/// Same as mode_product(c, transpose(a), mode) without forming the transpose.
DenseTensor mode_product_transposed(const DenseTensor& c, const Matrix& a, std::size_t mode);

/// Applies factors[k] along every mode k != skip, in ascending mode order.
/// With `transposed`, applies factors[k]^T instead.
DenseTensor multi_mode_product(const DenseTensor& c, std::span<const Matrix> factors,
                               bool transposed = false,
                               std::size_t skip = static_cast<std::size_t>(-1));

DenseTensor tucker_reconstruct(const DenseTensor& core, std::span<const Matrix> factors);
DenseTensor tucker_reconstruct(const TuckerModel& model);

Matrix kron(const Matrix& a, const Matrix& b);

double frobenius_norm(std::span<const double> values);
double infinity_norm(std::span<const double> values);
double inner(std::span<const double> x, std::span<const double> y);

inline double frobenius_norm(const DenseTensor& x) { return frobenius_norm(x.values()); }
inline double frobenius_norm(const Matrix& x) { return frobenius_norm(x.values()); }
inline double infinity_norm(const DenseTensor& x) { return infinity_norm(x.values()); }
inline double infinity_norm(const Matrix& x) { return infinity_norm(x.values()); }
double inner(const DenseTensor& x, const DenseTensor& y);

/// ||xhat - xstar||_F / ||xstar||_F.
double relative_error(const DenseTensor& xhat, const DenseTensor& xstar);
/// ||x - y||_F for same-shaped arrays.
double distance(std::span<const double> x, std::span<const double> y);

}  // namespace sntd
