#include "sntd/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sntd {

namespace {

std::size_t product(const std::vector<std::size_t>& dims, std::size_t begin, std::size_t end) {
  std::size_t p = 1;
  for (std::size_t k = begin; k < end; ++k) p *= dims[k];
  return p;
}

void check_mode(std::size_t mode, std::size_t order) {
  if (mode >= order) {
    throw std::out_of_range("mode " + std::to_string(mode) + " out of range for order " +
                            std::to_string(order));
  }
}

}  // namespace

// Shape ----------------------------------------------------------------------

Shape::Shape(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw std::invalid_argument("shape must have order >= 1");
  total_ = 1;
  for (auto n : dims_) {
    if (n == 0) throw std::invalid_argument("shape dimensions must be >= 1");
    total_ *= n;
  }
}

Shape::Shape(std::initializer_list<std::size_t> dims) : Shape(std::vector<std::size_t>(dims)) {}

std::size_t Shape::max_dim() const {
  return dims_.empty() ? 0 : *std::max_element(dims_.begin(), dims_.end());
}

std::size_t Shape::offset(std::span<const std::size_t> index) const {
  if (index.size() != dims_.size()) throw std::invalid_argument("index order mismatch");
  std::size_t off = 0;
  std::size_t stride = 1;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (index[k] >= dims_[k]) throw std::out_of_range("tensor index out of range");
    off += index[k] * stride;
    stride *= dims_[k];
  }
  return off;
}

std::vector<std::size_t> Shape::multi_index(std::size_t offset) const {
  if (offset >= total_) throw std::out_of_range("linear offset out of range");
  std::vector<std::size_t> idx(dims_.size());
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    idx[k] = offset % dims_[k];
    offset /= dims_[k];
  }
  return idx;
}

Shape Shape::with_dim(std::size_t mode, std::size_t extent) const {
  check_mode(mode, order());
  auto dims = dims_;
  dims[mode] = extent;
  return Shape(std::move(dims));
}

// Matrix ---------------------------------------------------------------------

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) throw std::invalid_argument("matrix value count mismatch");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r == 0 ? 0 : rows.begin()->size();
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("ragged matrix rows");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

// DenseTensor ----------------------------------------------------------------

DenseTensor::DenseTensor(Shape shape, double fill)
    : shape_(std::move(shape)), values_(shape_.total(), fill) {}

DenseTensor::DenseTensor(Shape shape, std::vector<double> values)
    : shape_(std::move(shape)), values_(std::move(values)) {
  if (values_.size() != shape_.total()) {
    throw std::invalid_argument("tensor value count does not match shape");
  }
}

// TuckerModel ----------------------------------------------------------------

Shape TuckerModel::full_shape() const {
  std::vector<std::size_t> dims;
  dims.reserve(factors.size());
  for (const auto& a : factors) dims.push_back(a.rows());
  return Shape(std::move(dims));
}

void TuckerModel::validate() const {
  if (factors.size() != core.order()) {
    throw std::invalid_argument("Tucker model: factor count does not match core order");
  }
  if (!amplitude_bounds.empty() && amplitude_bounds.size() != factors.size()) {
    throw std::invalid_argument("Tucker model: amplitude bound count mismatch");
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].cols() != core.shape().dim(i)) {
      throw std::invalid_argument("Tucker model: factor " + std::to_string(i) +
                                  " column count does not match core dimension");
    }
    if (factors[i].cols() > factors[i].rows()) {
      throw std::invalid_argument("Tucker model: rank exceeds dimension in mode " +
                                  std::to_string(i));
    }
  }
}

bool TuckerModel::is_feasible(double tol, bool check_reconstruction) const {
  validate();
  if (amplitude_bounds.size() != factors.size()) return false;
  for (double v : core.values()) {
    if (v < -tol || v > 1.0 + tol) return false;
  }
  for (std::size_t i = 0; i < factors.size(); ++i) {
    for (double v : factors[i].values()) {
      if (v < -tol || v > amplitude_bounds[i] + tol) return false;
    }
  }
  if (check_reconstruction) {
    const auto x = tucker_reconstruct(*this);
    for (double v : x.values()) {
      if (v < -tol || v > entry_bound + tol) return false;
    }
  }
  return true;
}

// Unfolding ------------------------------------------------------------------
//
// With left = n_0...n_{mode-1} and right = n_{mode+1}...n_{d-1}, entry
// (l, i, r) sits at l + i*left + r*left*n_mode and its mode unfolding column is
// l + r*left, which is the column index j of the standard index map.

Matrix unfold(const DenseTensor& x, std::size_t mode) {
  const auto& dims = x.shape().dims();
  check_mode(mode, dims.size());
  const std::size_t left = product(dims, 0, mode);
  const std::size_t nn = dims[mode];
  const std::size_t right = product(dims, mode + 1, dims.size());
  Matrix m(nn, left * right);
  const double* src = x.values().data();
  for (std::size_t r = 0; r < right; ++r) {
    for (std::size_t i = 0; i < nn; ++i) {
      const double* fiber = src + i * left + r * left * nn;
      for (std::size_t l = 0; l < left; ++l) m(i, l + r * left) = fiber[l];
    }
  }
  return m;
}

DenseTensor fold(const Matrix& m, std::size_t mode, const Shape& shape) {
  const auto& dims = shape.dims();
  check_mode(mode, dims.size());
  const std::size_t left = product(dims, 0, mode);
  const std::size_t nn = dims[mode];
  const std::size_t right = product(dims, mode + 1, dims.size());
  if (m.rows() != nn || m.cols() != left * right) {
    throw std::invalid_argument("fold: matrix dimensions do not match shape and mode");
  }
  DenseTensor x(shape);
  double* dst = x.values().data();
  for (std::size_t r = 0; r < right; ++r) {
    for (std::size_t i = 0; i < nn; ++i) {
      double* fiber = dst + i * left + r * left * nn;
      for (std::size_t l = 0; l < left; ++l) fiber[l] = m(i, l + r * left);
    }
  }
  return x;
}

// Mode products --------------------------------------------------------------

namespace {

// out[l, k, r] = sum_i coeff(k, i) * c[l, i, r]; summation over i ascending.
template <typename Coeff>
DenseTensor contract_mode(const DenseTensor& c, std::size_t mode, std::size_t out_extent,
                          std::size_t inner_extent, Coeff coeff) {
  const auto& dims = c.shape().dims();
  check_mode(mode, dims.size());
  if (dims[mode] != inner_extent) {
    throw std::invalid_argument("mode_product: inner dimension mismatch in mode " +
                                std::to_string(mode));
  }
  const std::size_t left = product(dims, 0, mode);
  const std::size_t right = product(dims, mode + 1, dims.size());
  DenseTensor out(c.shape().with_dim(mode, out_extent));
  const double* src = c.values().data();
  double* dst = out.values().data();
  for (std::size_t r = 0; r < right; ++r) {
    const double* src_r = src + r * left * inner_extent;
    double* dst_r = dst + r * left * out_extent;
    for (std::size_t i = 0; i < inner_extent; ++i) {
      const double* src_fiber = src_r + i * left;
      for (std::size_t k = 0; k < out_extent; ++k) {
        const double a = coeff(k, i);
        double* dst_fiber = dst_r + k * left;
        for (std::size_t l = 0; l < left; ++l) dst_fiber[l] += a * src_fiber[l];
      }
    }
  }
  return out;
}

}  // namespace

DenseTensor mode_product(const DenseTensor& c, const Matrix& a, std::size_t mode) {
  return contract_mode(c, mode, a.rows(), a.cols(),
                       [&a](std::size_t k, std::size_t i) { return a(k, i); });
}

DenseTensor mode_product_transposed(const DenseTensor& c, const Matrix& a, std::size_t mode) {
  return contract_mode(c, mode, a.cols(), a.rows(),
                       [&a](std::size_t k, std::size_t i) { return a(i, k); });
}

DenseTensor multi_mode_product(const DenseTensor& c, std::span<const Matrix> factors,
                               bool transposed, std::size_t skip) {
  if (factors.size() != c.order()) {
    throw std::invalid_argument("multi_mode_product: factor count does not match tensor order");
  }
  DenseTensor out = c;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    if (k == skip) continue;
    out = transposed ? mode_product_transposed(out, factors[k], k)
                     : mode_product(out, factors[k], k);
  }
  return out;
}

DenseTensor tucker_reconstruct(const DenseTensor& core, std::span<const Matrix> factors) {
  return multi_mode_product(core, factors);
}

DenseTensor tucker_reconstruct(const TuckerModel& model) {
  model.validate();
  return tucker_reconstruct(model.core, model.factors);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ja = 0; ja < a.cols(); ++ja) {
    for (std::size_t jb = 0; jb < b.cols(); ++jb) {
      for (std::size_t ia = 0; ia < a.rows(); ++ia) {
        const double s = a(ia, ja);
        for (std::size_t ib = 0; ib < b.rows(); ++ib) {
          out(ia * b.rows() + ib, ja * b.cols() + jb) = s * b(ib, jb);
        }
      }
    }
  }
  return out;
}

// Norms ----------------------------------------------------------------------

double frobenius_norm(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v * v;
  return std::sqrt(s);
}

double infinity_norm(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

double inner(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("inner: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double inner(const DenseTensor& x, const DenseTensor& y) {
  if (x.shape() != y.shape()) throw std::invalid_argument("inner: shape mismatch");
  return inner(x.values(), y.values());
}

double distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("distance: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double relative_error(const DenseTensor& xhat, const DenseTensor& xstar) {
  if (xhat.shape() != xstar.shape()) throw std::invalid_argument("relative_error: shape mismatch");
  const double ref = frobenius_norm(xstar);
  if (ref == 0.0) throw std::invalid_argument("relative_error: reference tensor has zero norm");
  return distance(xhat.values(), xstar.values()) / ref;
}

}  // namespace sntd
