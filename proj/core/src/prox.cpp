#include "sntd/prox.hpp"

#include <cmath>
#include <stdexcept>

namespace sntd {

Box::Box(double lo_, double hi_) : lo(lo_), hi(hi_) {
  if (!(lo <= hi)) throw std::invalid_argument("box requires lo <= hi");
}

double hard_threshold(double y, double lam) {
  if (!(lam > 0.0)) throw std::invalid_argument("hard_threshold requires lam > 0");
  // |y| > sqrt(2 lam)  <=>  y^2 > 2 lam, which avoids rounding in the sqrt.
  return (y * y > 2.0 * lam) ? y : 0.0;
}

Matrix hard_threshold_matrix(const Matrix& m, double lam_over_rho) {
  if (!(lam_over_rho > 0.0)) throw std::invalid_argument("hard_threshold_matrix requires lam > 0");
  Matrix out = m;
  for (auto& v : out.values()) v = hard_threshold(v, lam_over_rho);
  return out;
}

Matrix hard_threshold_or_identity(const Matrix& m, double lam_over_rho) {
  if (lam_over_rho < 0.0) throw std::invalid_argument("threshold parameter must be >= 0");
  if (lam_over_rho == 0.0) return m;
  return hard_threshold_matrix(m, lam_over_rho);
}

void box_project_inplace(std::span<double> values, const Box& box) {
  for (auto& v : values) v = box.clamp(v);
}

DenseTensor box_project(DenseTensor t, const Box& box) {
  box_project_inplace(t.values(), box);
  return t;
}

Matrix box_project(Matrix m, const Box& box) {
  box_project_inplace(m.values(), box);
  return m;
}

}  // namespace sntd
