#pragma once

// Observation models: sampling, likelihoods, data-proximal maps and the
// per-entry divergences that enter the error bounds.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sntd/tensor.hpp"

namespace sntd {

enum class NoiseKind : std::uint8_t { gaussian = 0, laplace = 1, poisson = 2 };

std::string_view to_string(NoiseKind kind);
NoiseKind parse_noise_kind(std::string_view name);

/// Gaussian: `param` is the variance sigma^2. Laplace: `param` is the scale
/// (called tau_noise to keep it apart from the discretization level count).
/// Poisson: `param` is unused and `floor` is the lower bound on the rates.
struct NoiseModel {
  NoiseKind kind = NoiseKind::gaussian;
  double param = 1.0;
  double floor = 0.0;

  static NoiseModel gaussian(double sigma2);
  static NoiseModel laplace(double tau_noise);
  static NoiseModel poisson(double floor = 0.0);

  void validate() const;
  friend bool operator==(const NoiseModel&, const NoiseModel&) = default;
};

/// Observed entries Omega (ascending linear offsets) and their values.
struct ObservationSet {
  Shape shape;
  std::vector<std::uint64_t> indices;
  std::vector<double> values;
  NoiseModel model;

  std::size_t m() const { return indices.size(); }
  void validate() const;
};

/// Each index kept independently with probability p; keyed per entry by seed.
std::vector<std::uint64_t> bernoulli_mask(const Shape& shape, double p, std::uint64_t seed);
/// Exactly m indices drawn uniformly without replacement, returned ascending.
std::vector<std::uint64_t> exact_mask(const Shape& shape, std::uint64_t m, std::uint64_t seed);

ObservationSet observe(const DenseTensor& xstar, std::vector<std::uint64_t> omega,
                       const NoiseModel& model, std::uint64_t seed);

/// P_Omega(Y): observed values at their positions, zero elsewhere.
DenseTensor zero_filled(const ObservationSet& obs);

/// -log p_x(Y_Omega) with x-independent normalizers dropped:
///   Gaussian  sum (y - x)^2 / (2 sigma^2)
///   Laplace   sum |y - x| / tau_noise
///   Poisson   sum x - y log x
double neg_log_likelihood(const ObservationSet& obs, const DenseTensor& x);

/// Scalar minimizer of -log p_x(y) + (beta_sum / 2)(x - h)^2.
double data_prox_scalar(const NoiseModel& model, double h, double y, double beta_sum);
/// Entrywise data_prox_scalar on Omega; entries off Omega are copied from h.
DenseTensor data_prox(const NoiseModel& model, const DenseTensor& h, const ObservationSet& obs,
                      double beta_sum);

/// KL(p_{x_true} || p_x) for a single entry.
double kl_per_entry(const NoiseModel& model, double x_true, double x);
/// -2 log H(p_{x1}, p_{x2}) for a single entry.
double neg2_log_hellinger_per_entry(const NoiseModel& model, double x1, double x2);

/// Per-entry KL ceiling gamma used by the theoretical regularization weight:
/// c^2/(2 sigma^2), c^2/(2 tau^2) or c^2/floor.
double gamma_for(const NoiseModel& model, double c);

}  // namespace sntd
