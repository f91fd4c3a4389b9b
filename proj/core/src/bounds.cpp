#include "sntd/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sntd {

namespace {

double product_of(const std::vector<std::size_t>& v) {
  double p = 1.0;
  for (auto x : v) p *= static_cast<double>(x);
  return p;
}

double product_of(const std::vector<double>& v) {
  double p = 1.0;
  for (auto x : v) p *= x;
  return p;
}

}  // namespace

std::size_t ProblemSpec::max_dim() const {
  return dims.empty() ? 0 : *std::max_element(dims.begin(), dims.end());
}

void ProblemSpec::validate() const {
  const std::size_t d = dims.size();
  if (d < 3) throw std::invalid_argument("problem spec: order must be >= 3");
  if (ranks.size() != d || amplitudes.size() != d || sparsity.size() != d) {
    throw std::invalid_argument("problem spec: ranks, amplitudes and sparsity need one value per mode");
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (dims[i] < 2) throw std::invalid_argument("problem spec: every dimension must be >= 2");
    if (ranks[i] < 1 || ranks[i] > dims[i]) throw std::invalid_argument("problem spec: rank out of range");
    if (!(amplitudes[i] > 0.0)) throw std::invalid_argument("problem spec: amplitudes must be > 0");
    const double dense = static_cast<double>(ranks[i] * dims[i]);
    if (!(sparsity[i] >= 0.0) || sparsity[i] > dense) {
      throw std::invalid_argument("problem spec: sparsity count must lie in [0, r_i n_i]");
    }
  }
  if (!(c > 0.0)) throw std::invalid_argument("problem spec: c must be > 0");
  const double lo = std::ldexp(1.0, static_cast<int>(d));
  if (!(m >= lo) || m > product_of(dims)) {
    throw std::invalid_argument("problem spec: m must satisfy 2^d <= m <= prod(n)");
  }
  noise.validate();
}

double beta_value(const ProblemSpec& spec) {
  spec.validate();
  const double d = static_cast<double>(spec.order());
  const double nm = static_cast<double>(spec.max_dim());
  const double numer = (std::ldexp(1.0, static_cast<int>(spec.order()) + 1) - 1.0) * std::sqrt(d) *
                       product_of(spec.ranks) * product_of(spec.amplitudes);
  return beta_from_fraction(numer / (spec.c * std::sqrt(nm)), spec.max_dim());
}

double beta_from_fraction(double fraction, std::size_t n_m) {
  if (n_m < 2) throw std::invalid_argument("beta requires n_m >= 2");
  if (!(fraction >= 0.0)) throw std::invalid_argument("beta requires a nonnegative fraction");
  return 1.0 + std::log1p(fraction) / std::log(static_cast<double>(n_m));
}

std::uint64_t tau_levels(std::size_t n_m, double beta) {
  if (n_m < 2) throw std::invalid_argument("tau_levels requires n_m >= 2");
  if (!(beta >= 1.0)) throw std::invalid_argument("tau_levels requires beta >= 1");
  const double e = beta * std::log2(static_cast<double>(n_m));
  // Snap exponents that are integral up to rounding so 2^k stays 2^k.
  const double nearest = std::round(e);
  const double exponent = std::abs(e - nearest) <= 1e-12 * std::max(1.0, e) ? nearest : std::ceil(e);
  if (exponent > 63.0) throw std::overflow_error("tau_levels: level count exceeds 2^63");
  return std::uint64_t{1} << static_cast<unsigned>(exponent);
}

double lambda_theoretical(double beta, double gamma, std::size_t n_m) {
  if (n_m < 2) throw std::invalid_argument("lambda_theoretical requires n_m >= 2");
  return 4.0 * (beta + 2.0) * (1.0 + 2.0 * gamma / 3.0) * std::log(static_cast<double>(n_m));
}

double degrees_of_freedom(const ProblemSpec& spec) {
  double s = 0.0;
  for (double v : spec.sparsity) s += v;
  return product_of(spec.ranks) + s;
}

double upper_bound(const ProblemSpec& spec) {
  const double beta = beta_value(spec);
  const double c = spec.c;
  const double m = spec.m;
  const double log_m = std::log(m);
  const double log_nm = std::log(static_cast<double>(spec.max_dim()));
  const double dof_rate = degrees_of_freedom(spec) / m;
  switch (spec.noise.kind) {
    case NoiseKind::gaussian: {
      const double s2 = spec.noise.param;
      return 22.0 * c * c * log_m / m +
             16.0 * (beta + 2.0) * (2.0 * c * c + 3.0 * s2) * dof_rate * log_nm;
    }
    case NoiseKind::laplace: {
      const double t = spec.noise.param;
      const double w = (2.0 * t + c) * (2.0 * t + c);
      return 11.0 * c * c * w * log_m / (2.0 * t * t * m) +
             12.0 * (1.0 + 2.0 * c * c / (3.0 * t * t)) * w * (beta + 2.0) * log_nm * dof_rate;
    }
    case NoiseKind::poisson: {
      const double rho = spec.noise.floor;
      if (!(rho > 0.0)) throw std::invalid_argument("upper_bound: poisson floor must be > 0");
      return 44.0 * c * c * c * log_m / (rho * m) +
             48.0 * c * (1.0 + 4.0 * c * c / (3.0 * rho)) * (beta + 2.0) * dof_rate * log_nm;
    }
  }
  throw std::invalid_argument("upper_bound: unsupported noise model");
}

double delta_ratio(double s, double n) {
  if (!(n > 0.0)) throw std::invalid_argument("delta_ratio requires n > 0");
  return std::min(1.0, s / n);
}

double minimax_lower_bound(const ProblemSpec& spec, const MinimaxConstants& k) {
  spec.validate();
  if (!(k.mu > 0.0)) throw std::invalid_argument("minimax_lower_bound: mu must be > 0");
  if (!(k.alpha_tilde > 0.0 && k.alpha_tilde < 1.0)) {
    throw std::invalid_argument("minimax_lower_bound: alpha_tilde must lie in (0, 1)");
  }
  if (!(k.gamma_m > 0.0)) throw std::invalid_argument("minimax_lower_bound: gamma_m must be > 0");
  const std::size_t d = spec.order();
  double first = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (spec.sparsity[i] < static_cast<double>(spec.ranks[i])) {
      throw std::invalid_argument("minimax_lower_bound: requires r_i <= s_i");
    }
    first *= delta_ratio(spec.sparsity[i], static_cast<double>(spec.dims[i])) *
             spec.amplitudes[i] * spec.amplitudes[i];
  }
  const double second = k.gamma_m * k.gamma_m * k.mu * k.mu * degrees_of_freedom(spec) / spec.m;
  const double scale =
      k.alpha_tilde / (std::ldexp(1.0, static_cast<int>(d) + 5) * static_cast<double>(d + 1));
  return scale * std::min(first, second);
}

BoundReport evaluate_bounds(const ProblemSpec& spec, const std::optional<MinimaxConstants>& constants) {
  spec.validate();
  BoundReport r;
  r.beta = beta_value(spec);
  r.tau = static_cast<double>(tau_levels(spec.max_dim(), r.beta));
  r.gamma = gamma_for(spec.noise, spec.c);
  r.lambda_theoretical = lambda_theoretical(r.beta, r.gamma, spec.max_dim());
  r.dof = degrees_of_freedom(spec);
  r.upper_bound = upper_bound(spec);
  if (constants) r.lower_bound = minimax_lower_bound(spec, *constants);
  return r;
}

TuckerModel discretize_surrogate(const TuckerModel& model, std::uint64_t tau) {
  if (tau < 2) throw std::invalid_argument("discretize_surrogate requires tau >= 2");
  if (!model.is_feasible(0.0, /*check_reconstruction=*/false)) {
    throw std::invalid_argument("discretize_surrogate: model is outside the feasible ranges");
  }
  const double steps = static_cast<double>(tau - 1);
  auto snap = [steps](double v, double top) {
    const double k = std::nearbyint(v / top * steps);
    return std::min(top, top * k / steps);
  };
  TuckerModel out = model;
  for (auto& v : out.core.values()) v = snap(v, 1.0);
  for (std::size_t i = 0; i < out.factors.size(); ++i) {
    for (auto& v : out.factors[i].values()) v = snap(v, model.amplitude_bounds[i]);
  }
  return out;
}

double surrogate_gap_bound(const TuckerModel& model, std::uint64_t tau) {
  if (tau < 2) throw std::invalid_argument("surrogate_gap_bound requires tau >= 2");
  const std::size_t d = model.order();
  double p = 1.0;
  for (std::size_t i = 0; i < d; ++i) {
    p *= model.amplitude_bounds.at(i) * static_cast<double>(model.factors[i].cols());
  }
  return (std::ldexp(1.0, static_cast<int>(d) + 1) - 1.0) / static_cast<double>(tau - 1) * p;
}

}  // namespace sntd
