#include "sntd/noise.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sntd/rng.hpp"

namespace sntd {

std::string_view to_string(NoiseKind kind) {
  switch (kind) {
    case NoiseKind::gaussian: return "gaussian";
    case NoiseKind::laplace: return "laplace";
    case NoiseKind::poisson: return "poisson";
  }
  return "unknown";
}

NoiseKind parse_noise_kind(std::string_view name) {
  if (name == "gaussian") return NoiseKind::gaussian;
  if (name == "laplace") return NoiseKind::laplace;
  if (name == "poisson") return NoiseKind::poisson;
  throw std::invalid_argument("unknown noise model '" + std::string(name) + "'");
}

NoiseModel NoiseModel::gaussian(double sigma2) {
  NoiseModel m{NoiseKind::gaussian, sigma2, 0.0};
  m.validate();
  return m;
}

NoiseModel NoiseModel::laplace(double tau_noise) {
  NoiseModel m{NoiseKind::laplace, tau_noise, 0.0};
  m.validate();
  return m;
}

NoiseModel NoiseModel::poisson(double floor) {
  NoiseModel m{NoiseKind::poisson, 0.0, floor};
  m.validate();
  return m;
}

void NoiseModel::validate() const {
  switch (kind) {
    case NoiseKind::gaussian:
      if (!(param > 0.0)) throw std::invalid_argument("gaussian noise requires sigma^2 > 0");
      break;
    case NoiseKind::laplace:
      if (!(param > 0.0)) throw std::invalid_argument("laplace noise requires tau > 0");
      break;
    case NoiseKind::poisson:
      if (!(floor >= 0.0)) throw std::invalid_argument("poisson floor must be >= 0");
      break;
    default:
      throw std::invalid_argument("invalid noise model tag");
  }
}

void ObservationSet::validate() const {
  model.validate();
  if (values.size() != indices.size()) {
    throw std::invalid_argument("observation set: value and index counts differ");
  }
  for (std::size_t k = 0; k < indices.size(); ++k) {
    if (indices[k] >= shape.total()) throw std::invalid_argument("observation index out of range");
    if (k > 0 && indices[k] <= indices[k - 1]) {
      throw std::invalid_argument("observation indices must be strictly increasing");
    }
    if (model.kind == NoiseKind::poisson) {
      const double y = values[k];
      if (!(y >= 0.0) || std::floor(y) != y) {
        throw std::invalid_argument("poisson observations must be nonnegative integers");
      }
    }
  }
}

std::vector<std::uint64_t> bernoulli_mask(const Shape& shape, double p, std::uint64_t seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("bernoulli_mask requires 0 < p <= 1");
  std::vector<std::uint64_t> omega;
  omega.reserve(static_cast<std::size_t>(p * static_cast<double>(shape.total())) + 16);
  for (std::uint64_t k = 0; k < shape.total(); ++k) {
    if (Rng::for_entry(seed, k).uniform() < p) omega.push_back(k);
  }
  return omega;
}

std::vector<std::uint64_t> exact_mask(const Shape& shape, std::uint64_t m, std::uint64_t seed) {
  const std::uint64_t n = shape.total();
  if (m == 0 || m > n) throw std::invalid_argument("exact_mask requires 1 <= m <= total");
  // Floyd's sampling without replacement.
  std::vector<bool> chosen(n, false);
  Rng rng(seed);
  for (std::uint64_t j = n - m; j < n; ++j) {
    const std::uint64_t t = rng.uniform_index(j + 1);
    if (chosen[t]) {
      chosen[j] = true;
    } else {
      chosen[t] = true;
    }
  }
  std::vector<std::uint64_t> omega;
  omega.reserve(m);
  for (std::uint64_t k = 0; k < n; ++k) {
    if (chosen[k]) omega.push_back(k);
  }
  return omega;
}

ObservationSet observe(const DenseTensor& xstar, std::vector<std::uint64_t> omega,
                       const NoiseModel& model, std::uint64_t seed) {
  model.validate();
  ObservationSet obs{xstar.shape(), std::move(omega), {}, model};
  obs.values.reserve(obs.indices.size());
  for (std::size_t k = 0; k < obs.indices.size(); ++k) {
    const std::uint64_t idx = obs.indices[k];
    if (idx >= xstar.size()) throw std::invalid_argument("observe: index out of range");
    if (k > 0 && idx <= obs.indices[k - 1]) {
      throw std::invalid_argument("observe: indices must be strictly increasing");
    }
    const double x = xstar[idx];
    Rng rng = Rng::for_entry(seed, idx);
    switch (model.kind) {
      case NoiseKind::gaussian:
        obs.values.push_back(x + std::sqrt(model.param) * rng.normal());
        break;
      case NoiseKind::laplace:
        obs.values.push_back(x + rng.laplace(model.param));
        break;
      case NoiseKind::poisson: {
        const bool ok = model.floor > 0.0 ? x >= model.floor : x > 0.0;
        if (!ok) {
          throw std::invalid_argument("observe: poisson rate at offset " + std::to_string(idx) +
                                      " is below the admissible floor");
        }
        obs.values.push_back(static_cast<double>(rng.poisson(x)));
        break;
      }
    }
  }
  return obs;
}

DenseTensor zero_filled(const ObservationSet& obs) {
  DenseTensor y(obs.shape);
  for (std::size_t k = 0; k < obs.indices.size(); ++k) y[obs.indices[k]] = obs.values[k];
  return y;
}

double neg_log_likelihood(const ObservationSet& obs, const DenseTensor& x) {
  if (x.shape() != obs.shape) throw std::invalid_argument("neg_log_likelihood: shape mismatch");
  double total = 0.0;
  const auto& model = obs.model;
  for (std::size_t k = 0; k < obs.indices.size(); ++k) {
    const double xv = x[obs.indices[k]];
    const double y = obs.values[k];
    switch (model.kind) {
      case NoiseKind::gaussian: {
        const double r = y - xv;
        total += r * r / (2.0 * model.param);
        break;
      }
      case NoiseKind::laplace:
        total += std::abs(y - xv) / model.param;
        break;
      case NoiseKind::poisson:
        if (!(xv > 0.0)) {
          throw std::domain_error("neg_log_likelihood: poisson rate must be positive on Omega");
        }
        total += xv - (y == 0.0 ? 0.0 : y * std::log(xv));
        break;
    }
  }
  return total;
}

double data_prox_scalar(const NoiseModel& model, double h, double y, double beta_sum) {
  switch (model.kind) {
    case NoiseKind::gaussian: {
      const double w = model.param * beta_sum;
      return (y + w * h) / (1.0 + w);
    }
    case NoiseKind::laplace: {
      const double d = h - y;
      const double shrink = std::abs(d) - 1.0 / (model.param * beta_sum);
      if (shrink <= 0.0) return y;
      return y + (d > 0.0 ? shrink : -shrink);
    }
    case NoiseKind::poisson: {
      const double t = beta_sum * h - 1.0;
      const double s = std::sqrt(t * t + 4.0 * beta_sum * y);
      // Rationalized form when t < 0 avoids cancellation in t + s.
      if (t < 0.0) return s - t > 0.0 ? 2.0 * y / (s - t) : 0.0;
      return (t + s) / (2.0 * beta_sum);
    }
  }
  return h;
}

DenseTensor data_prox(const NoiseModel& model, const DenseTensor& h, const ObservationSet& obs,
                      double beta_sum) {
  if (!(beta_sum > 0.0)) throw std::invalid_argument("data_prox requires beta_sum > 0");
  if (h.shape() != obs.shape) throw std::invalid_argument("data_prox: shape mismatch");
  DenseTensor out = h;
  for (std::size_t k = 0; k < obs.indices.size(); ++k) {
    const auto idx = obs.indices[k];
    out[idx] = data_prox_scalar(model, h[idx], obs.values[k], beta_sum);
  }
  return out;
}

double kl_per_entry(const NoiseModel& model, double x_true, double x) {
  const double delta = x - x_true;
  switch (model.kind) {
    case NoiseKind::gaussian:
      return delta * delta / (2.0 * model.param);
    case NoiseKind::laplace: {
      const double t = std::abs(delta) / model.param;
      // t - 1 + exp(-t), written to stay accurate for small t.
      return t + std::expm1(-t);
    }
    case NoiseKind::poisson:
      if (!(x_true > 0.0) || !(x > 0.0)) {
        throw std::domain_error("kl_per_entry: poisson rates must be positive");
      }
      return x - x_true + x_true * std::log(x_true / x);
  }
  return 0.0;
}

double neg2_log_hellinger_per_entry(const NoiseModel& model, double x1, double x2) {
  const double delta = x1 - x2;
  switch (model.kind) {
    case NoiseKind::gaussian:
      return delta * delta / (4.0 * model.param);
    case NoiseKind::laplace: {
      const double t = std::abs(delta) / model.param;
      return t - 2.0 * std::log1p(t / 2.0);
    }
    case NoiseKind::poisson: {
      if (x1 < 0.0 || x2 < 0.0) {
        throw std::domain_error("neg2_log_hellinger_per_entry: poisson rates must be >= 0");
      }
      const double d = std::sqrt(x1) - std::sqrt(x2);
      return d * d;
    }
  }
  return 0.0;
}

double gamma_for(const NoiseModel& model, double c) {
  model.validate();
  switch (model.kind) {
    case NoiseKind::gaussian:
      return c * c / (2.0 * model.param);
    case NoiseKind::laplace:
      return c * c / (2.0 * model.param * model.param);
    case NoiseKind::poisson:
      if (!(model.floor > 0.0)) throw std::invalid_argument("gamma_for: poisson floor must be > 0");
      return c * c / model.floor;
  }
  return 0.0;
}

}  // namespace sntd
