#pragma once

// Closed-form theoretical quantities: discretization exponent and level
// count, the theoretical regularization weight, degrees of freedom, the
// per-noise upper error bounds, the minimax lower bound, and the
// discretized surrogate with its reconstruction gap bound.
//
// Constants are transcribed exactly; nothing is tightened. log is natural.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sntd/noise.hpp"
#include "sntd/tensor.hpp"

namespace sntd {

struct ProblemSpec {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> ranks;
  std::vector<double> amplitudes;  // a_i
  double c = 1.0;
  double m = 0.0;  // number of observed entries
  NoiseModel noise;
  std::vector<double> sparsity;  // s_i = ||A_i||_0

  std::size_t order() const { return dims.size(); }
  std::size_t max_dim() const;
  /// Throws std::invalid_argument unless d >= 3, n_i >= 2, 1 <= r_i <= n_i,
  /// a_i > 0, c > 0, 0 <= s_i <= r_i n_i and 2^d <= m <= prod n_i.
  void validate() const;
};

/// Constants of the minimax lower bound. They exist but are not numerically
/// determined, so callers must supply them; the zero defaults are rejected.
struct MinimaxConstants {
  double mu = 0.0;           // KL(P_x, P_y) <= (x - y)^2 / (2 mu)
  double alpha_tilde = 0.0;  // in (0, 1)
  double gamma_m = 0.0;      // > 0
};

struct BoundReport {
  double beta = 1.0;
  double tau = 2.0;  // number of discretization levels
  double gamma = 0.0;
  double lambda_theoretical = 0.0;
  double dof = 0.0;
  double upper_bound = 0.0;
  std::optional<double> lower_bound;
};

/// 1 + log((2^{d+1}-1) sqrt(d) prod(r) prod(a) / (c sqrt(n_m)) + 1) / log(n_m).
double beta_value(const ProblemSpec& spec);
/// 1 + log(fraction + 1) / log(n_m), the outer form of beta_value.
double beta_from_fraction(double fraction, std::size_t n_m);
/// 2^ceil(log2(n_m^beta)). Throws std::overflow_error past 2^63.
std::uint64_t tau_levels(std::size_t n_m, double beta);
/// 4 (beta + 2)(1 + 2 gamma / 3) log(n_m).
double lambda_theoretical(double beta, double gamma, std::size_t n_m);
/// prod(r) + sum(s).
double degrees_of_freedom(const ProblemSpec& spec);
/// Right-hand side of the upper bound on E||X_hat - X*||_F^2 / prod(n) for
/// the problem's noise model.
double upper_bound(const ProblemSpec& spec);
/// min{1, s / n}.
double delta_ratio(double s, double n);
/// alpha~ / (2^{d+5} (d+1)) min{prod Delta_i a_i^2, gamma_m^2 mu^2 dof / m}.
double minimax_lower_bound(const ProblemSpec& spec, const MinimaxConstants& constants);

BoundReport evaluate_bounds(const ProblemSpec& spec,
                            const std::optional<MinimaxConstants>& constants = std::nullopt);

/// Rounds core entries to the nearest of tau uniform levels on [0, 1] and
/// factor i entries to the nearest of tau levels on [0, a_i]. Zero is a level,
/// so zeros are preserved exactly.
TuckerModel discretize_surrogate(const TuckerModel& model, std::uint64_t tau);

/// (2^{d+1} - 1) / (tau - 1) prod(a_i r_i).
double surrogate_gap_bound(const TuckerModel& model, std::uint64_t tau);

}  // namespace sntd
