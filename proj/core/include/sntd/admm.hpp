#pragma once

// ADMM for sparse nonnegative Tucker decomposition and completion.
//
// The problem is split as X = Z, C = B, A_i = H_i, A_i = S_i with
//   Z in [0, c], B in [0, 1], S_i in [0, a_i], lambda_i ||H_i||_0 on H_i,
// and X tied to the Tucker reconstruction C x_1 A_1 ... x_d A_d through the
// multiplier T1. One iteration updates, in order: X, C, A_1..A_d
// (Gauss-Seidel), Z, B, H_i and S_i, then all multipliers.

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <vector>

#include "sntd/hosvd.hpp"
#include "sntd/noise.hpp"
#include "sntd/tensor.hpp"

namespace sntd {

struct AdmmConfig {
  std::vector<double> lambda;  // per factor, >= 0 (0 disables the sparsity penalty)
  double beta1 = 250.0;
  double beta2 = 250.0;
  double beta3 = 250.0;
  std::vector<double> rho;    // per factor, > 0
  std::vector<double> alpha;  // per factor, > 0
  std::size_t max_iters = 300;
  double tol = 1e-4;
  double c = 1.0;
  std::vector<double> a;  // amplitude bounds a_i
  RankVector ranks;
  /// Lower box bound for Z under Poisson noise. Zero means: use the
  /// observation model's floor, or kDefaultPoissonFloor if that is zero too.
  double poisson_floor = 0.0;

  static constexpr double kDefaultPoissonFloor = 1e-8;

  /// Same lambda / rho / alpha / a for every mode and beta1 = beta2 = beta3.
  static AdmmConfig uniform(const RankVector& ranks, double lambda, double beta, double rho,
                            double alpha, double c, double a = 1.0);

  void validate(std::size_t order) const;
};

struct AdmmState {
  DenseTensor x, z;        // n_1 x ... x n_d
  DenseTensor core, b;     // r_1 x ... x r_d
  std::vector<Matrix> factors, h, s;
  DenseTensor t1, t2, t3;  // multipliers of X = recon, X = Z, C = B
  std::vector<Matrix> m, n;  // multipliers of A_i = H_i, A_i = S_i
};

struct Auxiliaries {
  DenseTensor z, b;
  std::vector<Matrix> h, s;
};

struct Multipliers {
  DenseTensor t1, t2, t3;
  std::vector<Matrix> m, n;
};

struct IterationRecord {
  double objective = 0.0;  // NLL(clamped x) + sum lambda_i ||H_i||_0
  double rel_change = 0.0;
  double res_tucker = 0.0;
  double res_z = 0.0;
  double res_b = 0.0;
  double res_h = 0.0;  // max_i ||A_i - H_i||_F
  double res_s = 0.0;  // max_i ||A_i - S_i||_F
};

struct SolveReport {
  std::size_t iterations = 0;
  std::vector<IterationRecord> history;
  double wall_seconds = 0.0;
};

struct SolveResult {
  DenseTensor xhat;    // x clamped to the entry box
  TuckerModel model;   // feasible blocks (B, S_i)
  SolveReport report;
};

/// Lower bound of the Z box for this observation model and config.
double entry_floor(const ObservationSet& obs, const AdmmConfig& config);

/// X0 = Z0 = P_Omega(Y), C0 = B0 = init core, A0 = H0 = S0 = init factors,
/// all multipliers zero.
AdmmState initial_state(const ObservationSet& obs, const TuckerModel& init,
                        const AdmmConfig& config);

DenseTensor update_x(const AdmmState& state, const ObservationSet& obs, const AdmmConfig& config);
DenseTensor update_core(const AdmmState& state, const AdmmConfig& config);
/// Uses state.factors as they stand, so factors before `mode` must already
/// hold this iteration's values.
Matrix update_factor(const AdmmState& state, const AdmmConfig& config, std::size_t mode);
Auxiliaries update_auxiliaries(const AdmmState& state, const ObservationSet& obs,
                               const AdmmConfig& config);
Multipliers update_multipliers(const AdmmState& state, const AdmmConfig& config,
                               const DenseTensor& reconstruction);
Multipliers update_multipliers(const AdmmState& state, const AdmmConfig& config);

/// Runs full iterations until ||x^{k+1} - x^k||_F / ||x^k||_F <= tol or
/// max_iters is reached.
SolveResult solve(const ObservationSet& obs, const AdmmConfig& config, const TuckerModel& init);

/// iter,objective,rel_change,res_tucker,res_z,res_b,res_h,res_s with %.12e.
void write_report_csv(const SolveReport& report, std::ostream& out);

}  // namespace sntd
