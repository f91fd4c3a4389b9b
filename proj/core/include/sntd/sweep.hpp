#pragma once

// Sampling-ratio sweeps over a fixed ground truth, plus the two reference
// estimators used for comparison.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "sntd/admm.hpp"
#include "sntd/config.hpp"
#include "sntd/noise.hpp"
#include "sntd/synthetic.hpp"
#include "sntd/tensor.hpp"

namespace sntd {

struct SolverSettings {
  std::vector<double> lambda{10.0};
  double beta = 250.0;
  double rho = 0.01;
  double alpha = 0.01;
  std::size_t max_iters = 300;
  double tol = 1e-4;
  std::vector<double> a;    // empty: the ground truth's amplitude bounds if known, else 1
  std::optional<double> c;  // empty: the ground truth's c if known, else 2 * max observed value
};

struct SweepSpec {
  // Ground truth: a synthetic draw, or a tensor file with an optional model
  // file that supplies the true c and amplitude bounds.
  std::optional<SyntheticSpec> synthetic;
  std::filesystem::path input;
  std::filesystem::path model;

  /// Under Poisson noise the truth is shifted up by `floor`, which is also
  /// the solver's lower entry bound.
  NoiseModel noise;
  std::vector<double> ratios;
  std::size_t trials = 10;
  bool exact_m = false;
  std::uint64_t seed = 0;
  RankVector ranks;
  SolverSettings solver;

  bool tune = false;       // best-of-grid per trial, scored against the truth
  bool baselines = false;  // also score mean_fill and dense_ntd
  bool timing = false;     // record wall time; otherwise the seconds column is 0
  std::size_t threads = 1;

  void validate() const;
};

/// Reads a sweep config. Keys: dims, ranks, sparsity, scale, truth_seed |
/// input, model; noise, param; ratios, trials, exact_m, seed; lambda, beta,
/// rho, alpha, a, c, max_iters, tol; tune, baselines, timing, threads.
SweepSpec load_sweep_spec(Config& cfg);

struct GroundTruth {
  DenseTensor xstar;
  std::optional<TuckerModel> model;
};

/// Materializes the ground truth (including the Poisson shift).
GroundTruth resolve_truth(const SweepSpec& spec);

struct TrialResult {
  double ratio = 0.0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t m = 0;
  double rel_error = 0.0;
  double mse = 0.0;  // ||xhat - xstar||_F^2 / prod(n)
  std::size_t iters = 0;
  double seconds = 0.0;
  double mean_fill_error = 0.0;
  double dense_ntd_error = 0.0;
  double lambda = 0.0, beta = 0.0, rho = 0.0;  // settings used (tuned or fixed)
};

struct RatioSummary {
  double ratio = 0.0;
  double mean_rel_error = 0.0;
  double std_rel_error = 0.0;  // sample standard deviation, 0 for one trial
};

struct SweepResult {
  std::vector<TrialResult> trials;  // ordered by (ratio index, trial)
  std::vector<RatioSummary> summary;
  double entry_bound = 0.0;  // c used by the solver on the first trial
};

/// Seed for one (ratio, trial, purpose) triple.
std::uint64_t trial_seed(std::uint64_t base, std::size_t ratio_index, std::size_t trial,
                         std::uint64_t purpose);

inline constexpr std::uint64_t kMaskPurpose = 1;
inline constexpr std::uint64_t kNoisePurpose = 2;

SweepResult run_sweep(const SweepSpec& spec);
/// Runs a single trial of the sweep; run_sweep is a loop over this.
TrialResult run_trial(const SweepSpec& spec, const GroundTruth& truth, std::size_t ratio_index,
                      std::size_t trial);

std::vector<RatioSummary> summarize(const std::vector<TrialResult>& trials);

void write_trials_csv(const std::vector<TrialResult>& trials, std::ostream& out);
void write_summary_csv(const std::vector<RatioSummary>& summary, std::ostream& out);
void write_baselines_csv(const std::vector<TrialResult>& trials, std::ostream& out);

struct BaselineResult {
  DenseTensor mean_fill;
  SolveResult dense_ntd;
};

/// Observed-mean constant tensor clamped to [0, c], and the solver with all
/// lambda_i = 0 from the same ST-HOSVD start.
BaselineResult baselines(const ObservationSet& obs, const AdmmConfig& config);

/// ST-HOSVD of the zero-filled observations followed by solve().
SolveResult solve_from_observations(const ObservationSet& obs, const AdmmConfig& config);

}  // namespace sntd
