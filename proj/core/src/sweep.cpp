#include "sntd/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>

#include "sntd/hosvd.hpp"
#include "sntd/io.hpp"
#include "sntd/rng.hpp"

namespace sntd {

namespace {

const std::vector<double> kTuneLambda{5.0, 10.0, 50.0};
const std::vector<double> kTuneBeta{50.0, 70.0, 100.0, 250.0, 350.0, 450.0, 550.0};
const std::vector<double> kTuneRhoAlpha{0.1, 0.01, 0.001};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

double squared_distance(const DenseTensor& a, const DenseTensor& b) {
  const double dist = distance(a.values(), b.values());
  return dist * dist;
}

AdmmConfig make_config(const SweepSpec& spec, const GroundTruth& truth, const ObservationSet& obs,
                       double lambda, double beta, double rho_alpha) {
  const std::size_t d = obs.shape.order();
  double c = 0.0;
  if (spec.solver.c) {
    c = *spec.solver.c;
  } else if (truth.model) {
    c = truth.model->entry_bound;
  } else {
    double peak = 0.0;
    for (double v : obs.values) peak = std::max(peak, v);
    c = 2.0 * peak;
    if (!(c > 0.0)) throw std::runtime_error("cannot infer c: no positive observed value");
  }
  std::vector<double> a(d, 1.0);
  if (!spec.solver.a.empty()) {
    a = broadcast(spec.solver.a, d, "a");
  } else if (truth.model && truth.model->amplitude_bounds.size() == d) {
    a = truth.model->amplitude_bounds;
  }
  AdmmConfig cfg = AdmmConfig::uniform(spec.ranks, 0.0, beta, rho_alpha, rho_alpha, c);
  cfg.lambda = lambda < 0.0 ? broadcast(spec.solver.lambda, d, "lambda") : std::vector<double>(d, lambda);
  cfg.a = std::move(a);
  cfg.max_iters = spec.solver.max_iters;
  cfg.tol = spec.solver.tol;
  return cfg;
}

}  // namespace

void SweepSpec::validate() const {
  if (synthetic) {
    synthetic->validate();
  } else if (input.empty()) {
    throw std::invalid_argument("sweep: either a synthetic spec or an input tensor is required");
  }
  noise.validate();
  if (ratios.empty()) throw std::invalid_argument("sweep: the ratio grid is empty");
  for (double r : ratios) {
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("sweep: ratios must lie in (0, 1]");
  }
  if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  if (threads < 1) throw std::invalid_argument("sweep: threads must be >= 1");
  if (ranks.size() == 0) throw std::invalid_argument("sweep: ranks are required");
  if (noise.kind == NoiseKind::poisson && !(noise.floor > 0.0)) {
    throw std::invalid_argument("sweep: poisson noise needs a positive floor (param)");
  }
}

SweepSpec load_sweep_spec(Config& cfg) {
  SweepSpec spec;
  auto input = cfg.get("input");
  if (input) {
    spec.input = *input;
    if (auto m = cfg.get("model")) spec.model = *m;
  }
  auto dims = cfg.get_sizes("dims");
  if (dims && input) throw std::invalid_argument(cfg.origin() + ": give either dims or input, not both");
  auto ranks = cfg.get_sizes("ranks");
  if (!ranks) throw std::invalid_argument(cfg.origin() + ": missing required key 'ranks'");
  spec.seed = cfg.get_uint("seed").value_or(0);
  if (dims) {
    SyntheticSpec syn;
    const std::size_t d = dims->size();
    syn.dims = *dims;
    syn.ranks = RankVector(broadcast(*ranks, d, "ranks"));
    syn.sparsity = broadcast(cfg.get_doubles("sparsity").value_or(std::vector<double>{1.0}), d, "sparsity");
    syn.scales = broadcast(cfg.get_doubles("scale").value_or(std::vector<double>{1.0}), d, "scale");
    syn.seed = cfg.get_uint("truth_seed").value_or(spec.seed);
    spec.ranks = syn.ranks;
    spec.synthetic = std::move(syn);
  } else {
    spec.ranks = RankVector(*ranks);
  }

  const NoiseKind kind = parse_noise_kind(cfg.require("noise"));
  const double param = cfg.get_double("param").value_or(kind == NoiseKind::poisson ? 0.1 : 0.01);
  switch (kind) {
    case NoiseKind::gaussian: spec.noise = NoiseModel::gaussian(param); break;
    case NoiseKind::laplace: spec.noise = NoiseModel::laplace(param); break;
    case NoiseKind::poisson: spec.noise = NoiseModel::poisson(param); break;
  }

  auto ratios = cfg.get_doubles("ratios");
  if (!ratios) throw std::invalid_argument(cfg.origin() + ": missing required key 'ratios'");
  spec.ratios = *ratios;
  spec.trials = cfg.get_uint("trials").value_or(10);
  spec.exact_m = cfg.get_bool("exact_m").value_or(false);

  if (auto v = cfg.get_doubles("lambda")) spec.solver.lambda = *v;
  if (auto v = cfg.get_double("beta")) spec.solver.beta = *v;
  if (auto v = cfg.get_double("rho")) spec.solver.rho = *v;
  if (auto v = cfg.get_double("alpha")) spec.solver.alpha = *v;
  if (auto v = cfg.get_doubles("a")) spec.solver.a = *v;
  if (auto v = cfg.get("c"); v && *v != "auto") spec.solver.c = parse_double(*v);
  if (auto v = cfg.get_uint("max_iters")) spec.solver.max_iters = *v;
  if (auto v = cfg.get_double("tol")) spec.solver.tol = *v;

  spec.tune = cfg.get_bool("tune").value_or(false);
  spec.baselines = cfg.get_bool("baselines").value_or(false);
  spec.timing = cfg.get_bool("timing").value_or(false);
  spec.threads = cfg.get_uint("threads").value_or(1);
  cfg.finish();
  spec.validate();
  return spec;
}

GroundTruth resolve_truth(const SweepSpec& spec) {
  spec.validate();
  GroundTruth truth;
  if (spec.synthetic) {
    auto data = generate_synthetic(*spec.synthetic);
    truth.xstar = std::move(data.xstar);
    truth.model = std::move(data.model);
  } else {
    truth.xstar = load_tensor(spec.input);
    if (!spec.model.empty()) {
      truth.model = load_model(spec.model);
      if (truth.model->full_shape() != truth.xstar.shape()) {
        throw std::invalid_argument("sweep: model file does not match the input tensor's shape");
      }
    }
  }
  if (spec.ranks.size() != truth.xstar.order()) {
    throw std::invalid_argument("sweep: rank vector length does not match the tensor order");
  }
  spec.ranks.validate_for(truth.xstar.shape());
  if (spec.noise.kind == NoiseKind::poisson) {
    for (auto& v : truth.xstar.values()) v += spec.noise.floor;
    if (truth.model) truth.model->entry_bound = 2.0 * infinity_norm(truth.xstar);
  }
  return truth;
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t ratio_index, std::size_t trial,
                         std::uint64_t purpose) {
  return hash64({base, ratio_index, trial, purpose});
}

SolveResult solve_from_observations(const ObservationSet& obs, const AdmmConfig& config) {
  const TuckerModel init = st_hosvd(zero_filled(obs), config.ranks);
  return solve(obs, config, init);
}

BaselineResult baselines(const ObservationSet& obs, const AdmmConfig& config) {
  obs.validate();
  double mean = 0.0;
  for (double v : obs.values) mean += v;
  if (obs.m() > 0) mean /= static_cast<double>(obs.m());
  mean = std::clamp(mean, 0.0, config.c);
  AdmmConfig dense = config;
  dense.lambda.assign(obs.shape.order(), 0.0);
  return BaselineResult{DenseTensor(obs.shape, mean), solve_from_observations(obs, dense)};
}

TrialResult run_trial(const SweepSpec& spec, const GroundTruth& truth, std::size_t ratio_index,
                      std::size_t trial) {
  TrialResult r;
  r.ratio = spec.ratios.at(ratio_index);
  r.trial = trial;
  r.seed = trial_seed(spec.seed, ratio_index, trial, kMaskPurpose);
  try {
    const Shape& shape = truth.xstar.shape();
    std::vector<std::uint64_t> omega;
    if (spec.exact_m) {
      const auto m = static_cast<std::uint64_t>(std::llround(r.ratio * static_cast<double>(shape.total())));
      omega = exact_mask(shape, m, r.seed);
    } else {
      omega = bernoulli_mask(shape, r.ratio, r.seed);
    }
    if (omega.empty()) throw std::runtime_error("no entries observed");
    const ObservationSet obs =
        observe(truth.xstar, std::move(omega), spec.noise,
                trial_seed(spec.seed, ratio_index, trial, kNoisePurpose));
    r.m = obs.m();

    const auto start = std::chrono::steady_clock::now();
    SolveResult best;
    AdmmConfig best_cfg;
    if (spec.tune) {
      double best_err = 0.0;
      bool have = false;
      for (double lam : kTuneLambda) {
        for (double beta : kTuneBeta) {
          for (double ra : kTuneRhoAlpha) {
            AdmmConfig cfg = make_config(spec, truth, obs, lam, beta, ra);
            SolveResult res = solve_from_observations(obs, cfg);
            const double err = relative_error(res.xhat, truth.xstar);
            if (!have || err < best_err) {
              have = true;
              best_err = err;
              best = std::move(res);
              best_cfg = cfg;
            }
          }
        }
      }
    } else {
      AdmmConfig cfg = make_config(spec, truth, obs, -1.0, spec.solver.beta, spec.solver.rho);
      cfg.alpha.assign(cfg.alpha.size(), spec.solver.alpha);
      best = solve_from_observations(obs, cfg);
      best_cfg = cfg;
    }
    const auto stop = std::chrono::steady_clock::now();

    r.rel_error = relative_error(best.xhat, truth.xstar);
    r.mse = squared_distance(best.xhat, truth.xstar) / static_cast<double>(shape.total());
    r.iters = best.report.iterations;
    r.seconds = spec.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
    r.lambda = best_cfg.lambda.front();
    r.beta = best_cfg.beta1;
    r.rho = best_cfg.rho.front();

    if (spec.baselines) {
      const BaselineResult base = baselines(obs, best_cfg);
      r.mean_fill_error = relative_error(base.mean_fill, truth.xstar);
      r.dense_ntd_error = relative_error(base.dense_ntd.xhat, truth.xstar);
    }
  } catch (const std::exception& e) {
    throw std::runtime_error("sweep trial failed (ratio " + fmt("%g", r.ratio) + ", trial " +
                             std::to_string(trial) + ", seed " + std::to_string(r.seed) +
                             "): " + e.what());
  }
  return r;
}

std::vector<RatioSummary> summarize(const std::vector<TrialResult>& trials) {
  std::vector<RatioSummary> out;
  std::vector<double> order;
  for (const auto& t : trials) {
    if (std::find(order.begin(), order.end(), t.ratio) == order.end()) order.push_back(t.ratio);
  }
  for (double ratio : order) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& t : trials) {
      if (t.ratio == ratio) {
        sum += t.rel_error;
        ++n;
      }
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (const auto& t : trials) {
      if (t.ratio == ratio) ss += (t.rel_error - mean) * (t.rel_error - mean);
    }
    out.push_back({ratio, mean, n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0});
  }
  return out;
}

SweepResult run_sweep(const SweepSpec& spec) {
  const GroundTruth truth = resolve_truth(spec);
  const std::size_t jobs = spec.ratios.size() * spec.trials;
  std::vector<TrialResult> results(jobs);
  std::vector<std::exception_ptr> errors(jobs);

  auto run_job = [&](std::size_t k) {
    try {
      results[k] = run_trial(spec, truth, k / spec.trials, k % spec.trials);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  };

  const std::size_t workers = std::min(spec.threads, jobs);
  if (workers <= 1) {
    for (std::size_t k = 0; k < jobs; ++k) run_job(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < jobs; k = next++) run_job(k);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepResult out;
  out.trials = std::move(results);
  out.summary = summarize(out.trials);
  if (truth.model && !spec.solver.c) {
    out.entry_bound = truth.model->entry_bound;
  } else if (spec.solver.c) {
    out.entry_bound = *spec.solver.c;
  }
  return out;
}

void write_trials_csv(const std::vector<TrialResult>& trials, std::ostream& out) {
  out << "ratio,trial,rel_error,iters,seconds\n";
  for (const auto& t : trials) {
    out << fmt("%.6g", t.ratio) << ',' << t.trial << ',' << fmt("%.17g", t.rel_error) << ','
        << t.iters << ',' << fmt("%.6f", t.seconds) << '\n';
  }
}

void write_summary_csv(const std::vector<RatioSummary>& summary, std::ostream& out) {
  out << "ratio,mean_rel_error,std_rel_error\n";
  for (const auto& s : summary) {
    out << fmt("%.6g", s.ratio) << ',' << fmt("%.17g", s.mean_rel_error) << ','
        << fmt("%.17g", s.std_rel_error) << '\n';
  }
}

void write_baselines_csv(const std::vector<TrialResult>& trials, std::ostream& out) {
  out << "ratio,trial,sntd,mean_fill,dense_ntd\n";
  for (const auto& t : trials) {
    out << fmt("%.6g", t.ratio) << ',' << t.trial << ',' << fmt("%.17g", t.rel_error) << ','
        << fmt("%.17g", t.mean_fill_error) << ',' << fmt("%.17g", t.dense_ntd_error) << '\n';
  }
}

}  // namespace sntd
