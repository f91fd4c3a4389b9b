// sntd: generate, observe, solve, sweep and bounds subcommands.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sntd/admm.hpp"
#include "sntd/bounds.hpp"
#include "sntd/config.hpp"
#include "sntd/hosvd.hpp"
#include "sntd/io.hpp"
#include "sntd/noise.hpp"
#include "sntd/rng.hpp"
#include "sntd/sweep.hpp"
#include "sntd/synthetic.hpp"

namespace {

using namespace sntd;

NoiseModel make_noise(const std::string& name, double param) {
  switch (parse_noise_kind(name)) {
    case NoiseKind::gaussian: return NoiseModel::gaussian(param);
    case NoiseKind::laplace: return NoiseModel::laplace(param);
    case NoiseKind::poisson: return NoiseModel::poisson(param);
  }
  throw std::invalid_argument("unknown noise model " + name);
}

std::ofstream open_text(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  return out;
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  const auto dot = out.rfind('.');
  const auto slash = out.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return out + suffix + ".csv";
  return out.substr(0, dot) + suffix + out.substr(dot);
}

struct GenerateArgs {
  std::string dims, ranks, sparsity = "1.0", scale = "1.0", out, model_out;
  std::uint64_t seed = 0;
};

int run_generate(const GenerateArgs& g) {
  SyntheticSpec spec;
  spec.dims = parse_size_list(g.dims);
  const std::size_t d = spec.dims.size();
  spec.ranks = RankVector(broadcast(parse_size_list(g.ranks), d, "ranks"));
  spec.sparsity = broadcast(parse_double_list(g.sparsity), d, "sparsity");
  spec.scales = broadcast(parse_double_list(g.scale), d, "scale");
  spec.seed = g.seed;
  const auto data = generate_synthetic(spec);
  save_tensor(g.out, data.xstar);
  if (!g.model_out.empty()) save_model(g.model_out, data.model);
  std::printf("wrote %s (c = %.10g)\n", g.out.c_str(), data.model.entry_bound);
  return 0;
}

struct ObserveArgs {
  std::string input, noise = "gaussian", out;
  double param = 0.01, ratio = 1.0;
  bool exact_m = false;
  std::uint64_t seed = 0;
};

int run_observe(const ObserveArgs& o) {
  const DenseTensor x = load_tensor(o.input);
  if (!(o.ratio > 0.0 && o.ratio <= 1.0)) throw std::invalid_argument("--ratio must lie in (0, 1]");
  const std::uint64_t mask_seed = hash64({o.seed, kMaskPurpose});
  std::vector<std::uint64_t> omega;
  if (o.exact_m) {
    const auto m = static_cast<std::uint64_t>(std::llround(o.ratio * static_cast<double>(x.size())));
    omega = exact_mask(x.shape(), m, mask_seed);
  } else {
    omega = bernoulli_mask(x.shape(), o.ratio, mask_seed);
  }
  const auto obs = observe(x, std::move(omega), make_noise(o.noise, o.param), hash64({o.seed, kNoisePurpose}));
  save_observations(o.out, obs);
  std::printf("wrote %s (m = %zu of %zu)\n", o.out.c_str(), obs.m(), x.size());
  return 0;
}

struct SolveArgs {
  std::string obs, ranks, lambda = "10", c = "auto", a, model, out, report, model_out, truth;
  double beta = 250.0, rho = 0.01, alpha = 0.01, tol = 1e-4, floor = 0.0;
  std::size_t max_iters = 300;
};

int run_solve(const SolveArgs& s) {
  const ObservationSet obs = load_observations(s.obs);
  const std::size_t d = obs.shape.order();
  std::optional<TuckerModel> truth_model;
  if (!s.model.empty()) truth_model = load_model(s.model);

  double c = 0.0;
  if (s.c != "auto") {
    c = parse_double(s.c);
  } else if (truth_model) {
    c = truth_model->entry_bound;
  } else {
    for (double v : obs.values) c = std::max(c, 2.0 * v);
    if (!(c > 0.0)) throw std::runtime_error("--c auto: no positive observed value");
  }
  AdmmConfig cfg = AdmmConfig::uniform(RankVector(broadcast(parse_size_list(s.ranks), d, "ranks")), 0.0,
                                       s.beta, s.rho, s.alpha, c);
  cfg.lambda = broadcast(parse_double_list(s.lambda), d, "lambda");
  if (!s.a.empty()) {
    cfg.a = broadcast(parse_double_list(s.a), d, "a");
  } else if (truth_model) {
    cfg.a = truth_model->amplitude_bounds;
  }
  cfg.max_iters = s.max_iters;
  cfg.tol = s.tol;
  cfg.poisson_floor = s.floor;

  const SolveResult res = solve_from_observations(obs, cfg);
  save_tensor(s.out, res.xhat);
  if (!s.report.empty()) {
    auto out = open_text(s.report);
    write_report_csv(res.report, out);
  }
  if (!s.model_out.empty()) save_model(s.model_out, res.model);
  std::printf("iterations %zu, objective %.10g, c %.10g\n", res.report.iterations,
              res.report.history.empty() ? 0.0 : res.report.history.back().objective, c);
  if (!s.truth.empty()) {
    std::printf("relative error %.10g\n", relative_error(res.xhat, load_tensor(s.truth)));
  }
  return 0;
}

struct SweepArgs {
  std::string spec, out, summary, baselines;
  std::optional<std::size_t> threads;
  bool tune = false, timing = false;
};

int run_sweep_cmd(const SweepArgs& a) {
  Config cfg = Config::load(a.spec);
  SweepSpec spec = load_sweep_spec(cfg);
  if (a.tune) spec.tune = true;
  if (a.timing) spec.timing = true;
  if (a.threads) spec.threads = *a.threads;
  if (!a.baselines.empty()) spec.baselines = true;
  const SweepResult res = run_sweep(spec);
  {
    auto out = open_text(a.out);
    write_trials_csv(res.trials, out);
  }
  const std::string summary = a.summary.empty() ? sibling_path(a.out, "_summary") : a.summary;
  {
    auto out = open_text(summary);
    write_summary_csv(res.summary, out);
  }
  if (spec.baselines) {
    auto out = open_text(a.baselines.empty() ? sibling_path(a.out, "_baselines") : a.baselines);
    write_baselines_csv(res.trials, out);
  }
  for (const auto& s : res.summary) {
    std::printf("ratio %-6g mean %.6g  std %.6g\n", s.ratio, s.mean_rel_error, s.std_rel_error);
  }
  return 0;
}

struct BoundsArgs {
  std::string spec, csv;
};

int run_bounds(const BoundsArgs& b) {
  Config cfg = Config::load(b.spec);
  ProblemSpec p;
  p.dims = parse_size_list(cfg.require("dims"));
  const std::size_t d = p.dims.size();
  p.ranks = broadcast(parse_size_list(cfg.require("ranks")), d, "ranks");
  p.amplitudes = broadcast(cfg.get_doubles("a").value_or(std::vector<double>{1.0}), d, "a");
  p.c = parse_double(cfg.require("c"));
  p.m = parse_double(cfg.require("m"));
  p.noise = make_noise(cfg.require("noise"), parse_double(cfg.require("param")));
  p.sparsity = broadcast(parse_double_list(cfg.require("sparsity")), d, "sparsity");
  std::optional<MinimaxConstants> k;
  auto mu = cfg.get_double("mu");
  auto at = cfg.get_double("alpha_tilde");
  auto gm = cfg.get_double("gamma_m");
  if (mu || at || gm) {
    if (!(mu && at && gm)) throw std::invalid_argument("bounds: give all of mu, alpha_tilde, gamma_m or none");
    k = MinimaxConstants{*mu, *at, *gm};
  }
  cfg.finish();

  const BoundReport r = evaluate_bounds(p, k);
  std::printf("%-20s %.12g\n", "beta", r.beta);
  std::printf("%-20s %.12g\n", "tau", r.tau);
  std::printf("%-20s %.12g\n", "gamma", r.gamma);
  std::printf("%-20s %.12g\n", "lambda_theoretical", r.lambda_theoretical);
  std::printf("%-20s %.12g\n", "dof", r.dof);
  std::printf("%-20s %.12g\n", "upper_bound", r.upper_bound);
  if (r.lower_bound) std::printf("%-20s %.12g\n", "lower_bound", *r.lower_bound);
  if (!b.csv.empty()) {
    auto out = open_text(b.csv);
    out << "beta,tau,gamma,lambda_theoretical,dof,upper_bound,lower_bound\n";
    char buf[256];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,", r.beta, r.tau, r.gamma,
                  r.lambda_theoretical, r.dof, r.upper_bound);
    out << buf;
    if (r.lower_bound) {
      std::snprintf(buf, sizeof buf, "%.17g", *r.lower_bound);
      out << buf;
    }
    out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse nonnegative Tucker decomposition and completion"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Draw a synthetic sparse nonnegative Tucker tensor");
  g->add_option("--dims", gen.dims, "Comma-separated dimensions")->required();
  g->add_option("--ranks", gen.ranks, "Tucker ranks (one value broadcasts)")->required();
  g->add_option("--sparsity", gen.sparsity, "Nonzero probability of factor entries, in (0,1]");
  g->add_option("--scale", gen.scale, "Factor amplitude bounds a_i");
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "Output tensor file")->required();
  g->add_option("--model-out", gen.model_out, "Write the ground-truth model as JSON");

  ObserveArgs obs;
  auto* o = app.add_subcommand("observe", "Sample entries and add noise");
  o->add_option("--input", obs.input)->required();
  o->add_option("--noise", obs.noise, "gaussian | laplace | poisson");
  o->add_option("--param", obs.param, "sigma^2, Laplace scale, or Poisson floor");
  o->add_option("--ratio", obs.ratio, "Sampling probability");
  o->add_flag("--exact-m", obs.exact_m, "Observe exactly round(ratio * size) entries");
  o->add_option("--seed", obs.seed);
  o->add_option("--out", obs.out)->required();

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "Run the ADMM solver on an observation file");
  s->add_option("--obs", sol.obs)->required();
  s->add_option("--ranks", sol.ranks)->required();
  s->add_option("--lambda", sol.lambda, "Sparsity weights (one value broadcasts)");
  s->add_option("--beta", sol.beta);
  s->add_option("--rho", sol.rho);
  s->add_option("--alpha", sol.alpha);
  s->add_option("--c", sol.c, "Entry bound, or 'auto'");
  s->add_option("--a", sol.a, "Factor amplitude bounds (default 1, or from --model)");
  s->add_option("--model", sol.model, "Ground-truth model JSON supplying c and a");
  s->add_option("--poisson-floor", sol.floor, "Lower entry bound under Poisson noise");
  s->add_option("--max-iters", sol.max_iters);
  s->add_option("--tol", sol.tol);
  s->add_option("--out", sol.out)->required();
  s->add_option("--report", sol.report, "Per-iteration CSV");
  s->add_option("--model-out", sol.model_out, "Write the estimated model as JSON");
  s->add_option("--truth", sol.truth, "Ground-truth tensor; prints the relative error");

  SweepArgs sw;
  auto* w = app.add_subcommand("sweep", "Relative error versus sampling ratio");
  w->add_option("--spec", sw.spec, "Sweep config file")->required();
  w->add_option("--out", sw.out, "Per-trial CSV")->required();
  w->add_option("--summary", sw.summary, "Aggregate CSV (default: <out>_summary.csv)");
  w->add_option("--baselines", sw.baselines, "Baseline CSV; enables baselines");
  w->add_option("--threads", sw.threads);
  w->add_flag("--tune", sw.tune, "Best-of-grid hyperparameters per trial");
  w->add_flag("--timing", sw.timing, "Record wall time in the seconds column");

  BoundsArgs bd;
  auto* b = app.add_subcommand("bounds", "Evaluate the theoretical error bounds");
  b->add_option("--spec", bd.spec, "Problem config file")->required();
  b->add_option("--csv", bd.csv, "Also write the values as CSV");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*g) return run_generate(gen);
    if (*o) return run_observe(obs);
    if (*s) return run_solve(sol);
    if (*w) return run_sweep_cmd(sw);
    if (*b) return run_bounds(bd);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
