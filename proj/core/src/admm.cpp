#include "sntd/admm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include "sntd/linalg.hpp"
#include "sntd/prox.hpp"

namespace sntd {

namespace {

void check_per_mode(const std::vector<double>& v, std::size_t order, const char* name,
                    bool allow_zero) {
  if (v.size() != order) {
    throw std::invalid_argument(std::string("admm config: ") + name + " needs one value per mode");
  }
  for (double x : v) {
    if (allow_zero ? !(x >= 0.0) : !(x > 0.0)) {
      throw std::invalid_argument(std::string("admm config: ") + name + " must be " +
                                  (allow_zero ? ">= 0" : "> 0"));
    }
  }
}

// a*x + b*y elementwise.
DenseTensor axpby(double a, const DenseTensor& x, double b, const DenseTensor& y) {
  if (x.shape() != y.shape()) throw std::invalid_argument("admm: tensor shape mismatch");
  DenseTensor out(x.shape());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a * x[k] + b * y[k];
  return out;
}

std::size_t count_nonzeros(const Matrix& m) {
  return static_cast<std::size_t>(
      std::count_if(m.values().begin(), m.values().end(), [](double v) { return v != 0.0; }));
}

}  // namespace

AdmmConfig AdmmConfig::uniform(const RankVector& ranks, double lambda, double beta, double rho,
                               double alpha, double c, double a) {
  const std::size_t d = ranks.size();
  AdmmConfig cfg;
  cfg.lambda.assign(d, lambda);
  cfg.beta1 = cfg.beta2 = cfg.beta3 = beta;
  cfg.rho.assign(d, rho);
  cfg.alpha.assign(d, alpha);
  cfg.c = c;
  cfg.a.assign(d, a);
  cfg.ranks = ranks;
  return cfg;
}

void AdmmConfig::validate(std::size_t order) const {
  check_per_mode(lambda, order, "lambda", true);
  check_per_mode(rho, order, "rho", false);
  check_per_mode(alpha, order, "alpha", false);
  check_per_mode(a, order, "a", false);
  if (!(beta1 > 0.0) || !(beta2 > 0.0) || !(beta3 > 0.0)) {
    throw std::invalid_argument("admm config: beta1, beta2, beta3 must be > 0");
  }
  if (!(tol > 0.0)) throw std::invalid_argument("admm config: tol must be > 0");
  if (max_iters < 1) throw std::invalid_argument("admm config: max_iters must be >= 1");
  if (!(c > 0.0)) throw std::invalid_argument("admm config: c must be > 0");
  if (!(poisson_floor >= 0.0)) throw std::invalid_argument("admm config: poisson_floor must be >= 0");
  if (ranks.size() != order) throw std::invalid_argument("admm config: rank vector length mismatch");
}

double entry_floor(const ObservationSet& obs, const AdmmConfig& config) {
  if (obs.model.kind != NoiseKind::poisson) return 0.0;
  if (config.poisson_floor > 0.0) return config.poisson_floor;
  if (obs.model.floor > 0.0) return obs.model.floor;
  return AdmmConfig::kDefaultPoissonFloor;
}

AdmmState initial_state(const ObservationSet& obs, const TuckerModel& init,
                        const AdmmConfig& config) {
  obs.validate();
  const std::size_t d = obs.shape.order();
  config.validate(d);
  config.ranks.validate_for(obs.shape);
  init.validate();
  if (init.full_shape() != obs.shape) {
    throw std::invalid_argument("admm: initial model shape does not match observations");
  }
  if (init.core.shape().dims() != config.ranks.values()) {
    throw std::invalid_argument("admm: initial core shape does not match configured ranks");
  }
  if (entry_floor(obs, config) > config.c) {
    throw std::invalid_argument("admm: poisson floor exceeds the entry bound c");
  }

  AdmmState st;
  st.x = zero_filled(obs);
  st.z = st.x;
  st.core = init.core;
  st.b = init.core;
  st.factors = init.factors;
  st.h = init.factors;
  st.s = init.factors;
  st.t1 = DenseTensor(obs.shape);
  st.t2 = DenseTensor(obs.shape);
  st.t3 = DenseTensor(init.core.shape());
  for (const auto& a : init.factors) {
    st.m.emplace_back(a.rows(), a.cols());
    st.n.emplace_back(a.rows(), a.cols());
  }
  return st;
}

DenseTensor update_x(const AdmmState& state, const ObservationSet& obs, const AdmmConfig& config) {
  const double bsum = config.beta1 + config.beta2;
  const DenseTensor recon = tucker_reconstruct(state.core, state.factors);
  DenseTensor h(obs.shape);
  for (std::size_t k = 0; k < h.size(); ++k) {
    h[k] = (config.beta1 * recon[k] - state.t1[k] + config.beta2 * state.z[k] - state.t2[k]) / bsum;
  }
  return data_prox(obs.model, h, obs, bsum);
}

// Solves (beta1 * kron_{i=d..1}(A_i^T A_i) + beta3 I) vec(C) = q through the
// eigendecompositions G_i = V_i diag(e_i) V_i^T: the system matrix is
// (kron V_i) diag(beta1 * prod_i e_i + beta3) (kron V_i)^T.
DenseTensor update_core(const AdmmState& state, const AdmmConfig& config) {
  const std::size_t d = state.factors.size();
  const DenseTensor w = axpby(config.beta1, state.x, 1.0, state.t1);
  DenseTensor q = multi_mode_product(w, state.factors, /*transposed=*/true);
  for (std::size_t k = 0; k < q.size(); ++k) q[k] += config.beta3 * state.b[k] - state.t3[k];

  std::vector<Matrix> vecs;
  std::vector<std::vector<double>> vals;
  vecs.reserve(d);
  vals.reserve(d);
  for (const auto& a : state.factors) {
    auto eig = symmetric_eigen(gram(a));
    for (auto& e : eig.values) e = std::max(e, 0.0);
    vecs.push_back(std::move(eig.vectors));
    vals.push_back(std::move(eig.values));
  }

  DenseTensor rotated = multi_mode_product(q, vecs, /*transposed=*/true);
  const Shape& cs = rotated.shape();
  std::vector<std::size_t> idx(d, 0);
  for (std::size_t k = 0; k < rotated.size(); ++k) {
    double e = 1.0;
    for (std::size_t i = 0; i < d; ++i) e *= vals[i][idx[i]];
    rotated[k] /= config.beta1 * e + config.beta3;
    for (std::size_t i = 0; i < d; ++i) {
      if (++idx[i] < cs.dim(i)) break;
      idx[i] = 0;
    }
  }
  return multi_mode_product(rotated, vecs);
}

Matrix update_factor(const AdmmState& state, const AdmmConfig& config, std::size_t mode) {
  const std::size_t d = state.factors.size();
  if (mode >= d) throw std::out_of_range("update_factor: mode out of range");
  const DenseTensor k = multi_mode_product(state.core, state.factors, false, mode);
  const Matrix r = unfold(k, mode);
  const Matrix w = unfold(axpby(config.beta1, state.x, 1.0, state.t1), mode);

  const double rho = config.rho[mode];
  Matrix numer = matmul_bt(w, r);
  const Matrix& h = state.h[mode];
  const Matrix& mm = state.m[mode];
  for (std::size_t e = 0; e < numer.size(); ++e) numer.data()[e] += rho * h.data()[e] - mm.data()[e];

  Matrix sys = outer_gram(r);
  for (auto& v : sys.values()) v *= config.beta1;
  for (std::size_t i = 0; i < sys.rows(); ++i) sys(i, i) += rho;
  return solve_spd_right(sys, numer);
}

Auxiliaries update_auxiliaries(const AdmmState& state, const ObservationSet& obs,
                               const AdmmConfig& config) {
  const std::size_t d = state.factors.size();
  Auxiliaries aux;
  aux.z = box_project(axpby(1.0, state.x, 1.0 / config.beta2, state.t2),
                      Box(entry_floor(obs, config), config.c));
  aux.b = box_project(axpby(1.0, state.core, 1.0 / config.beta3, state.t3), Box(0.0, 1.0));
  aux.h.reserve(d);
  aux.s.reserve(d);
  for (std::size_t i = 0; i < d; ++i) {
    const Matrix& a = state.factors[i];
    aux.h.push_back(hard_threshold_or_identity(a + (1.0 / config.rho[i]) * state.m[i],
                                               config.lambda[i] / config.rho[i]));
    aux.s.push_back(box_project(a + (1.0 / config.alpha[i]) * state.n[i], Box(0.0, config.a[i])));
  }
  return aux;
}

Multipliers update_multipliers(const AdmmState& state, const AdmmConfig& config,
                               const DenseTensor& reconstruction) {
  const std::size_t d = state.factors.size();
  Multipliers out;
  out.t1 = state.t1;
  out.t2 = state.t2;
  out.t3 = state.t3;
  for (std::size_t k = 0; k < out.t1.size(); ++k) {
    out.t1[k] += config.beta1 * (state.x[k] - reconstruction[k]);
    out.t2[k] += config.beta2 * (state.x[k] - state.z[k]);
  }
  for (std::size_t k = 0; k < out.t3.size(); ++k) {
    out.t3[k] += config.beta3 * (state.core[k] - state.b[k]);
  }
  for (std::size_t i = 0; i < d; ++i) {
    out.m.push_back(state.m[i] + config.rho[i] * (state.factors[i] - state.h[i]));
    out.n.push_back(state.n[i] + config.alpha[i] * (state.factors[i] - state.s[i]));
  }
  return out;
}

Multipliers update_multipliers(const AdmmState& state, const AdmmConfig& config) {
  return update_multipliers(state, config, tucker_reconstruct(state.core, state.factors));
}

SolveResult solve(const ObservationSet& obs, const AdmmConfig& config, const TuckerModel& init) {
  const auto start = std::chrono::steady_clock::now();
  AdmmState st = initial_state(obs, init, config);
  const std::size_t d = st.factors.size();
  const Box entry_box(entry_floor(obs, config), config.c);

  SolveReport report;
  report.history.reserve(config.max_iters);
  for (std::size_t iter = 0; iter < config.max_iters; ++iter) {
    DenseTensor x_prev = st.x;

    st.x = update_x(st, obs, config);
    st.core = update_core(st, config);
    for (std::size_t i = 0; i < d; ++i) st.factors[i] = update_factor(st, config, i);
    Auxiliaries aux = update_auxiliaries(st, obs, config);
    st.z = std::move(aux.z);
    st.b = std::move(aux.b);
    st.h = std::move(aux.h);
    st.s = std::move(aux.s);
    const DenseTensor recon = tucker_reconstruct(st.core, st.factors);
    Multipliers mult = update_multipliers(st, config, recon);
    st.t1 = std::move(mult.t1);
    st.t2 = std::move(mult.t2);
    st.t3 = std::move(mult.t3);
    st.m = std::move(mult.m);
    st.n = std::move(mult.n);

    IterationRecord rec;
    const double prev_norm = frobenius_norm(x_prev);
    const double change = distance(st.x.values(), x_prev.values());
    if (prev_norm > 0.0) {
      rec.rel_change = change / prev_norm;
    } else {
      rec.rel_change = change == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    rec.res_tucker = distance(st.x.values(), recon.values());
    rec.res_z = distance(st.x.values(), st.z.values());
    rec.res_b = distance(st.core.values(), st.b.values());
    double penalty = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      rec.res_h = std::max(rec.res_h, distance(st.factors[i].values(), st.h[i].values()));
      rec.res_s = std::max(rec.res_s, distance(st.factors[i].values(), st.s[i].values()));
      penalty += config.lambda[i] * static_cast<double>(count_nonzeros(st.h[i]));
    }
    rec.objective = neg_log_likelihood(obs, box_project(st.x, entry_box)) + penalty;
    report.history.push_back(rec);
    report.iterations = iter + 1;
    if (rec.rel_change <= config.tol) break;
  }

  SolveResult result;
  result.xhat = box_project(std::move(st.x), entry_box);
  result.model.core = std::move(st.b);
  result.model.factors = std::move(st.s);
  result.model.amplitude_bounds = config.a;
  result.model.entry_bound = config.c;
  result.report = std::move(report);
  result.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

void write_report_csv(const SolveReport& report, std::ostream& out) {
  out << "iter,objective,rel_change,res_tucker,res_z,res_b,res_h,res_s\n";
  char line[512];
  for (std::size_t k = 0; k < report.history.size(); ++k) {
    const auto& r = report.history[k];
    std::snprintf(line, sizeof line, "%zu,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e,%.12e\n", k + 1,
                  r.objective, r.rel_change, r.res_tucker, r.res_z, r.res_b, r.res_h, r.res_s);
    out << line;
  }
}

}  // namespace sntd
