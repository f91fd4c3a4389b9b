#include "sntd/synthetic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sntd/rng.hpp"

namespace sntd {

namespace {

constexpr std::uint64_t kCoreTag = 0x636f7265;    // "core"
constexpr std::uint64_t kFactorTag = 0x66616374;  // "fact"

// Uniform on (0, 1).
double open_uniform(Rng& rng) {
  double u = 0.0;
  while (u == 0.0) u = rng.uniform();
  return u;
}

Matrix draw_factor(std::size_t rows, std::size_t cols, double upsilon, double scale,
                   std::uint64_t seed) {
  Rng rng(seed);
  Matrix a(rows, cols);
  for (auto& v : a.values()) {
    const bool keep = upsilon >= 1.0 || rng.uniform() < upsilon;
    v = keep ? scale * open_uniform(rng) : 0.0;
  }
  return a;
}

}  // namespace

void SyntheticSpec::validate() const {
  const std::size_t d = dims.size();
  if (d == 0) throw std::invalid_argument("synthetic spec: dims must not be empty");
  if (ranks.size() != d || sparsity.size() != d || scales.size() != d) {
    throw std::invalid_argument("synthetic spec: ranks, sparsity and scales need one value per mode");
  }
  ranks.validate_for(Shape(dims));
  for (std::size_t i = 0; i < d; ++i) {
    if (!(sparsity[i] > 0.0 && sparsity[i] <= 1.0)) {
      throw std::invalid_argument("synthetic spec: sparsity ratios must lie in (0, 1]");
    }
    if (!(scales[i] > 0.0)) throw std::invalid_argument("synthetic spec: scales must be > 0");
  }
}

SyntheticData generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();
  const std::size_t d = spec.dims.size();

  TuckerModel model;
  model.core = DenseTensor(Shape(spec.ranks.values()));
  Rng core_rng(hash64({spec.seed, kCoreTag}));
  for (auto& v : model.core.values()) v = core_rng.uniform();

  for (std::size_t i = 0; i < d; ++i) {
    Matrix a;
    for (std::uint64_t attempt = 0; attempt < 2; ++attempt) {
      a = draw_factor(spec.dims[i], spec.ranks[i], spec.sparsity[i], spec.scales[i],
                      hash64({spec.seed, kFactorTag, i, attempt}));
      if (std::any_of(a.values().begin(), a.values().end(), [](double v) { return v != 0.0; })) break;
    }
    if (std::all_of(a.values().begin(), a.values().end(), [](double v) { return v == 0.0; })) {
      throw std::runtime_error("generate_synthetic: factor " + std::to_string(i) +
                               " is all zero after a redraw; raise its sparsity ratio");
    }
    model.factors.push_back(std::move(a));
  }
  model.amplitude_bounds = spec.scales;

  SyntheticData out;
  out.xstar = tucker_reconstruct(model);
  const double peak = infinity_norm(out.xstar);
  if (!(peak > 0.0)) throw std::runtime_error("generate_synthetic: ground truth is identically zero");
  model.entry_bound = 2.0 * peak;
  out.model = std::move(model);
  return out;
}

}  // namespace sntd
