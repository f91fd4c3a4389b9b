#pragma once

#include <cstdint>
#include <vector>

#include "sntd/hosvd.hpp"
#include "sntd/tensor.hpp"

namespace sntd {

struct SyntheticSpec {
  std::vector<std::size_t> dims;
  RankVector ranks;
  std::vector<double> sparsity;  // upsilon_i in (0, 1]: chance an entry of A_i is nonzero
  std::vector<double> scales;    // a_i
  std::uint64_t seed = 0;

  void validate() const;
};

struct SyntheticData {
  DenseTensor xstar;
  TuckerModel model;  // amplitude_bounds = scales, entry_bound = c = 2 ||xstar||_inf
};

/// Core entries i.i.d. uniform(0, 1); each entry of A_i independently nonzero
/// with probability upsilon_i, nonzero values uniform on (0, a_i). A factor
/// that comes out all zero is redrawn once; a second all-zero draw throws
/// std::runtime_error.
SyntheticData generate_synthetic(const SyntheticSpec& spec);

}  // namespace sntd
