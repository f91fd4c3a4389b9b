#pragma once

// Seedable, splittable random streams.
//
// Everything stochastic in the library takes an explicit 64-bit seed. Child
// seeds are derived by hashing (parent, tag...) with the splitmix64 finalizer,
// and per-entry draws use a stream keyed by (seed, entry index) so that serial
// and parallel sampling agree bitwise. Variate transforms are implemented here
// rather than through <random> distributions, whose output is
// implementation-defined.

#include <cstdint>
#include <initializer_list>

namespace sntd {

std::uint64_t splitmix64(std::uint64_t x);

/// Order-sensitive hash of a list of 64-bit words.
std::uint64_t hash64(std::initializer_list<std::uint64_t> words);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  /// Stream keyed by (seed, index).
  static Rng for_entry(std::uint64_t seed, std::uint64_t index) {
    return Rng(hash64({seed, index}));
  }

  std::uint64_t next_u64();
  /// Uniform on [0, 1).
  double uniform();
  /// Uniform on (0, 1].
  double uniform_open0();
  /// Uniform integer in [0, n).
  std::uint64_t uniform_index(std::uint64_t n);
  double normal();
  /// Laplace(0, scale): density exp(-|x|/scale) / (2 scale).
  double laplace(double scale);
  /// Poisson(rate): inversion for rate < 30, transformed rejection above.
  std::uint64_t poisson(double rate);

 private:
  std::uint64_t state_;
};

}  // namespace sntd
