#pragma once

// Binary tensor / observation files and the JSON model file.
//
// Tensor file ("TNS1"):  "SNTD" | u32 order d | d x u64 dims | total x f64
// values in vectorization order.
// Observation file ("OBS1"): "SNTO" | u32 d | d x u64 dims | u8 noise tag
// (0 gaussian, 1 laplace, 2 poisson) | f64 parameter | f64 floor (poisson,
// else 0) | u64 m | m x (u64 linear index, f64 value), indices ascending.
// All integers and floats are little-endian.

#include <filesystem>
#include <iosfwd>

#include "sntd/noise.hpp"
#include "sntd/tensor.hpp"

namespace sntd {

void write_tensor(std::ostream& out, const DenseTensor& x);
DenseTensor read_tensor(std::istream& in);
void save_tensor(const std::filesystem::path& path, const DenseTensor& x);
DenseTensor load_tensor(const std::filesystem::path& path);

void write_observations(std::ostream& out, const ObservationSet& obs);
ObservationSet read_observations(std::istream& in);
void save_observations(const std::filesystem::path& path, const ObservationSet& obs);
ObservationSet load_observations(const std::filesystem::path& path);

/// JSON with keys dims, ranks, core, factors[{rows, cols, values}],
/// amplitude_bounds, entry_bound. Arrays are in storage order.
void save_model(const std::filesystem::path& path, const TuckerModel& model);
TuckerModel load_model(const std::filesystem::path& path);

}  // namespace sntd
