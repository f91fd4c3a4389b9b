#include "sntd/io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace sntd {

namespace {

constexpr std::array<char, 4> kTensorMagic{'S', 'N', 'T', 'D'};
constexpr std::array<char, 4> kObsMagic{'S', 'N', 'T', 'O'};
// Guards against absurd allocations from corrupt headers.
constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 36;

template <typename U>
void put_le(std::ostream& out, U v) {
  std::array<char, sizeof(U)> buf{};
  for (std::size_t i = 0; i < sizeof(U); ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  out.write(buf.data(), buf.size());
}

template <typename U>
U get_le(std::istream& in, const char* what) {
  std::array<unsigned char, sizeof(U)> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!in) throw std::runtime_error(std::string("truncated file while reading ") + what);
  U v = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) v |= static_cast<U>(buf[i]) << (8 * i);
  return v;
}

void put_f64(std::ostream& out, double v) { put_le(out, std::bit_cast<std::uint64_t>(v)); }
double get_f64(std::istream& in, const char* what) {
  return std::bit_cast<double>(get_le<std::uint64_t>(in, what));
}

void check_magic(std::istream& in, const std::array<char, 4>& magic, const char* kind) {
  std::array<char, 4> got{};
  in.read(got.data(), got.size());
  if (!in || got != magic) throw std::runtime_error(std::string("bad magic: not a ") + kind + " file");
}

void write_shape(std::ostream& out, const Shape& shape) {
  put_le(out, static_cast<std::uint32_t>(shape.order()));
  for (auto n : shape.dims()) put_le(out, static_cast<std::uint64_t>(n));
}

Shape read_shape(std::istream& in) {
  const auto d = get_le<std::uint32_t>(in, "order");
  if (d == 0 || d > 64) throw std::runtime_error("invalid tensor order " + std::to_string(d));
  std::vector<std::size_t> dims(d);
  std::uint64_t total = 1;
  for (auto& n : dims) {
    const auto v = get_le<std::uint64_t>(in, "dimension");
    if (v == 0) throw std::runtime_error("zero dimension in file header");
    total *= v;
    if (total > kMaxEntries) throw std::runtime_error("tensor in file header is too large");
    n = static_cast<std::size_t>(v);
  }
  return Shape(std::move(dims));
}

void expect_eof(std::istream& in, const char* kind) {
  if (in.peek() != std::char_traits<char>::eof()) {
    throw std::runtime_error(std::string("trailing bytes after ") + kind + " payload");
  }
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

}  // namespace

void write_tensor(std::ostream& out, const DenseTensor& x) {
  out.write(kTensorMagic.data(), kTensorMagic.size());
  write_shape(out, x.shape());
  for (double v : x.values()) put_f64(out, v);
  if (!out) throw std::runtime_error("failed writing tensor");
}

DenseTensor read_tensor(std::istream& in) {
  check_magic(in, kTensorMagic, "tensor");
  Shape shape = read_shape(in);
  std::vector<double> values(shape.total());
  for (auto& v : values) v = get_f64(in, "tensor values");
  expect_eof(in, "tensor");
  return DenseTensor(std::move(shape), std::move(values));
}

void save_tensor(const std::filesystem::path& path, const DenseTensor& x) {
  auto out = open_out(path);
  write_tensor(out, x);
}

DenseTensor load_tensor(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_tensor(in);
}

void write_observations(std::ostream& out, const ObservationSet& obs) {
  obs.validate();
  out.write(kObsMagic.data(), kObsMagic.size());
  write_shape(out, obs.shape);
  put_le(out, static_cast<std::uint8_t>(obs.model.kind));
  put_f64(out, obs.model.param);
  put_f64(out, obs.model.kind == NoiseKind::poisson ? obs.model.floor : 0.0);
  put_le(out, static_cast<std::uint64_t>(obs.m()));
  for (std::size_t k = 0; k < obs.m(); ++k) {
    put_le(out, obs.indices[k]);
    put_f64(out, obs.values[k]);
  }
  if (!out) throw std::runtime_error("failed writing observations");
}

ObservationSet read_observations(std::istream& in) {
  check_magic(in, kObsMagic, "observation");
  ObservationSet obs;
  obs.shape = read_shape(in);
  const auto tag = get_le<std::uint8_t>(in, "noise tag");
  if (tag > 2) throw std::runtime_error("unknown noise tag " + std::to_string(tag));
  obs.model.kind = static_cast<NoiseKind>(tag);
  obs.model.param = get_f64(in, "noise parameter");
  obs.model.floor = get_f64(in, "noise floor");
  const auto m = get_le<std::uint64_t>(in, "observation count");
  if (m > obs.shape.total()) throw std::runtime_error("observation count exceeds tensor size");
  obs.indices.resize(m);
  obs.values.resize(m);
  for (std::uint64_t k = 0; k < m; ++k) {
    obs.indices[k] = get_le<std::uint64_t>(in, "observation index");
    obs.values[k] = get_f64(in, "observation value");
  }
  expect_eof(in, "observation");
  try {
    obs.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("invalid observation file: ") + e.what());
  }
  return obs;
}

void save_observations(const std::filesystem::path& path, const ObservationSet& obs) {
  auto out = open_out(path);
  write_observations(out, obs);
}

ObservationSet load_observations(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_observations(in);
}

void save_model(const std::filesystem::path& path, const TuckerModel& model) {
  model.validate();
  nlohmann::json j;
  j["dims"] = model.full_shape().dims();
  j["ranks"] = model.core.shape().dims();
  j["core"] = model.core.vec();
  j["factors"] = nlohmann::json::array();
  for (const auto& a : model.factors) {
    j["factors"].push_back({{"rows", a.rows()},
                            {"cols", a.cols()},
                            {"values", std::vector<double>(a.values().begin(), a.values().end())}});
  }
  j["amplitude_bounds"] = model.amplitude_bounds;
  j["entry_bound"] = model.entry_bound;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << j.dump(1) << '\n';
}

TuckerModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  TuckerModel model;
  try {
    const auto j = nlohmann::json::parse(in);
    model.core = DenseTensor(Shape(j.at("ranks").get<std::vector<std::size_t>>()),
                             j.at("core").get<std::vector<double>>());
    for (const auto& f : j.at("factors")) {
      model.factors.emplace_back(f.at("rows").get<std::size_t>(), f.at("cols").get<std::size_t>(),
                                 f.at("values").get<std::vector<double>>());
    }
    model.amplitude_bounds = j.at("amplitude_bounds").get<std::vector<double>>();
    model.entry_bound = j.at("entry_bound").get<double>();
    if (model.full_shape().dims() != j.at("dims").get<std::vector<std::size_t>>()) {
      throw std::invalid_argument("dims do not match factor rows");
    }
    model.validate();
  } catch (const std::exception& e) {
    throw std::runtime_error("invalid model file " + path.string() + ": " + e.what());
  }
  return model;
}

}  // namespace sntd
