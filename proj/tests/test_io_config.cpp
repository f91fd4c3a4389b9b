#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "sntd/config.hpp"
#include "sntd/io.hpp"
#include "sntd/rng.hpp"
#include "sntd/sweep.hpp"

using namespace sntd;
namespace fs = std::filesystem;

namespace {

DenseTensor ramp(const Shape& shape) {
  DenseTensor x(shape);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = 0.5 * static_cast<double>(k) - 3.25;
  return x;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "sntd_test_io_config";
  fs::create_directories(dir);
  return dir / name;
}

Config cfg_from(const std::string& text) {
  std::istringstream in(text);
  return Config::parse(in, "t.cfg");
}

}  // namespace

TEST_CASE("tensor stream roundtrip and layout") {
  const auto x = ramp(Shape{2, 3, 4});
  std::stringstream buf;
  write_tensor(buf, x);
  const std::string bytes = buf.str();
  CHECK(bytes.size() == 4 + 4 + 3 * 8 + 24 * 8);
  CHECK(bytes.substr(0, 4) == "SNTD");
  CHECK(static_cast<unsigned char>(bytes[4]) == 3);
  CHECK(static_cast<unsigned char>(bytes[8]) == 2);
  CHECK(read_tensor(buf) == x);

  std::stringstream special;
  DenseTensor s(Shape{3});
  s[0] = -0.0;
  s[1] = 1e-310;
  s[2] = 1.7976931348623157e308;
  write_tensor(special, s);
  const auto back = read_tensor(special);
  CHECK(std::signbit(back[0]));
  CHECK(back[1] == s[1]);
  CHECK(back[2] == s[2]);
}

TEST_CASE("tensor reader rejects malformed input") {
  const auto x = ramp(Shape{2, 2});
  std::stringstream buf;
  write_tensor(buf, x);
  const std::string good = buf.str();

  std::istringstream magic("XNTD" + good.substr(4));
  CHECK_THROWS_AS(read_tensor(magic), std::runtime_error);
  for (std::size_t cut : {std::size_t{2}, std::size_t{6}, std::size_t{13}, good.size() - 1}) {
    std::istringstream trunc(good.substr(0, cut));
    CHECK_THROWS_AS(read_tensor(trunc), std::runtime_error);
  }
  std::istringstream extra(good + "x");
  CHECK_THROWS_AS(read_tensor(extra), std::runtime_error);
  std::string zero = good;
  zero[8] = 0;
  std::istringstream zdim(zero);
  CHECK_THROWS_AS(read_tensor(zdim), std::runtime_error);
  std::string huge = good;
  for (int i = 8; i < 16; ++i) huge[i] = static_cast<char>(0xff);
  std::istringstream big(huge);
  CHECK_THROWS_AS(read_tensor(big), std::runtime_error);
}

TEST_CASE("observation roundtrip for every noise model") {
  const auto x = ramp(Shape{3, 2, 2});
  DenseTensor pos = x;
  for (auto& v : pos.values()) v = std::abs(v) + 0.5;
  for (auto model : {NoiseModel::gaussian(0.25), NoiseModel::laplace(0.5), NoiseModel::poisson(0.125)}) {
    const auto obs = observe(pos, {0, 3, 4, 11}, model, 9);
    std::stringstream buf;
    write_observations(buf, obs);
    CHECK(buf.str().substr(0, 4) == "SNTO");
    const auto back = read_observations(buf);
    CHECK(back.shape == obs.shape);
    CHECK(back.indices == obs.indices);
    CHECK(back.values == obs.values);
    CHECK(back.model.kind == obs.model.kind);
    CHECK(back.model.param == obs.model.param);
    CHECK(back.model.floor == (model.kind == NoiseKind::poisson ? 0.125 : 0.0));
  }
}

TEST_CASE("observation reader rejects malformed input") {
  const auto obs = observe(ramp(Shape{2, 2, 2}), {1, 5}, NoiseModel::gaussian(0.1), 3);
  std::stringstream buf;
  write_observations(buf, obs);
  const std::string good = buf.str();
  const std::size_t header = 4 + 4 + 3 * 8;

  std::istringstream wrong_magic("SNTD" + good.substr(4));
  CHECK_THROWS_AS(read_observations(wrong_magic), std::runtime_error);
  std::string tag = good;
  tag[header] = 7;
  std::istringstream bad_tag(tag);
  CHECK_THROWS_AS(read_observations(bad_tag), std::runtime_error);
  std::istringstream trunc(good.substr(0, good.size() - 3));
  CHECK_THROWS_AS(read_observations(trunc), std::runtime_error);
  // Index past the end of the tensor.
  std::string oob = good;
  oob[header + 1 + 8 + 8 + 8] = 100;
  std::istringstream out_of_range(oob);
  CHECK_THROWS_AS(read_observations(out_of_range), std::runtime_error);
  // Count larger than the tensor.
  std::string count = good;
  count[header + 1 + 8 + 8] = 9;
  std::istringstream too_many(count);
  CHECK_THROWS_AS(read_observations(too_many), std::runtime_error);
}

TEST_CASE("file helpers") {
  const auto x = ramp(Shape{4, 3});
  const auto p = scratch("x.tns");
  save_tensor(p, x);
  CHECK(load_tensor(p) == x);
  const auto obs = observe(x, {0, 2}, NoiseModel::laplace(1.0), 1);
  save_observations(scratch("y.obs"), obs);
  CHECK(load_observations(scratch("y.obs")).values == obs.values);
  CHECK_THROWS_AS(load_tensor(scratch("missing.tns")), std::runtime_error);
  CHECK_THROWS_AS(load_observations(p), std::runtime_error);
}

TEST_CASE("model json roundtrip") {
  Rng rng(3);
  TuckerModel m;
  m.core = DenseTensor(Shape{2, 1, 2});
  for (auto& v : m.core.values()) v = rng.uniform();
  for (std::size_t n : {3, 2, 4}) {
    Matrix a(n, m.core.shape().dim(m.factors.size()));
    for (auto& v : a.values()) v = rng.uniform();
    m.factors.push_back(a);
  }
  m.amplitude_bounds = {1.0, 2.0, 0.5};
  m.entry_bound = 3.75;
  const auto p = scratch("model.json");
  save_model(p, m);
  const auto back = load_model(p);
  CHECK(back.core == m.core);
  REQUIRE(back.factors.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(back.factors[i] == m.factors[i]);
  CHECK(back.amplitude_bounds == m.amplitude_bounds);
  CHECK(back.entry_bound == m.entry_bound);

  std::ofstream(scratch("bad.json")) << "{\"dims\": [3]}";
  CHECK_THROWS_AS(load_model(scratch("bad.json")), std::runtime_error);
  std::ofstream(scratch("junk.json")) << "not json";
  CHECK_THROWS_AS(load_model(scratch("junk.json")), std::runtime_error);
}

TEST_CASE("scalar parsers") {
  CHECK(parse_double(" 2.5 ") == 2.5);
  CHECK(parse_double("1e-4") == 1e-4);
  CHECK_THROWS_AS(parse_double("2.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("nan"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
  CHECK(parse_uint("42") == 42);
  CHECK_THROWS_AS(parse_uint("-1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_uint("1.5"), std::invalid_argument);
  CHECK(parse_bool("yes"));
  CHECK_FALSE(parse_bool("off"));
  CHECK_THROWS_AS(parse_bool("maybe"), std::invalid_argument);
  CHECK(parse_double_list("0.1, 0.2,0.3") == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(parse_size_list("30,30,30") == std::vector<std::size_t>{30, 30, 30});
  CHECK_THROWS_AS(parse_size_list("3,,4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_size_list("3,4,"), std::invalid_argument);
  CHECK(broadcast(std::vector<double>{2.0}, 3, "a") == std::vector<double>{2.0, 2.0, 2.0});
  CHECK_THROWS_AS(broadcast(std::vector<double>{1.0, 2.0}, 3, "a"), std::invalid_argument);
}

TEST_CASE("config parsing") {
  auto cfg = cfg_from("# header\n dims = 4,5,6  # trailing\n\nnoise=gaussian\nbeta = 250\nflag = true\n");
  CHECK(cfg.has("dims"));
  CHECK_FALSE(cfg.has("ranks"));
  CHECK(cfg.get_sizes("dims") == std::vector<std::size_t>{4, 5, 6});
  CHECK(cfg.require("noise") == "gaussian");
  CHECK(cfg.get_double("beta") == 250.0);
  CHECK(cfg.get_bool("flag") == true);
  CHECK_FALSE(cfg.get_double("missing").has_value());
  CHECK_NOTHROW(cfg.finish());
  CHECK_THROWS_AS(cfg.require("ranks"), std::invalid_argument);

  auto partial = cfg_from("a = 1\nb = 2\n");
  partial.get("a");
  CHECK_THROWS_WITH_AS(partial.finish(), doctest::Contains("b (line 2)"), std::invalid_argument);
  CHECK_THROWS_AS(cfg_from("a = 1\na = 2\n"), std::invalid_argument);
  CHECK_THROWS_AS(cfg_from("just words\n"), std::invalid_argument);
  CHECK_THROWS_AS(cfg_from(" = 3\n"), std::invalid_argument);
  auto typed = cfg_from("x = abc\n");
  CHECK_THROWS_WITH_AS(typed.get_double("x"), doctest::Contains("t.cfg:1: key 'x'"), std::invalid_argument);
  CHECK_THROWS_AS(Config::load(scratch("nope.cfg")), std::runtime_error);
}

TEST_CASE("sweep config loading") {
  auto cfg = cfg_from(
      "dims = 10,10,10\nranks = 2\nsparsity = 0.3\nscale = 1\ntruth_seed = 5\n"
      "noise = laplace\nparam = 0.05\nratios = 0.2,0.5\ntrials = 3\nseed = 9\n"
      "lambda = 5\nbeta = 100\nrho = 0.1\nalpha = 0.1\nmax_iters = 50\ntol = 1e-3\nc = auto\n"
      "baselines = true\nthreads = 2\n");
  const auto spec = load_sweep_spec(cfg);
  REQUIRE(spec.synthetic.has_value());
  CHECK(spec.synthetic->dims == std::vector<std::size_t>{10, 10, 10});
  CHECK(spec.synthetic->seed == 5);
  CHECK(spec.noise.kind == NoiseKind::laplace);
  CHECK(spec.noise.param == 0.05);
  CHECK(spec.ratios == std::vector<double>{0.2, 0.5});
  CHECK(spec.trials == 3);
  CHECK(spec.seed == 9);
  CHECK(spec.solver.beta == 100.0);
  CHECK(spec.solver.max_iters == 50);
  CHECK_FALSE(spec.solver.c.has_value());
  CHECK(spec.baselines);
  CHECK_FALSE(spec.timing);
  CHECK(spec.threads == 2);

  auto typo = cfg_from("dims = 10,10,10\nranks = 2\nsparsity = 0.3\nscale = 1\nnoise = gaussian\nratios = 0.5\nlamda = 3\n");
  CHECK_THROWS_WITH_AS(load_sweep_spec(typo), doctest::Contains("lamda"), std::invalid_argument);
  auto bad_ratio = cfg_from("dims = 10,10,10\nranks = 2\nsparsity = 0.3\nscale = 1\nnoise = gaussian\nratios = 1.5\n");
  CHECK_THROWS_AS(load_sweep_spec(bad_ratio), std::invalid_argument);
}
