#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "sntd/prox.hpp"
#include "sntd/rng.hpp"

using namespace sntd;

TEST_CASE("hard threshold branches and tie") {
  CHECK(hard_threshold(1.5, 2.0) == 0.0);
  CHECK(hard_threshold(3.0, 2.0) == 3.0);
  CHECK(hard_threshold(2.0, 2.0) == 0.0);
  CHECK(hard_threshold(-3.0, 2.0) == -3.0);
  CHECK_THROWS_AS(hard_threshold(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(hard_threshold(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("hard threshold on matrices") {
  const auto m = Matrix::from_rows({{0.1, 5}, {-5, 0}});
  CHECK(hard_threshold_matrix(m, 2.0) == Matrix::from_rows({{0, 5}, {-5, 0}}));
  CHECK(hard_threshold_matrix(Matrix::from_rows({{0.5, -1.9}, {1.0, 0.0}}), 2.0) == Matrix(2, 2));
  const auto once = hard_threshold_matrix(m, 2.0);
  CHECK(hard_threshold_matrix(once, 2.0) == once);
  CHECK(hard_threshold_or_identity(m, 0.0) == m);
}

TEST_CASE("hard threshold minimizes the l0 objective (grid search oracle)") {
  Rng rng(42);
  for (int t = 0; t < 1000; ++t) {
    const double y = (rng.uniform() - 0.5) * 10.0;
    const double lam = 1e-3 + 4.0 * rng.uniform();
    const auto obj = [&](double x) { return lam * (x != 0.0 ? 1.0 : 0.0) + 0.5 * (x - y) * (x - y); };
    double best = obj(0.0);
    const double lo = -2.0 * std::abs(y), hi = 2.0 * std::abs(y);
    const int n = 1000000;
    for (int k = 0; k <= n; ++k) best = std::min(best, obj(lo + (hi - lo) * k / n));
    const double got = hard_threshold(y, lam);
    CHECK((got == 0.0 || got == y));
    CHECK(obj(got) <= best + 1e-9);
  }
}

TEST_CASE("box projection") {
  Matrix m = Matrix::from_rows({{-1, 0.5, 9}});
  CHECK(box_project(m, Box(0, 1)) == Matrix::from_rows({{0, 0.5, 1}}));
  const auto inside = Matrix::from_rows({{0.2, 0.7}});
  CHECK(box_project(inside, Box(0, 1)) == inside);
  CHECK(box_project(Matrix::from_rows({{-3, 0.1, 8}}), Box(0.4, 0.4)) == Matrix(1, 3, 0.4));
  CHECK_THROWS_AS(Box(1.0, 0.0), std::invalid_argument);

  Rng rng(9);
  for (int t = 0; t < 1000; ++t) {
    const double a = (rng.uniform() - 0.5) * 6, b = (rng.uniform() - 0.5) * 6;
    const Box box(-1.0, 2.0);
    const double pa = box.clamp(a), pb = box.clamp(b);
    CHECK(box.clamp(pa) == pa);
    CHECK(std::abs(pa - pb) <= std::abs(a - b));
  }
}
