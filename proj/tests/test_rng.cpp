#include <doctest.h>

#include <cmath>
#include <vector>

#include "roisim/sim/rng.hpp"

using roisim::RngStream;

TEST_CASE("identical (seed, stream) replays the identical sequence") {
  RngStream a(42, "mapper");
  RngStream b(42, "mapper");
  for (int i = 0; i < 1000; ++i) CHECK(a.uniform01() == b.uniform01());
}

TEST_CASE("distinct stream ids with one seed are independent and uniform") {
  RngStream a(42, "mapper");
  RngStream b(42, "channel");
  const int n = 100'000;
  double mean_a = 0.0;
  double mean_b = 0.0;
  bool any_diff = false;
  for (int i = 0; i < n; ++i) {
    const double xa = a.uniform01();
    const double xb = b.uniform01();
    mean_a += xa / n;
    mean_b += xb / n;
    any_diff = any_diff || xa != xb;
  }
  CHECK(any_diff);
  CHECK(mean_a == doctest::Approx(0.5).epsilon(0.02));
  CHECK(mean_b == doctest::Approx(0.5).epsilon(0.02));
  CHECK(std::abs(mean_a - 0.5) < 0.01);
  CHECK(std::abs(mean_b - 0.5) < 0.01);
}

TEST_CASE("uniform01 stays in [0,1)") {
  RngStream a(7, "x");
  for (int i = 0; i < 100'000; ++i) {
    const double u = a.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_int covers [0, bound] inclusively") {
  RngStream a(7, "backoff");
  std::vector<int> seen(8, 0);
  for (int i = 0; i < 20'000; ++i) {
    const auto v = a.uniform_int(7);
    REQUIRE(v <= 7);
    ++seen[static_cast<std::size_t>(v)];
  }
  for (const int count : seen) CHECK(count > 0);
}
