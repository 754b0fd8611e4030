#include <doctest.h>

#include <cmath>
#include <set>

#include "rootsim/rng.hpp"

using namespace rootsim;

TEST_CASE("same key gives a bitwise identical stream") {
  RngState a(mix(42, 7)), b(mix(42, 7));
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("mix is associative over index lists") {
  CHECK(mix(1, 2, 3) == mix(mix(1, 2), 3));
  CHECK(mix(1, 2, 3, 4) == mix(mix(mix(1, 2), 3), 4));
  CHECK(mix(1, 2) != mix(2, 1));
}

TEST_CASE("nearby seeds give unrelated first draws") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 10000; ++s) seen.insert(RngState(mix(s, 0)).next_u64());
  CHECK(seen.size() == 10000);
}

TEST_CASE("uniform ranges") {
  RngState r(9);
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    CHECK_UNARY(u >= 0.0);
    CHECK_UNARY(u < 1.0);
    const double v = r.uniform_open_left();
    CHECK_UNARY(v > 0.0);
    CHECK_UNARY(v <= 1.0);
  }
}

TEST_CASE("uniform mean and coin balance") {
  RngState r(123);
  double s = 0.0;
  int heads = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) s += r.uniform();
  for (int i = 0; i < n; ++i) heads += r.coin();
  CHECK(s / n == doctest::Approx(0.5).epsilon(0.005));
  CHECK(std::abs(heads - n / 2) < 5 * std::sqrt(n / 4.0));
}

TEST_CASE("position advances by one step per draw") {
  RngState r(5);
  const auto p0 = r.position();
  r.next_u64();
  r.next_u64();
  CHECK(r.position() - p0 == 2 * 0x9E3779B97F4A7C15ULL);
}

static_assert(splitmix64(0) == 0xE220A8397B1DCDAFULL);
