#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include <json.hpp>

#include "oracles.hpp"
#include "rootsim/errors.hpp"
#include "rootsim/lcd.hpp"
#include "rootsim/montecarlo.hpp"
#include "rootsim/rng.hpp"

using namespace rootsim;

namespace {

constexpr double kPi = std::numbers::pi;

bool same_cert(const LcdCertificate& a, const LcdCertificate& b) {
  return a.min_ratio == b.min_ratio && a.certified_lower_bound == b.certified_lower_bound &&
         a.violation_found == b.violation_found;
}

}  // namespace

TEST_CASE("V_k rows for degenerate k") {
  const VkMatrix v0(8, 0);
  for (std::size_t j = 0; j < 8; ++j) {
    CHECK(v0.cos_at(j) == 1.0);
    CHECK(v0.sin_at(j) == 0.0);
  }
  const VkMatrix vh(8, 4);
  for (std::size_t j = 0; j < 8; ++j) {
    CHECK(vh.cos_at(j) == (j % 2 ? -1.0 : 1.0));
    CHECK(vh.sin_at(j) == 0.0);
    CHECK(vh.column_norm(j) == 1.0);
  }
}

TEST_CASE("V_k X is the circulant eigenvalue") {
  const std::vector<double> x{0.5, -1.0, 2.0, 0.25, 1.0};
  const VkMatrix v(5, 2);
  const auto y = v.apply(x);
  std::complex<double> lam = 0.0;
  for (std::size_t j = 0; j < 5; ++j) lam += x[j] * std::polar(1.0, 2.0 * kPi * 2.0 * j / 5.0);
  CHECK(y[0] == doctest::Approx(lam.real()));
  CHECK(y[1] == doctest::Approx(lam.imag()));
}

TEST_CASE("norm identity |V_k^T theta|^2 = n |theta|^2 / 2 for prime n") {
  RngState r(3);
  for (std::size_t n : {5, 31, 61, 127}) {
    for (std::size_t k = 1; k < n; k += 1 + n / 10) {
      const VkMatrix v(n, k);
      for (int i = 0; i < 5; ++i) {
        const std::array<double, 2> th{4 * r.uniform() - 2, 4 * r.uniform() - 2};
        const auto y = v.apply_transpose(th);
        double s = 0.0;
        for (double e : y) s += e * e;
        const double want = n * (th[0] * th[0] + th[1] * th[1]) / 2.0;
        CHECK(std::abs(s - want) <= 1e-9 * want);
      }
    }
  }
}

TEST_CASE("successive columns move by at most 2 pi k / n") {
  for (std::size_t n : {31, 61, 127}) {
    const VkMatrix v(n, 1);
    for (double a : {0.0, 0.3, 1.7, 3.0}) {
      double worst = 0.0;
      for (std::size_t j = 0; j + 1 < n; ++j) {
        const double c0 = v.cos_at(j) * std::cos(a) + v.sin_at(j) * std::sin(a);
        const double c1 = v.cos_at(j + 1) * std::cos(a) + v.sin_at(j + 1) * std::sin(a);
        worst = std::max(worst, std::abs(c1 - c0));
      }
      CHECK(worst <= 2.0 * kPi / n);
    }
  }
}

TEST_CASE("distance to the integer lattice") {
  CHECK(dist_to_lattice(std::vector<double>{1.0, -3.0, 0.0}) == 0.0);
  for (std::size_t n : {1, 4, 9}) {
    const std::vector<double> half(n, 0.5);
    CHECK(dist_to_lattice(half) == doctest::Approx(std::sqrt(n) / 2.0));
  }
  CHECK(dist_to_lattice(std::vector<double>{0.9, 2.2}) == doctest::Approx(std::sqrt(0.01 + 0.04)));
  CHECK(log_plus(0.5) == 0.0);
  CHECK(log_plus(std::exp(2.0)) == doctest::Approx(2.0));
}

TEST_CASE("integer image gives a violation") {
  const VkMatrix v(8, 0);
  CHECK(lcd_violates(v, 2.0, {1.0, 0.0}));
  const auto cert = lcd_search(v, 2.0, 0.5, 2.0, 256, 64);
  CHECK(cert.violation_found);
  CHECK(cert.certified_lower_bound <= 1.0);
  CHECK(cert.min_ratio == 0.0);
}

TEST_CASE("no violation is possible below 1/2") {
  for (std::size_t n : {7, 31}) {
    const auto cert = lcd_search(VkMatrix(n, 1), 2.0, 0.01, 0.49, 128, 128);
    CHECK_FALSE(cert.violation_found);
    CHECK(cert.certified_lower_bound == 0.49);
  }
}

TEST_CASE("parallel and serial searches agree") {
  for (std::size_t n : {31, 61}) {
    const VkMatrix v(n, 1);
    const auto a = lcd_search(v, 2.0, 0.5, 0.1 * n, 256, 256);
    const auto b = lcd_search_serial(v, 2.0, 0.5, 0.1 * n, 256, 256);
    CHECK(same_cert(a, b));
  }
}

TEST_CASE("refining the grid never raises the certificate by more than one step") {
  const VkMatrix v(31, 1);
  const double t_min = 0.5, t_max = 3.1;
  const auto coarse = lcd_search(v, 2.0, t_min, t_max, 128, 128);
  const auto fine = lcd_search(v, 2.0, t_min, t_max, 255, 256);
  const double step = std::pow(t_max / t_min, 1.0 / 127.0);
  CHECK(fine.certified_lower_bound <= coarse.certified_lower_bound * step);
}

TEST_CASE("certificate json") {
  const auto cert = lcd_search(VkMatrix(7, 1), 2.0, 0.1, 0.4, 64, 64);
  const auto j = nlohmann::json::parse(cert.to_json());
  CHECK(j["n"] == 7);
  CHECK(j["k"] == 1);
  CHECK(j["L"] == 2.0);
  CHECK(j["t_range"][1] == 0.4);
  CHECK(j["grid"][0] == 64);
  CHECK(j["min_ratio"].is_null());
  CHECK(j["certified_lower_bound"] == 0.4);
}

TEST_CASE("search parameter validation") {
  const VkMatrix v(7, 1);
  CHECK_THROWS_AS(lcd_search(v, 0.0, 0.5, 1.0, 64, 64), DomainError);
  CHECK_THROWS_AS(lcd_search(v, 2.0, 1.0, 0.5, 64, 64), DomainError);
  CHECK_THROWS_AS(lcd_search(v, 2.0, 0.5, 1.0, 10, 64), DomainError);
}

TEST_CASE("totient and divisor counting against brute force") {
  CHECK(totient(7) == 6);
  CHECK(totient(1) == 1);
  for (std::uint64_t n = 1; n <= 500; ++n) {
    CHECK(totient(n) == oracle::totient(n));
    std::uint64_t dc = 0;
    for (std::uint64_t d = 1; d <= n; ++d) dc += n % d == 0;
    CHECK(divisor_count(n) == dc);
    CHECK(divisors(n).size() == dc);
  }
  CHECK(divisor_count(720720) == 240);
  CHECK(totient(1000000007ULL) == 1000000006ULL);
  CHECK_THROWS(totient(0));
  CHECK_THROWS(divisor_count(1000000000001ULL));
}

TEST_CASE("partition identity sum_{d|n} T(n/d) = n") {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    std::uint64_t s = 0;
    for (auto d : divisors(n)) s += totient(n / d);
    CHECK(s == n);
  }
}

TEST_CASE("totient is multiplicative on coprime pairs") {
  RngState r(12);
  int checked = 0;
  while (checked < 500) {
    const std::uint64_t m = 1 + r.next_u64() % 1000000, n = 1 + r.next_u64() % 1000000;
    if (std::gcd(m, n) != 1) continue;
    CHECK(totient(m * n) == totient(m) * totient(n));
    ++checked;
  }
}

TEST_CASE("T(m) <= m - sqrt(m) holds for composite m and fails for primes") {
  for (std::uint64_t m = 1; m <= 10000; ++m) {
    const bool holds = static_cast<double>(totient(m)) <= m - std::sqrt(static_cast<double>(m));
    if (m <= 2 || is_prime(m))
      CHECK_FALSE(holds);
    else
      CHECK(holds);
  }
}

TEST_CASE("gcd classes") {
  const auto c12 = gcd_class_counts(12);
  CHECK(c12.at(4) == 2);
  CHECK(c12.at(12) == 1);
  const auto c13 = gcd_class_counts(13);
  REQUIRE(c13.size() == 2);
  CHECK(c13.at(1) == 12);
  CHECK(c13.at(13) == 1);
  for (std::uint64_t n = 1; n <= 300; ++n) {
    const auto fast = gcd_class_counts(n);
    const auto slow = oracle::gcd_classes(n);
    CHECK(std::map<std::uint64_t, std::uint64_t>(fast.begin(), fast.end()) == slow);
  }
}

TEST_CASE("gcd threshold counts") {
  CHECK(gcd_threshold_count(13, 0.5).exact == 1);
  CHECK(gcd_threshold_count(101, 0.5).exact == 1);
  for (std::uint64_t n : {12, 36, 100, 360, 1024}) {
    for (double nu : {0.3, 0.5, 0.9}) {
      std::uint64_t brute = 0;
      const double thr = std::pow(static_cast<double>(n), nu);
      for (std::uint64_t k = 0; k < n; ++k) brute += static_cast<double>(std::gcd(k, n)) > thr;
      const auto g = gcd_threshold_count(n, nu);
      CHECK(g.exact == brute);
      CHECK(g.exact <= g.divisor_sum_bound);
    }
  }
}
