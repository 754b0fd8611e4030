#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace rootsim {

/// The 2 x n matrix whose column j is (cos(2 pi k j / n), sin(2 pi k j / n)).
/// Applied to a real coefficient vector X it yields (Re, Im) of the k-th
/// circulant eigenvalue.
class VkMatrix {
 public:
  VkMatrix(std::size_t n, std::size_t k);

  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }

  double cos_at(std::size_t j) const noexcept { return cos_[j]; }
  double sin_at(std::size_t j) const noexcept { return sin_[j]; }

  /// V_k X.
  std::array<double, 2> apply(std::span<const double> x) const;
  /// V_k^T theta.
  std::vector<double> apply_transpose(std::array<double, 2> theta) const;
  void apply_transpose(std::array<double, 2> theta, std::span<double> out) const;

  double column_norm(std::size_t j) const noexcept;

 private:
  std::size_t n_;
  std::size_t k_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

/// Euclidean distance to the nearest point of Z^n (ties round to even).
double dist_to_lattice(std::span<const double> v);

/// log(max(x, 1)).
inline double log_plus(double x) { return x > 1.0 ? std::log(x) : 0.0; }

/// True when dist(V^T theta, Z^n) < L sqrt(log+(|V^T theta| / L)), i.e. theta
/// is a candidate for the least common denominator.
bool lcd_violates(const VkMatrix& v, double L, std::array<double, 2> theta);

struct LcdCertificate {
  std::size_t n = 0;
  std::size_t k = 0;
  double L = 2.0;
  double t_min = 0.0;
  double t_max = 0.0;
  std::size_t n_t = 0;
  std::size_t n_alpha = 0;
  /// min over the grid of dist / (L sqrt(log+(|V^T theta| / L))); +inf where log+ = 0.
  double min_ratio = 0.0;
  /// Radius of the first grid point satisfying the defining inequality, or
  /// t_max when none does. A grid certificate, not the true infimum.
  double certified_lower_bound = 0.0;
  bool violation_found = false;

  /// {n, k, L, t_range, grid, min_ratio, certified_lower_bound}.
  std::string to_json() const;
};

/// Scans theta = t (cos a, sin a) with t log-spaced on [t_min, t_max] (n_t
/// points) and a = pi i / n_alpha, i < n_alpha (theta and -theta give the same
/// distance). OpenMP-parallel over t.
LcdCertificate lcd_search(const VkMatrix& v, double L, double t_min, double t_max,
                          std::size_t n_t, std::size_t n_alpha);

/// Single-threaded reference for lcd_search.
LcdCertificate lcd_search_serial(const VkMatrix& v, double L, double t_min, double t_max,
                                 std::size_t n_t, std::size_t n_alpha);

/// Euler's totient by trial division; n in [1, 10^12].
std::uint64_t totient(std::uint64_t n);

/// Number of positive divisors; m in [1, 10^12].
std::uint64_t divisor_count(std::uint64_t m);

/// Divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n);

/// d -> #{0 <= k < n : gcd(k, n) = d} = totient(n / d), for every d | n.
std::map<std::uint64_t, std::uint64_t> gcd_class_counts(std::uint64_t n);

struct GcdThresholdCount {
  /// #{0 <= k < n : gcd(k, n) > n^nu}.
  std::uint64_t exact = 0;
  /// sum over d | n, d >= floor(n^nu) of totient(n / d).
  std::uint64_t divisor_sum_bound = 0;
};

GcdThresholdCount gcd_threshold_count(std::uint64_t n, double nu);

}  // namespace rootsim
