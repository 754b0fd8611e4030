#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rootsim/rng.hpp"

namespace rootsim {

enum class DistKind { Rademacher, StandardGaussian, UniformSym, Laplace };

/// Zero-mean, non-degenerate coefficient law with closed-form moments.
///
/// UniformSym(a) is uniform on [-a, a]; Laplace(b) has density
/// exp(-|x|/b) / (2b). Instances are immutable values.
class CoeffDistribution {
 public:
  static CoeffDistribution rademacher();
  static CoeffDistribution gaussian();
  static CoeffDistribution uniform(double a);
  static CoeffDistribution laplace(double b);

  /// Parses "rademacher", "gaussian", "uniform:a=1.0" or "laplace:b=1.0".
  static CoeffDistribution parse(std::string_view text);

  DistKind kind() const noexcept { return kind_; }
  double param() const noexcept { return param_; }
  double mean() const noexcept { return 0.0; }
  double variance() const noexcept;
  /// E|xi|.
  double mean_abs() const noexcept;
  /// Largest H with a finite MGF on |t| < H; +inf for all but Laplace.
  double mgf_radius() const noexcept;
  bool bounded_support() const noexcept;

  /// Canonical label; parse(label()) round-trips.
  std::string label() const;

  double sample(RngState& rng) const noexcept;

  /// Analytic MGF. Throws DomainError for |t| >= mgf_radius().
  double mgf(double t) const;
  /// log M(t), computed without forming M(t) where a closed form exists.
  double log_mgf(double t) const;

  /// E cos(u * xi); the characteristic function of a symmetric law.
  double expected_cos(double u) const noexcept;

  friend bool operator==(const CoeffDistribution&, const CoeffDistribution&) = default;

 private:
  CoeffDistribution(DistKind kind, double param) : kind_(kind), param_(param) {}

  DistKind kind_;
  double param_;
};

struct MgfEstimate {
  std::vector<double> t_grid;
  std::vector<double> values;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Empirical MGF (1/N) sum exp(t xi_i) on a symmetric, strictly increasing grid.
MgfEstimate empirical_mgf(const CoeffDistribution& dist, std::span<const double> t_grid,
                          std::uint64_t n_samples, std::uint64_t seed);

/// Smallest gamma with M(t) <= exp(gamma t^2 / 2) at every point of a uniform
/// grid on [-delta, delta]. The quotient 2 log M(t) / t^2 is continuous at
/// t = 0 with value sigma^2, which is used there.
double local_subgaussian_gamma(const CoeffDistribution& dist, double delta, int grid_points);

struct TailFit {
  double b = 1.0;
  double c = 0.0;
  /// True when no grid point saw an exceedance (bounded support below the grid);
  /// c is then +inf and b is 1.
  bool no_tail = false;
  /// Decay rates between consecutive usable grid points.
  std::vector<double> piecewise_rates;
  std::vector<double> survival;
};

/// Fits Pr(|xi| >= x) ~ b exp(-c x) by least squares on the log survival.
/// Grid points with fewer than 50 exceedances are discarded.
TailFit exp_tail_fit(const CoeffDistribution& dist, std::span<const double> x_grid,
                     std::uint64_t n_samples, std::uint64_t seed);

}  // namespace rootsim
