#include "rootsim/coeff_dist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "parse_util.hpp"
#include "rootsim/errors.hpp"

namespace rootsim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::uint64_t kMinExceedances = 50;

}  // namespace

CoeffDistribution CoeffDistribution::rademacher() { return {DistKind::Rademacher, 0.0}; }

CoeffDistribution CoeffDistribution::gaussian() { return {DistKind::StandardGaussian, 0.0}; }

CoeffDistribution CoeffDistribution::uniform(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("uniform: a must be positive");
  return {DistKind::UniformSym, a};
}

CoeffDistribution CoeffDistribution::laplace(double b) {
  if (!(b > 0.0) || !std::isfinite(b)) throw DomainError("laplace: b must be positive");
  return {DistKind::Laplace, b};
}

CoeffDistribution CoeffDistribution::parse(std::string_view text) {
  text = detail::trim(text);
  if (text == "rademacher") return rademacher();
  if (text == "gaussian") return gaussian();
  if (auto a = detail::keyed_param(text, "uniform", "a", 1.0)) return uniform(*a);
  if (auto b = detail::keyed_param(text, "laplace", "b", 1.0)) return laplace(*b);
  throw InputError("unknown distribution '" + std::string(text) + "'");
}

double CoeffDistribution::variance() const noexcept {
  switch (kind_) {
    case DistKind::Rademacher:
    case DistKind::StandardGaussian:
      return 1.0;
    case DistKind::UniformSym:
      return param_ * param_ / 3.0;
    case DistKind::Laplace:
      return 2.0 * param_ * param_;
  }
  return 0.0;
}

double CoeffDistribution::mean_abs() const noexcept {
  switch (kind_) {
    case DistKind::Rademacher:
      return 1.0;
    case DistKind::StandardGaussian:
      return std::sqrt(2.0 / std::numbers::pi);
    case DistKind::UniformSym:
      return param_ / 2.0;
    case DistKind::Laplace:
      return param_;
  }
  return 0.0;
}

double CoeffDistribution::mgf_radius() const noexcept {
  return kind_ == DistKind::Laplace ? 1.0 / param_ : kInf;
}

bool CoeffDistribution::bounded_support() const noexcept {
  return kind_ == DistKind::Rademacher || kind_ == DistKind::UniformSym;
}

std::string CoeffDistribution::label() const {
  switch (kind_) {
    case DistKind::Rademacher:
      return "rademacher";
    case DistKind::StandardGaussian:
      return "gaussian";
    case DistKind::UniformSym:
      return "uniform:a=" + detail::shortest(param_);
    case DistKind::Laplace:
      return "laplace:b=" + detail::shortest(param_);
  }
  return {};
}

double CoeffDistribution::sample(RngState& rng) const noexcept {
  switch (kind_) {
    case DistKind::Rademacher:
      return rng.coin() ? 1.0 : -1.0;
    case DistKind::StandardGaussian: {
      // Box-Muller, cosine branch only: two uniforms per variate.
      const double u1 = rng.uniform_open_left();
      const double u2 = rng.uniform();
      return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    case DistKind::UniformSym:
      return param_ * (2.0 * rng.uniform() - 1.0);
    case DistKind::Laplace: {
      const double mag = -param_ * std::log(rng.uniform_open_left());
      return rng.coin() ? mag : -mag;
    }
  }
  return 0.0;
}

double CoeffDistribution::log_mgf(double t) const {
  if (!(std::abs(t) < mgf_radius())) throw DomainError("mgf: |t| outside the MGF domain");
  switch (kind_) {
    case DistKind::Rademacher: {
      // cosh t - 1 = 2 sinh^2(t/2) keeps full relative precision near 0.
      const double h = std::sinh(t / 2.0);
      return std::log1p(2.0 * h * h);
    }
    case DistKind::StandardGaussian:
      return t * t / 2.0;
    case DistKind::UniformSym: {
      const double x = std::abs(param_ * t);
      if (x > 1.0) return std::log(std::sinh(x) / x);
      // sinh(x)/x - 1 = sum_{k>=1} x^2k / (2k+1)!, all terms positive.
      const double u = x * x;
      double term = u / 6.0, sum = 0.0;
      for (int k = 1; term > 1e-18 * sum || sum == 0.0; ++k) {
        sum += term;
        term *= u / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
        if (term == 0.0) break;
      }
      return std::log1p(sum);
    }
    case DistKind::Laplace:
      return -std::log1p(-param_ * param_ * t * t);
  }
  return 0.0;
}

double CoeffDistribution::mgf(double t) const {
  if (!(std::abs(t) < mgf_radius())) throw DomainError("mgf: |t| outside the MGF domain");
  switch (kind_) {
    case DistKind::Rademacher:
      return std::cosh(t);
    case DistKind::StandardGaussian:
      return std::exp(t * t / 2.0);
    case DistKind::UniformSym: {
      const double x = param_ * t;
      return x == 0.0 ? 1.0 : std::sinh(x) / x;
    }
    case DistKind::Laplace:
      return 1.0 / (1.0 - param_ * param_ * t * t);
  }
  return 0.0;
}

double CoeffDistribution::expected_cos(double u) const noexcept {
  switch (kind_) {
    case DistKind::Rademacher:
      return std::cos(u);
    case DistKind::StandardGaussian:
      return std::exp(-u * u / 2.0);
    case DistKind::UniformSym: {
      const double x = param_ * u;
      return x == 0.0 ? 1.0 : std::sin(x) / x;
    }
    case DistKind::Laplace:
      return 1.0 / (1.0 + param_ * param_ * u * u);
  }
  return 0.0;
}

MgfEstimate empirical_mgf(const CoeffDistribution& dist, std::span<const double> t_grid,
                          std::uint64_t n_samples, std::uint64_t seed) {
  if (t_grid.empty() || n_samples == 0) throw InputError("empirical_mgf: empty grid or sample");
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw InputError("empirical_mgf: t_grid must be strictly increasing");
    if (std::abs(t_grid[i] + t_grid[t_grid.size() - 1 - i]) > 1e-12)
      throw InputError("empirical_mgf: t_grid must be symmetric about 0");
  }
  MgfEstimate est{{t_grid.begin(), t_grid.end()}, std::vector<double>(t_grid.size(), 0.0),
                  n_samples, seed};
  RngState rng(seed);
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    const double x = dist.sample(rng);
    for (std::size_t i = 0; i < t_grid.size(); ++i) est.values[i] += std::exp(t_grid[i] * x);
  }
  for (double& v : est.values) v /= static_cast<double>(n_samples);
  return est;
}

double local_subgaussian_gamma(const CoeffDistribution& dist, double delta, int grid_points) {
  if (!(delta > 0.0) || !(delta < dist.mgf_radius()))
    throw DomainError("local_subgaussian_gamma: delta outside (0, mgf_radius)");
  if (grid_points < 3) throw DomainError("local_subgaussian_gamma: need at least 3 grid points");
  double gamma = dist.variance();
  const double step = 2.0 * delta / (grid_points - 1);
  for (int i = 0; i < grid_points; ++i) {
    const double t = -delta + step * i;
    if (std::abs(t) < 0.5 * step) continue;
    gamma = std::max(gamma, 2.0 * dist.log_mgf(t) / (t * t));
  }
  return gamma;
}

TailFit exp_tail_fit(const CoeffDistribution& dist, std::span<const double> x_grid,
                     std::uint64_t n_samples, std::uint64_t seed) {
  if (x_grid.empty()) throw InsufficientDataError("exp_tail_fit: empty grid");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] > 0.0) || (i > 0 && !(x_grid[i] > x_grid[i - 1])))
      throw InputError("exp_tail_fit: x_grid must be positive and increasing");
  }
  if (n_samples < 10000) throw InputError("exp_tail_fit: need at least 10^4 samples");

  std::vector<std::uint64_t> exceed(x_grid.size(), 0);
  RngState rng(seed);
  for (std::uint64_t s = 0; s < n_samples; ++s) {
    const double a = std::abs(dist.sample(rng));
    // x_grid is increasing, so exceedances form a prefix.
    for (std::size_t i = 0; i < x_grid.size() && a >= x_grid[i]; ++i) ++exceed[i];
  }

  TailFit fit;
  fit.survival.reserve(x_grid.size());
  for (auto e : exceed) fit.survival.push_back(static_cast<double>(e) / n_samples);

  if (std::all_of(exceed.begin(), exceed.end(), [](auto e) { return e == 0; })) {
    fit.no_tail = true;
    fit.b = 1.0;
    fit.c = kInf;
    return fit;
  }

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (exceed[i] < kMinExceedances) continue;
    xs.push_back(x_grid[i]);
    ys.push_back(std::log(fit.survival[i]));
  }
  if (xs.size() < 2) throw InsufficientDataError("exp_tail_fit: fewer than 2 usable grid points");

  const double m = static_cast<double>(xs.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  fit.c = -slope;
  fit.b = std::exp(my - slope * mx);
  for (std::size_t i = 1; i < xs.size(); ++i)
    fit.piecewise_rates.push_back(-(ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]));
  return fit;
}

}  // namespace rootsim
