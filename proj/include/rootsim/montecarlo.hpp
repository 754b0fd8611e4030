#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rootsim/coeff_dist.hpp"
#include "rootsim/polynomial.hpp"

namespace rootsim {

enum class Experiment {
  SnTailEps,     // Pr(s_min(C_n) <= eps n^-1/2), param = eps
  SnTailRho,     // Pr(s_min(C_n) <= n^-rho), param = rho
  AnnulusInf,    // Pr(inf over the eps n^-2 annulus of |G| < eps n^-1/2), param = eps
  SalemZygmund,  // Pr(certified ||T_n|| >= C0 sqrt(r_n log n)), param = C0
  SecondDeriv,   // Pr(sum j(j-1)|c_j|(1+n^-2)^(j-2) > n^param), param = exponent (13/4)
  SmallBall,     // Pr(|T_n(x)| < t sqrt(n)), param = t
  RootStats,     // Pr(n^2 min ||z| - 1| <= c), param = c
  CharFn,        // Pr(|f(s)| <= 1/e) over a random direction of s, param = |s|
};

std::string to_string(Experiment e);
Experiment parse_experiment(std::string_view name);

struct ExperimentConfig {
  Experiment experiment = Experiment::SnTailEps;
  std::string dist = "rademacher";
  std::string phi = "const";
  std::vector<std::size_t> n_list;
  std::vector<double> param_grid;
  std::uint64_t trials = 1000;
  std::uint64_t base_seed = 1;
  int threads = 1;
  /// Evaluation angle for SmallBall and CharFn; defaults to 2 pi (golden ratio - 1).
  double x = 3.8832220774509327;

  /// Throws ConfigError on trials < 100, empty lists, or parameters outside
  /// the experiment's domain.
  void validate() const;
};

struct TailEstimate {
  std::size_t n = 0;
  double param = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double p_hat = 0.0;
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  bool prime_n = false;
};

struct PowerFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TailEstimate> rows;
  /// Experiment-specific scalars keyed by name (reference bounds, r_n, delta, ...).
  std::vector<std::pair<std::string, double>> extras;
};

/// Per-trial stream key. Independent of the parameter index, so every
/// threshold in param_grid is applied to the same sample (coupling).
std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, std::uint64_t trial);

/// Runs the experiment with config.threads OpenMP threads. Hit counts are
/// identical for every thread count.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Single-threaded reference path; must agree exactly with run_experiment.
ExperimentResult run_experiment_serial(const ExperimentConfig& cfg);

// Named entry points for each experiment kind (checks cfg.experiment).
std::vector<TailEstimate> run_sn_tail_eps(const ExperimentConfig& cfg);
std::vector<TailEstimate> run_sn_tail_rho(const ExperimentConfig& cfg);
std::vector<TailEstimate> run_annulus_inf(const ExperimentConfig& cfg);
std::vector<TailEstimate> run_salem_zygmund(const ExperimentConfig& cfg);
std::vector<TailEstimate> run_second_deriv(const ExperimentConfig& cfg);

struct SmallBallReport {
  std::vector<TailEstimate> rows;
  /// Log-log fit of p_hat against t, per n (n, fit); absent when < 3 positive points.
  std::vector<std::pair<std::size_t, PowerFit>> fits;
};
SmallBallReport run_small_ball(const ExperimentConfig& cfg);

/// prod_j E cos(pi xi psi_j), psi_j = phi(j/n) (s1 cos jx + s2 sin jx) / (pi sqrt n).
double char_fn_product(const CoeffDistribution& dist, const WeightFn& phi, std::size_t n,
                       double x, std::array<double, 2> s);

/// 95% Wilson score interval by default.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials,
                                          double z = 1.96);

/// Least squares of log p on log x. Points with p <= 0 (or x <= 0) are
/// dropped; fewer than 3 survivors throws InsufficientDataError.
PowerFit scaling_fit(std::span<const std::pair<double, double>> points);

/// s_min of the circulant with first row drawn from `dist` on stream `seed`
/// (entry j from mix(seed, j)).
double circulant_smin(const CoeffDistribution& dist, std::size_t n, std::uint64_t seed);

bool is_prime(std::uint64_t n);

}  // namespace rootsim
