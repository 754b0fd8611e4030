#include "rootsim/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rootsim/dft.hpp"
#include "rootsim/errors.hpp"
#include "rootsim/roots.hpp"
#include "rootsim/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rootsim {

namespace {

constexpr double kInvE = 0.36787944117144233;

std::string key(std::string_view name, std::size_t n) {
  std::ostringstream os;
  os << name << "[n=" << n << "]";
  return os.str();
}

std::string key(std::string_view name, std::size_t n, double param) {
  std::ostringstream os;
  os << name << "[n=" << n << ",param=" << param << "]";
  return os.str();
}

// ---------------------------------------------------------------- kernels
//
// A kernel is copied once per worker thread; operator() fills one 0/1 flag
// per parameter for a single trial.

struct SminKernel {
  CoeffDistribution dist;
  std::vector<double> thresholds;
  FftPlan plan;
  std::vector<cplx> buf;

  SminKernel(CoeffDistribution d, std::size_t n, std::vector<double> thr)
      : dist(d), thresholds(std::move(thr)), plan(n), buf(n) {}

  void operator()(std::size_t, std::uint64_t seed, std::span<std::uint8_t> flags) {
    draw_coeffs(dist, WeightFn::constant(), seed, buf);
    plan.forward(buf, buf);
    double smin = std::numeric_limits<double>::infinity(), smax = 0.0;
    for (const auto& v : buf) {
      smin = std::min(smin, std::abs(v));
      smax = std::max(smax, std::abs(v));
    }
    // Same singularity rule as extreme_singular_values: eps = 0 counts exact
    // singularity rather than rounding noise.
    if (smin <= 1e-14 * smax) smin = 0.0;
    for (std::size_t i = 0; i < thresholds.size(); ++i) flags[i] = smin <= thresholds[i];
  }
};

struct AnnulusKernel {
  CoeffDistribution dist;
  WeightFn phi;
  std::vector<double> eps;

  void operator()(std::size_t n, std::uint64_t seed, std::span<std::uint8_t> flags) {
    const auto p = build_poly(dist, phi, n, seed);
    const auto inf = annulus_min_modulus(p, eps, n);
    const double rn = std::sqrt(static_cast<double>(n));
    for (std::size_t i = 0; i < eps.size(); ++i) flags[i] = inf[i] < eps[i] / rn;
  }
};

struct SalemZygmundKernel {
  CoeffDistribution dist;
  WeightFn phi;
  std::vector<double> thresholds;  // C0 sqrt(r_n log n)
  std::size_t grid;

  void operator()(std::size_t n, std::uint64_t seed, std::span<std::uint8_t> flags) {
    const auto p = build_poly(dist, phi, n, seed);
    const double lower = sup_norm_certified(p, grid).lower;
    for (std::size_t i = 0; i < thresholds.size(); ++i) flags[i] = lower >= thresholds[i];
  }
};

struct SecondDerivKernel {
  CoeffDistribution dist;
  WeightFn phi;
  std::vector<double> thresholds;  // n^param
  std::vector<cplx> buf;

  void operator()(std::size_t n, std::uint64_t seed, std::span<std::uint8_t> flags) {
    buf.resize(n);
    draw_coeffs(dist, phi, seed, buf);
    const double m = second_derivative_majorant(buf, n);
    for (std::size_t i = 0; i < thresholds.size(); ++i) flags[i] = m > thresholds[i];
  }
};

struct SmallBallKernel {
  CoeffDistribution dist;
  WeightFn phi;
  double x;
  std::vector<double> thresholds;  // t sqrt(n)
  std::vector<cplx> buf;

  void operator()(std::size_t n, std::uint64_t seed, std::span<std::uint8_t> flags) {
    buf.resize(n);
    draw_coeffs(dist, phi, seed, buf);
    const double v = std::abs(eval(buf, std::polar(1.0, x)));
    for (std::size_t i = 0; i < thresholds.size(); ++i) flags[i] = v < thresholds[i];
  }
};

struct RootStatsKernel {
  CoeffDistribution dist;
  WeightFn phi;
  std::vector<double> params;

  void operator()(std::size_t n, std::uint64_t seed, std::span<std::uint8_t> flags) {
    const auto p = build_poly(dist, phi, n, seed);
    const auto rs = find_roots(p);
    if (!rs.converged) throw NumericalError("root finder did not converge");
    double dmin = std::numeric_limits<double>::infinity();
    for (const auto& r : rs.roots) dmin = std::min(dmin, std::abs(std::abs(r) - 1.0));
    const double scaled = static_cast<double>(n) * static_cast<double>(n) * dmin;
    for (std::size_t i = 0; i < params.size(); ++i) flags[i] = scaled <= params[i];
  }
};

struct CharFnKernel {
  CoeffDistribution dist;
  WeightFn phi;
  double x;
  std::vector<double> radii;

  void operator()(std::size_t n, std::uint64_t seed, std::span<std::uint8_t> flags) {
    RngState rng(seed);
    const double beta = 2.0 * std::numbers::pi * rng.uniform();
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const std::array<double, 2> s{radii[i] * std::cos(beta), radii[i] * std::sin(beta)};
      flags[i] = std::abs(char_fn_product(dist, phi, n, x, s)) <= kInvE;
    }
  }
};

template <class Kernel>
std::vector<std::uint64_t> count_hits(const Kernel& proto, std::size_t n, std::size_t n_params,
                                      const ExperimentConfig& cfg, bool parallel) {
  std::vector<std::uint64_t> total(n_params, 0);
  const auto trials = static_cast<long long>(cfg.trials);
  if (!parallel) {
    Kernel k = proto;
    std::vector<std::uint8_t> flags(n_params);
    for (long long t = 0; t < trials; ++t) {
      std::fill(flags.begin(), flags.end(), 0);
      k(n, trial_seed(cfg.base_seed, n, static_cast<std::uint64_t>(t)), flags);
      for (std::size_t i = 0; i < n_params; ++i) total[i] += flags[i];
    }
    return total;
  }
  std::string failure_msg;
#pragma omp parallel num_threads(std::max(1, cfg.threads))
  {
    Kernel k = proto;
    std::vector<std::uint8_t> flags(n_params);
    std::vector<std::uint64_t> local(n_params, 0);
    std::string local_err;
#pragma omp for schedule(static)
    for (long long t = 0; t < trials; ++t) {
      if (!local_err.empty()) continue;
      std::fill(flags.begin(), flags.end(), 0);
      try {
        k(n, trial_seed(cfg.base_seed, n, static_cast<std::uint64_t>(t)), flags);
      } catch (const std::exception& e) {
        local_err = e.what();
        continue;
      }
      for (std::size_t i = 0; i < n_params; ++i) local[i] += flags[i];
    }
#pragma omp critical(rootsim_mc_reduce)
    {
      for (std::size_t i = 0; i < n_params; ++i) total[i] += local[i];
      if (!local_err.empty() && failure_msg.empty()) failure_msg = local_err;
    }
  }
  if (!failure_msg.empty()) throw NumericalError("trial failed: " + failure_msg);
  return total;
}

void append_rows(std::vector<TailEstimate>& rows, std::size_t n, const std::vector<double>& params,
                 const std::vector<std::uint64_t>& hits, std::uint64_t trials) {
  const bool prime = is_prime(n);
  for (std::size_t i = 0; i < params.size(); ++i) {
    TailEstimate e;
    e.n = n;
    e.param = params[i];
    e.hits = hits[i];
    e.trials = trials;
    e.p_hat = static_cast<double>(hits[i]) / static_cast<double>(trials);
    std::tie(e.ci_lo, e.ci_hi) = wilson_interval(hits[i], trials);
    e.prime_n = prime;
    rows.push_back(e);
  }
}

void require(const ExperimentConfig& cfg, Experiment e) {
  if (cfg.experiment != e)
    throw ConfigError("experiment kind mismatch: expected " + to_string(e) + ", got " +
                      to_string(cfg.experiment));
}

double weight_square_sum(const WeightFn& phi, std::size_t n) {
  double r = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double w = phi(static_cast<double>(j) / static_cast<double>(n));
    r += w * w;
  }
  return r;
}

ExperimentResult run_impl(const ExperimentConfig& cfg, bool parallel) {
  cfg.validate();
  const auto dist = CoeffDistribution::parse(cfg.dist);
  const auto phi = WeightFn::parse(cfg.phi);
  const auto& params = cfg.param_grid;
  ExperimentResult res;
  res.config = cfg;

  for (std::size_t n : cfg.n_list) {
    const double nd = static_cast<double>(n);
    std::vector<std::uint64_t> hits;
    switch (cfg.experiment) {
      case Experiment::SnTailEps: {
        std::vector<double> thr;
        for (double e : params) thr.push_back(e / std::sqrt(nd));
        hits = count_hits(SminKernel(dist, n, thr), n, params.size(), cfg, parallel);
        break;
      }
      case Experiment::SnTailRho: {
        std::vector<double> thr;
        for (double r : params) {
          thr.push_back(std::pow(nd, -r));
          res.extras.emplace_back(key("delta", n, r), std::min(r, 0.1));
        }
        hits = count_hits(SminKernel(dist, n, thr), n, params.size(), cfg, parallel);
        break;
      }
      case Experiment::AnnulusInf: {
        hits = count_hits(AnnulusKernel{dist, phi, params}, n, params.size(), cfg, parallel);
        res.extras.emplace_back("phi_in_proof_range", phi.in_proof_range() ? 1.0 : 0.0);
        break;
      }
      case Experiment::SalemZygmund: {
        const double rn = weight_square_sum(phi, n);
        std::vector<double> thr;
        for (double c0 : params) thr.push_back(c0 * std::sqrt(rn * std::log(nd)));
        const std::size_t grid = next_power_of_two(16 * n);
        hits = count_hits(SalemZygmundKernel{dist, phi, thr, grid}, n, params.size(), cfg,
                          parallel);
        res.extras.emplace_back(key("r_n", n), rn);
        res.extras.emplace_back(key("sz_bound", n), 8.0 * std::numbers::pi / (nd * nd));
        break;
      }
      case Experiment::SecondDeriv: {
        std::vector<double> thr;
        double mean_majorant = 0.0;
        double r = 1.0;
        for (std::size_t j = 2; j < n; ++j) {
          const double jd = static_cast<double>(j);
          mean_majorant += jd * (jd - 1.0) * std::abs(phi(jd / nd)) * r;
          r *= 1.0 + 1.0 / (nd * nd);
        }
        mean_majorant *= dist.mean_abs();
        for (double a : params) {
          thr.push_back(std::pow(nd, a));
          res.extras.emplace_back(key("markov_prediction", n, a),
                                  std::min(1.0, mean_majorant / std::pow(nd, a)));
        }
        hits = count_hits(SecondDerivKernel{dist, phi, thr, {}}, n, params.size(), cfg, parallel);
        break;
      }
      case Experiment::SmallBall: {
        std::vector<double> thr;
        for (double t : params) thr.push_back(t * std::sqrt(nd));
        hits = count_hits(SmallBallKernel{dist, phi, cfg.x, thr, {}}, n, params.size(), cfg,
                          parallel);
        break;
      }
      case Experiment::RootStats:
        hits = count_hits(RootStatsKernel{dist, phi, params}, n, params.size(), cfg, parallel);
        break;
      case Experiment::CharFn:
        hits = count_hits(CharFnKernel{dist, phi, cfg.x, params}, n, params.size(), cfg, parallel);
        break;
    }
    append_rows(res.rows, n, params, hits, cfg.trials);

    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < params.size(); ++i)
      pts.emplace_back(params[i], res.rows[res.rows.size() - params.size() + i].p_hat);
    try {
      const auto fit = scaling_fit(pts);
      res.extras.emplace_back(key("slope", n), fit.slope);
      res.extras.emplace_back(key("intercept", n), fit.intercept);
      res.extras.emplace_back(key("r2", n), fit.r2);
    } catch (const InsufficientDataError&) {
    }
  }
  return res;
}

std::vector<TailEstimate> rows_for(const ExperimentConfig& cfg, Experiment e) {
  require(cfg, e);
  return run_experiment(cfg).rows;
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::SnTailEps:
      return "SnTailEps";
    case Experiment::SnTailRho:
      return "SnTailRho";
    case Experiment::AnnulusInf:
      return "AnnulusInf";
    case Experiment::SalemZygmund:
      return "SalemZygmund";
    case Experiment::SecondDeriv:
      return "SecondDeriv";
    case Experiment::SmallBall:
      return "SmallBall";
    case Experiment::RootStats:
      return "RootStats";
    case Experiment::CharFn:
      return "CharFn";
  }
  return {};
}

Experiment parse_experiment(std::string_view name) {
  for (auto e : {Experiment::SnTailEps, Experiment::SnTailRho, Experiment::AnnulusInf,
                 Experiment::SalemZygmund, Experiment::SecondDeriv, Experiment::SmallBall,
                 Experiment::RootStats, Experiment::CharFn})
    if (to_string(e) == name) return e;
  throw ConfigError("unknown experiment '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  if (trials < 100) throw ConfigError("trials must be at least 100");
  if (n_list.empty()) throw ConfigError("n_list must be nonempty");
  if (param_grid.empty()) throw ConfigError("param_grid must be nonempty");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  try {
    (void)CoeffDistribution::parse(dist);
    (void)WeightFn::parse(phi);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (std::size_t n : n_list) {
    if (n < 2) throw ConfigError("every n must be at least 2");
    if (experiment == Experiment::AnnulusInf && n > 1024)
      throw ConfigError("AnnulusInf supports n <= 1024");
  }
  for (double p : param_grid) {
    if (!std::isfinite(p)) throw ConfigError("param_grid entries must be finite");
    switch (experiment) {
      case Experiment::SnTailEps:
      case Experiment::CharFn:
        if (p < 0.0) throw ConfigError("parameter must be nonnegative");
        break;
      case Experiment::AnnulusInf:
      case Experiment::SalemZygmund:
      case Experiment::SmallBall:
        if (!(p > 0.0)) throw ConfigError("parameter must be positive");
        break;
      default:
        break;
    }
  }
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::size_t n, std::uint64_t trial) {
  return mix(base_seed, static_cast<std::uint64_t>(n), trial);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) { return run_impl(cfg, true); }

ExperimentResult run_experiment_serial(const ExperimentConfig& cfg) {
  return run_impl(cfg, false);
}

std::vector<TailEstimate> run_sn_tail_eps(const ExperimentConfig& cfg) {
  return rows_for(cfg, Experiment::SnTailEps);
}
std::vector<TailEstimate> run_sn_tail_rho(const ExperimentConfig& cfg) {
  return rows_for(cfg, Experiment::SnTailRho);
}
std::vector<TailEstimate> run_annulus_inf(const ExperimentConfig& cfg) {
  return rows_for(cfg, Experiment::AnnulusInf);
}
std::vector<TailEstimate> run_salem_zygmund(const ExperimentConfig& cfg) {
  return rows_for(cfg, Experiment::SalemZygmund);
}
std::vector<TailEstimate> run_second_deriv(const ExperimentConfig& cfg) {
  return rows_for(cfg, Experiment::SecondDeriv);
}

SmallBallReport run_small_ball(const ExperimentConfig& cfg) {
  require(cfg, Experiment::SmallBall);
  SmallBallReport rep;
  rep.rows = run_experiment(cfg).rows;
  for (std::size_t n : cfg.n_list) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& r : rep.rows)
      if (r.n == n) pts.emplace_back(r.param, r.p_hat);
    try {
      rep.fits.emplace_back(n, scaling_fit(pts));
    } catch (const InsufficientDataError&) {
    }
  }
  return rep;
}

double char_fn_product(const CoeffDistribution& dist, const WeightFn& phi, std::size_t n,
                       double x, std::array<double, 2> s) {
  if (n == 0) throw DomainError("char_fn_product: n must be positive");
  const double rn = std::sqrt(static_cast<double>(n));
  double prod = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double jd = static_cast<double>(j);
    // pi * psi_j
    const double u = phi(jd / static_cast<double>(n)) *
                     (s[0] * std::cos(jd * x) + s[1] * std::sin(jd * x)) / rn;
    prod *= dist.expected_cos(u);
  }
  return prod;
}

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials, double z) {
  if (trials == 0 || hits > trials) throw DomainError("wilson_interval: need 0 <= hits <= trials, trials >= 1");
  const double nt = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / nt;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nt;
  const double center = (p + z2 / (2.0 * nt)) / denom;
  const double half = z / denom * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt));
  double lo = std::max(0.0, center - half);
  double hi = std::min(1.0, center + half);
  if (hits == 0) lo = 0.0;
  if (hits == trials) hi = 1.0;
  lo = std::min(lo, p);
  hi = std::max(hi, p);
  return {lo, hi};
}

PowerFit scaling_fit(std::span<const std::pair<double, double>> points) {
  std::vector<double> lx, ly;
  for (const auto& [x, p] : points) {
    if (!(x > 0.0) || !(p > 0.0)) continue;
    lx.push_back(std::log(x));
    ly.push_back(std::log(p));
  }
  if (lx.size() < 3) throw InsufficientDataError("scaling_fit: fewer than 3 positive points");
  const double m = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InsufficientDataError("scaling_fit: all x values coincide");
  PowerFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  f.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return f;
}

double circulant_smin(const CoeffDistribution& dist, std::size_t n, std::uint64_t seed) {
  std::vector<cplx> buf(n);
  draw_coeffs(dist, WeightFn::constant(), seed, buf);
  FftPlan(n).forward(buf, buf);
  double smin = std::numeric_limits<double>::infinity();
  for (const auto& v : buf) smin = std::min(smin, std::abs(v));
  return smin;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace rootsim
