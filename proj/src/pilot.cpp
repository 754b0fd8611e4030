#include "rootsim/pilot.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "rootsim/errors.hpp"
#include "rootsim/montecarlo.hpp"
#include "rootsim/roots.hpp"
#include "rootsim/rng.hpp"

namespace rootsim {

namespace {

using nlohmann::json;

ExperimentConfig base_config(const PilotOptions& o, Experiment e, std::string dist,
                             std::vector<std::size_t> ns, std::vector<double> params) {
  ExperimentConfig c;
  c.experiment = e;
  c.dist = std::move(dist);
  c.phi = "const";
  c.n_list = std::move(ns);
  c.param_grid = std::move(params);
  c.trials = o.trials;
  c.base_seed = o.seed;
  c.threads = o.threads;
  return c;
}

std::vector<double> column(const ExperimentResult& r, std::size_t n) {
  std::vector<double> out;
  for (const auto& row : r.rows)
    if (row.n == n) out.push_back(row.p_hat);
  return out;
}

json smin_eps(const PilotOptions& o) {
  const std::vector<double> eps{0.1, 0.2, 0.4, 0.8};
  const auto res = run_experiment(base_config(o, Experiment::SnTailEps, "rademacher", {256}, eps));
  const auto p = column(res, 256);
  double max_ratio = 0.0;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    max_ratio = std::max(max_ratio, p[i] / eps[i]);
    pts.emplace_back(eps[i], p[i]);
  }
  json j{{"n", 256}, {"eps", eps}, {"p_hat", p}, {"max_ratio", max_ratio}};
  try {
    j["slope"] = scaling_fit(pts).slope;
  } catch (const InsufficientDataError&) {
    j["slope"] = nullptr;
  }
  return j;
}

json smin_prime(const PilotOptions& o) {
  const std::vector<std::size_t> ns{127, 251, 509};
  const auto res = run_experiment(base_config(o, Experiment::SnTailRho, "rademacher", ns, {0.3}));
  std::vector<double> p;
  for (auto n : ns) p.push_back(column(res, n).at(0));
  return {{"n", ns}, {"rho", 0.3}, {"p_hat", p}};
}

json annulus(const PilotOptions& o) {
  const std::vector<double> eps{0.25, 0.5, 1.0};
  const auto res = run_experiment(base_config(o, Experiment::AnnulusInf, "gaussian", {128}, eps));
  const auto p = column(res, 128);
  std::vector<double> ratio;
  for (std::size_t i = 0; i < eps.size(); ++i) ratio.push_back(p[i] / eps[i]);
  return {{"n", 128},
          {"eps", eps},
          {"p_hat", p},
          {"ratio", ratio},
          {"max_ratio", *std::max_element(ratio.begin(), ratio.end())}};
}

json salem_zygmund(const PilotOptions& o) {
  const auto res =
      run_experiment(base_config(o, Experiment::SalemZygmund, "rademacher", {256}, {6.0}));
  return {{"n", 256}, {"C0", 6.0}, {"violations", res.rows.at(0).hits}, {"trials", o.trials}};
}

json second_deriv(const PilotOptions& o) {
  const auto res =
      run_experiment(base_config(o, Experiment::SecondDeriv, "gaussian", {64}, {3.25}));
  const double rate = res.rows.at(0).p_hat;
  return {{"n", 64}, {"rate", rate}, {"C", rate * std::pow(64.0, 0.25)}};
}

json small_ball(const PilotOptions& o) {
  std::vector<double> ts;
  for (int i = 0; i < 6; ++i) ts.push_back(0.01 * std::pow(10.0, i / 5.0));
  const auto res = run_experiment(base_config(o, Experiment::SmallBall, "rademacher", {256}, ts));
  const auto p = column(res, 256);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < ts.size(); ++i) pts.emplace_back(ts[i], p[i]);
  json j{{"n", 256}, {"t", ts}, {"p_hat", p}};
  try {
    j["slope"] = scaling_fit(pts).slope;
  } catch (const InsufficientDataError&) {
    j["slope"] = nullptr;
  }
  return j;
}

json roots(const PilotOptions& o) {
  auto frac_at = [](const AnnulusStats& st, double w) {
    for (const auto& [width, f] : st.frac_within)
      if (std::abs(width - w) <= 1e-15 * w) return f;
    throw InputError("width not present");
  };
  const auto dist = CoeffDistribution::gaussian();
  const auto phi = WeightFn::constant();

  std::vector<double> fracs;
  const double w = 10.0 / 256.0;
  const double widths[] = {w};
  for (std::uint64_t d = 0; d < 200; ++d) {
    const auto rs = find_roots(build_poly(dist, phi, 256, mix(o.seed, 256, d)));
    if (!rs.converged) throw NumericalError("pilot roots: unconverged draw at n = 256");
    fracs.push_back(frac_at(annulus_stats(rs, 256, widths), w));
  }
  std::sort(fracs.begin(), fracs.end());
  const double median = 0.5 * (fracs[99] + fracs[100]);

  std::vector<double> ks;
  for (std::uint64_t d = 0; d < 100; ++d) {
    const auto rs = find_roots(build_poly(dist, phi, 512, mix(o.seed, 512, d)));
    if (!rs.converged) throw NumericalError("pilot roots: unconverged draw at n = 512");
    ks.push_back(annulus_stats(rs, 512, widths).ks_uniform);
  }
  std::sort(ks.begin(), ks.end());
  return {{"frac_within_10_over_n_median_n256", median}, {"ks_p90_n512", ks[89]}};
}

json spectrum(const PilotOptions& o) {
  const double smin = circulant_smin(CoeffDistribution::rademacher(), 65536, o.seed);
  return {{"n", 65536}, {"seed", o.seed}, {"s_min", smin}};
}

}  // namespace

const std::vector<std::string>& pilot_suites() {
  static const std::vector<std::string> suites{"smin_eps", "smin_prime",  "annulus",
                                               "salem_zygmund", "second_deriv", "small_ball",
                                               "roots",      "spectrum"};
  return suites;
}

std::string run_pilot(const PilotOptions& o) {
  const auto& suites = pilot_suites();
  if (o.suite != "all" && std::find(suites.begin(), suites.end(), o.suite) == suites.end())
    throw ConfigError("unknown pilot suite '" + o.suite + "'");
  json out;
  out["seed"] = o.seed;
  out["trials"] = o.trials;
  auto want = [&](const char* s) { return o.suite == "all" || o.suite == s; };
  if (want("smin_eps")) out["smin_eps"] = smin_eps(o);
  if (want("smin_prime")) out["smin_prime"] = smin_prime(o);
  if (want("annulus")) out["annulus"] = annulus(o);
  if (want("salem_zygmund")) out["salem_zygmund"] = salem_zygmund(o);
  if (want("second_deriv")) out["second_deriv"] = second_deriv(o);
  if (want("small_ball")) out["small_ball"] = small_ball(o);
  if (want("roots")) out["roots"] = roots(o);
  if (want("spectrum")) out["spectrum"] = spectrum(o);
  return out.dump(2) + "\n";
}

}  // namespace rootsim
