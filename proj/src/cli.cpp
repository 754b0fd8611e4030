#include "rootsim/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rootsim/circulant.hpp"
#include "rootsim/errors.hpp"
#include "rootsim/io.hpp"
#include "rootsim/montecarlo.hpp"
#include "rootsim/pilot.hpp"
#include "rootsim/plot.hpp"
#include "rootsim/polynomial.hpp"
#include "rootsim/roots.hpp"

namespace fs = std::filesystem;

namespace rootsim {

namespace {

class MissingPilot : public Error {
 public:
  using Error::Error;
};

class AssertionFailed : public Error {
 public:
  using Error::Error;
};

std::string utc_now() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int env_threads(int fallback) {
  if (const char* v = std::getenv("RS_THREADS")) {
    const int t = std::atoi(v);
    if (t >= 1) return t;
  }
  return fallback;
}

// --------------------------------------------------------------- spectrum

struct SpectrumArgs {
  std::optional<std::size_t> n;
  std::string row;
  std::string dist = "rademacher";
  std::uint64_t seed = 1;
  std::size_t g = 1;
  std::uint64_t trials = 1;
  std::string eig_csv;
  std::string matrix_csv;
};

void print_summary(std::ostream& out, const SpectralSummary& s, bool with_argmin) {
  out << "s_min=" << format_double(s.s_min) << " s_max=" << format_double(s.s_max);
  if (with_argmin) out << " argmin=" << s.argmin;
  if (s.singular) out << " singular";
  out << '\n';
}

int cmd_spectrum(const SpectrumArgs& a, std::ostream& out) {
  std::vector<std::vector<cplx>> rows;
  if (!a.row.empty()) {
    const auto vals = parse_double_list(a.row);
    if (vals.empty()) throw ConfigError("--row is empty");
    if (a.n && *a.n != vals.size()) throw ConfigError("--n does not match the length of --row");
    rows.emplace_back(vals.begin(), vals.end());
  } else {
    if (!a.n) throw ConfigError("spectrum needs --n or --row");
    if (*a.n < 1) throw ConfigError("--n must be positive");
    if (a.trials < 1) throw ConfigError("--trials must be positive");
    const auto dist = CoeffDistribution::parse(a.dist);
    for (std::uint64_t t = 0; t < a.trials; ++t) {
      std::vector<cplx> r(*a.n);
      draw_coeffs(dist, WeightFn::constant(), a.seed + t, r);
      rows.push_back(std::move(r));
    }
  }
  std::ostringstream eig;
  for (const auto& r : rows) {
    SpectralSummary s;
    if (a.g == 1 || a.g == r.size() + 1) {
      s = extreme_singular_values(Circulant(r));
      print_summary(out, s, true);
    } else {
      const GCirculant gc(r, a.g);
      s = gcirc_spectral(gc);
      print_summary(out, s, std::gcd(gc.n(), gc.g()) == 1);
    }
    if (!a.eig_csv.empty()) {
      if (eig.tellp() == 0) eig << "k,re,im,abs\n";
      for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
        eig << k << ',' << format_double(s.eigenvalues[k].real()) << ','
            << format_double(s.eigenvalues[k].imag()) << ','
            << format_double(std::abs(s.eigenvalues[k])) << '\n';
    }
  }
  if (!a.eig_csv.empty()) write_file(a.eig_csv, eig.str());
  if (!a.matrix_csv.empty()) {
    const CMatrix m = a.g == 1 ? densify(Circulant(rows.front())) : densify(GCirculant(rows.front(), a.g));
    write_file(a.matrix_csv, m.to_csv());
  }
  return kExitOk;
}

// ------------------------------------------------------------------ roots

struct RootsArgs {
  std::optional<std::size_t> n;
  std::string dist = "gaussian";
  std::string phi = "const";
  std::uint64_t seed = 1;
  std::string widths;
  std::string plot;
  std::string out = "roots";
  std::string poly;
  int max_iter = 500;
};

// Builtin test polynomials: "zN-1" (z^N - 1) and "zN+1".
std::vector<cplx> builtin_poly(const std::string& name) {
  if (name.size() >= 4 && name[0] == 'z') {
    const char sign = name[name.size() - 2];
    if ((sign == '-' || sign == '+') && name.back() == '1') {
      const auto deg = parse_size_list(name.substr(1, name.size() - 3));
      if (deg.size() == 1 && deg[0] >= 1) {
        std::vector<cplx> c(deg[0] + 1);
        c[0] = sign == '-' ? -1.0 : 1.0;
        c[deg[0]] = 1.0;
        return c;
      }
    }
  }
  throw ConfigError("unknown builtin polynomial '" + name + "' (expected zN-1 or zN+1)");
}

int cmd_roots(const RootsArgs& a, std::ostream& out) {
  RootSet rs;
  std::size_t n = 0;
  if (!a.poly.empty()) {
    const auto c = builtin_poly(a.poly);
    n = c.size() - 1;
    rs = find_roots(c, a.max_iter);
  } else {
    if (!a.n) throw ConfigError("roots needs --n (or --poly)");
    n = *a.n;
    const auto p = build_poly(CoeffDistribution::parse(a.dist), WeightFn::parse(a.phi), n, a.seed);
    rs = find_roots(p, a.max_iter);
  }
  if (!rs.converged) throw NumericalError("root finder did not converge");
  const auto widths = a.widths.empty() ? default_widths(n) : parse_double_list(a.widths);
  const auto st = annulus_stats(rs, n, widths);
  write_file(a.out + ".csv", roots_csv(rs));
  write_file(a.out + "_stats.json", annulus_stats_json(st));
  if (!a.plot.empty()) write_file(a.plot, roots_plot_svg(rs, widths));
  out << "roots=" << rs.roots.size() << " iterations=" << rs.iterations
      << " min_scaled_dist=" << format_double(st.min_scaled_dist)
      << " ks_uniform=" << format_double(st.ks_uniform) << '\n';
  for (const auto& [w, f] : st.frac_within)
    out << "frac_within(" << format_double(w) << ")=" << format_double(f) << '\n';
  return kExitOk;
}

// ------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string config;
  std::string out = "results";
  bool plot = false;
  std::optional<int> threads;
  std::string assert_pilot;
};

// Pilot comparisons for the experiments that have pinned thresholds.
std::vector<std::string> check_against_pilot(const ExperimentResult& r, const nlohmann::json& pilot) {
  std::vector<std::string> failures;
  const auto& cfg = r.config;
  auto ratio_check = [&](const char* entry) {
    if (!pilot.contains(entry)) return;
    const double pinned = pilot[entry]["max_ratio"].get<double>();
    double max_ratio = 0.0;
    for (const auto& row : r.rows)
      if (row.n == pilot[entry]["n"].get<std::size_t>() && row.param > 0)
        max_ratio = std::max(max_ratio, row.p_hat / row.param);
    if (max_ratio == 0.0) return;
    if (!(max_ratio <= 2.0 * pinned && max_ratio >= pinned / 2.0))
      failures.push_back(std::string(entry) + ": max p_hat/param " + format_double(max_ratio) +
                         " not within x2 of pilot " + format_double(pinned));
  };
  switch (cfg.experiment) {
    case Experiment::SnTailEps:
      ratio_check("smin_eps");
      break;
    case Experiment::AnnulusInf:
      ratio_check("annulus");
      break;
    case Experiment::SnTailRho:
      if (pilot.contains("smin_prime")) {
        const auto& pinned = pilot["smin_prime"];
        const auto ns = pinned["n"].get<std::vector<std::size_t>>();
        const auto ps = pinned["p_hat"].get<std::vector<double>>();
        for (const auto& row : r.rows)
          for (std::size_t i = 0; i < ns.size(); ++i)
            if (row.n == ns[i] && std::abs(row.param - pinned["rho"].get<double>()) < 1e-12) {
              const double half = 0.5 * (row.ci_hi - row.ci_lo);
              if (row.p_hat > ps[i] + 3.0 * half)
                failures.push_back("smin_prime: p_hat(" + std::to_string(row.n) + ") above pilot + 3 half-widths");
            }
      }
      break;
    case Experiment::SalemZygmund:
      if (pilot.contains("salem_zygmund"))
        for (const auto& row : r.rows)
          if (row.n == 256 && row.param == 6.0 && row.hits > pilot["salem_zygmund"]["violations"].get<std::uint64_t>())
            failures.push_back("salem_zygmund: more violations than the pilot");
      break;
    default:
      break;
  }
  return failures;
}

int cmd_experiment(const ExperimentArgs& a, std::ostream& out) {
  const std::string started = utc_now();
  auto cfg = load_config(a.config);
  if (a.threads) cfg.threads = *a.threads;
  cfg.threads = env_threads(cfg.threads);
  if (cfg.threads < 1) throw ConfigError("threads must be at least 1");

  std::string pilot_text;
  if (!a.assert_pilot.empty()) {
    if (!fs::exists(a.assert_pilot))
      throw MissingPilot("pilot threshold file not found: " + a.assert_pilot);
    pilot_text = read_file(a.assert_pilot);
  }

  const auto result = run_experiment(cfg);
  const fs::path dir = a.out;
  std::vector<std::string> outputs;
  auto emit = [&](const std::string& name, const std::string& content) {
    write_file(dir / name, content);
    outputs.push_back((dir / name).string());
  };
  emit("results.csv", results_csv(result));
  emit("summary.json", summary_json(result, pilot_text));
  if (a.plot) emit("tail.svg", tail_plot_svg(result));

  std::vector<std::string> failures;
  if (!pilot_text.empty()) failures = check_against_pilot(result, nlohmann::json::parse(pilot_text));

  nlohmann::json manifest;
  manifest["config"] = config_to_text(cfg);
  manifest["started_at"] = started;
  manifest["finished_at"] = utc_now();
  manifest["version"] = kVersion;
  outputs.push_back((dir / "manifest.json").string());
  manifest["outputs"] = outputs;
  manifest["pilot_thresholds_hash"] =
      pilot_text.empty() ? nlohmann::json(nullptr) : nlohmann::json(fnv1a_hex(pilot_text));
  manifest["pilot_failures"] = failures;
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  for (const auto& row : result.rows)
    out << "n=" << row.n << " param=" << format_double(row.param) << " hits=" << row.hits << '/'
        << row.trials << " p_hat=" << format_double(row.p_hat) << " ci=["
        << format_double(row.ci_lo) << ", " << format_double(row.ci_hi) << "]\n";
  if (!failures.empty()) {
    std::ostringstream msg;
    for (const auto& f : failures) msg << f << "; ";
    throw AssertionFailed(msg.str());
  }
  return kExitOk;
}

// ------------------------------------------------------------------ pilot

struct PilotArgs {
  PilotOptions opts;
  std::string out = "thresholds.json";
};

int cmd_pilot(PilotArgs a, std::ostream& out) {
  a.opts.threads = env_threads(a.opts.threads);
  const auto text = run_pilot(a.opts);
  write_file(a.out, text);
  out << "wrote " << a.out << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random polynomial roots and circulant singular value experiments", "rootsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  SpectrumArgs sa;
  auto* spectrum = app.add_subcommand("spectrum", "Extreme singular values of a (g-)circulant");
  spectrum->add_option("--n", sa.n, "Matrix order");
  spectrum->add_option("--row", sa.row, "Explicit first row, comma-separated reals");
  spectrum->add_option("--dist", sa.dist, "Entry distribution when --row is absent");
  spectrum->add_option("--seed", sa.seed, "Seed; trial t draws from seed + t");
  spectrum->add_option("--g", sa.g, "Row shift of a g-circulant")->check(CLI::PositiveNumber);
  spectrum->add_option("--trials", sa.trials, "Number of random matrices");
  spectrum->add_option("--eig-csv", sa.eig_csv, "Write eigenvalues as CSV");
  spectrum->add_option("--matrix-csv", sa.matrix_csv, "Write the dense matrix as CSV (n <= 4096)");

  RootsArgs ra;
  auto* roots = app.add_subcommand("roots", "Roots of one random polynomial and their clustering");
  roots->add_option("--n", ra.n, "Number of coefficients");
  roots->add_option("--dist", ra.dist, "Coefficient distribution");
  roots->add_option("--phi", ra.phi, "Weight: const, linear, power:sigma=0.6");
  roots->add_option("--seed", ra.seed, "Seed");
  roots->add_option("--widths", ra.widths, "Annulus widths, comma-separated");
  roots->add_option("--plot", ra.plot, "Write an SVG scatter of the roots");
  roots->add_option("--out", ra.out, "Output prefix for <prefix>.csv and <prefix>_stats.json");
  roots->add_option("--poly", ra.poly, "Builtin polynomial instead of a random one (zN-1, zN+1)");
  roots->add_option("--max-iter", ra.max_iter, "Aberth iteration cap");

  ExperimentArgs ea;
  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo experiment from a config file");
  experiment->add_option("--config", ea.config, "key=value config file")->required();
  experiment->add_option("--out", ea.out, "Output directory");
  experiment->add_flag("--plot", ea.plot, "Write tail.svg");
  experiment->add_option("--threads", ea.threads, "Worker threads (RS_THREADS overrides)");
  experiment->add_option("--assert-pilot", ea.assert_pilot, "Check results against a pilot threshold file");

  PilotArgs pa;
  auto* pilot = app.add_subcommand("pilot", "Pin the statistical thresholds used by the acceptance suite");
  pilot->add_option("--suite", pa.opts.suite, "all or one suite name");
  pilot->add_option("--trials", pa.opts.trials, "Monte Carlo trials per sub-run");
  pilot->add_option("--seed", pa.opts.seed, "Base seed");
  pilot->add_option("--threads", pa.opts.threads, "Worker threads (RS_THREADS overrides)");
  pilot->add_option("--out", pa.out, "Output JSON path");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();  // program name
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*spectrum) return cmd_spectrum(sa, out);
    if (*roots) return cmd_roots(ra, out);
    if (*experiment) return cmd_experiment(ea, out);
    if (*pilot) return cmd_pilot(pa, out);
  } catch (const MissingPilot& e) {
    err << "error: " << e.what() << '\n';
    return kExitMissingPilot;
  } catch (const AssertionFailed& e) {
    err << "pilot assertion failed: " << e.what() << '\n';
    return kExitAssertion;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const ResolutionError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InsufficientDataError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    const auto* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
    err << "error: " << e.what() << "\n\n" << sub->help();
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace rootsim
