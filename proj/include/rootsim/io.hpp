#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rootsim/montecarlo.hpp"
#include "rootsim/roots.hpp"

namespace rootsim {

/// Frozen results header.
inline constexpr std::string_view kResultsCsvHeader =
    "experiment,dist,phi,n,param,trials,hits,p_hat,ci_lo,ci_hi,base_seed,prime_n";

/// One row per (experiment, dist, phi, n, param), header first.
std::string results_csv(const ExperimentResult& result);

/// Summary JSON: config echo, rows, fitted slopes, extras and the pilot
/// thresholds consulted (if any).
std::string summary_json(const ExperimentResult& result, const std::string& pilot_json = {});

/// Flat key=value config. Keys: experiment, dist, phi, n_list, param_grid,
/// trials, base_seed, threads, x. Lists are comma-separated; '#' starts a
/// comment. Unknown keys and malformed values throw ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_text(const ExperimentConfig& cfg);

/// Roots CSV with columns re,im,abs_minus_1,arg.
std::string roots_csv(const RootSet& rs);
std::string annulus_stats_json(const AnnulusStats& st);

std::vector<double> parse_double_list(std::string_view text);
std::vector<std::size_t> parse_size_list(std::string_view text);

/// FNV-1a 64-bit hash as 16 hex digits.
std::string fnv1a_hex(std::string_view data);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal that round-trips.
std::string format_double(double v);

}  // namespace rootsim
