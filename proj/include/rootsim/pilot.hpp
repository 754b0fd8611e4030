#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rootsim {

/// Suites understood by run_pilot; "all" runs every one of them.
const std::vector<std::string>& pilot_suites();

struct PilotOptions {
  std::string suite = "all";
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Runs the pilot sub-experiments and returns the threshold JSON (sorted
/// keys, no timestamps, so identical options give byte-identical output).
/// Throws ConfigError for an unknown suite and NumericalError when a root
/// sub-run fails to converge.
std::string run_pilot(const PilotOptions& opts);

}  // namespace rootsim
