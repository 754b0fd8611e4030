#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rootsim {

inline constexpr const char* kVersion = "0.3.0";

enum ExitCode : int {
  kExitOk = 0,
  kExitAssertion = 1,
  kExitUsage = 2,
  kExitNumerical = 3,
  kExitMissingPilot = 4,
};

/// Entry point shared by the rootsim binary and the tests. args[0] is the
/// program name. Subcommands: spectrum, roots, experiment, pilot.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rootsim
