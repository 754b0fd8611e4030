#pragma once

#include <span>
#include <string>

#include "rootsim/montecarlo.hpp"
#include "rootsim/roots.hpp"

namespace rootsim {

/// p_hat against the parameter on log-log axes, one <g class="series"> per n
/// with Wilson bars, plus a dashed <path class="fit"> per n when a power law fit exists.
std::string tail_plot_svg(const ExperimentResult& result);

/// Roots in the plane with the unit circle and |z| = 1 +- w bands for each width.
std::string roots_plot_svg(const RootSet& rs, std::span<const double> widths);

}  // namespace rootsim
