#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "rootsim/dense.hpp"
#include "rootsim/polynomial.hpp"

namespace rootsim {

struct RootSet {
  std::vector<cplx> roots;
  /// |p(root)| / ||coeffs||_1, one per root. For |root| > 1 this is taken on
  /// the reciprocal polynomial at 1/root, i.e. divided by |root|^deg as well.
  std::vector<double> residuals;
  bool converged = false;
  int iterations = 0;
  /// Roots at 0 coming from exactly-zero low-order coefficients (listed first in `roots`).
  std::size_t zero_roots = 0;
};

/// Aberth-Ehrlich simultaneous iteration.
///
/// Exactly-zero leading coefficients are dropped; exactly-zero trailing
/// coefficients become explicit roots at 0. Starting points sit on a circle of
/// radius (|c_low| / |c_top|)^(1/deg) at distinct angles. Iteration stops once
/// every correction is below 1e-13 (1 + |z|), then each root gets one Newton
/// polishing step. `converged` requires both the stopping rule and every
/// residual <= residual_tol.
RootSet find_roots(std::span<const cplx> coeffs, int max_iter = 500,
                   double residual_tol = 1e-10);
RootSet find_roots(const RandomPoly& p, int max_iter = 500, double residual_tol = 1e-10);

struct AnnulusStats {
  std::size_t n = 0;
  /// (width w, fraction of roots with ||z| - 1| <= w), widths ascending.
  std::vector<std::pair<double, double>> frac_within;
  /// n^2 min ||z| - 1|.
  double min_scaled_dist = 0.0;
  /// Kolmogorov-Smirnov distance of the root arguments from uniform on [0, 2 pi).
  double ks_uniform = 0.0;
};

AnnulusStats annulus_stats(const RootSet& rs, std::size_t n, std::span<const double> widths);

/// The width list {eps n^-2 k : k = 1,2,4} U {c/n : c = 1,2,5,10} U {0.05, 0.1}, sorted.
std::vector<double> default_widths(std::size_t n, double eps = 1.0);

/// sup_t |F_emp(t) - t / 2 pi| for arguments in [0, 2 pi).
double ks_uniform(std::span<const double> arguments);

/// Argument mapped into [0, 2 pi).
double arg_2pi(cplx z) noexcept;

}  // namespace rootsim
