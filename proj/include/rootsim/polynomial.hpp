#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rootsim/coeff_dist.hpp"
#include "rootsim/dense.hpp"

namespace rootsim {

/// Deterministic weight phi on [0, 1], scaled to unit Hoelder norm
///   max|phi| + sup |phi(t) - phi(s)| / |t - s|^order = 1.
/// Constant: phi = 1 (order 1). Linear: phi = x / 2 (order 1).
/// Power(order): phi = x^order / 2, order in (1/2, 1].
class WeightFn {
 public:
  enum class Kind { Constant, Linear, Power };

  static WeightFn constant();
  static WeightFn linear();
  static WeightFn power(double order);

  /// Parses "const", "linear" or "power:sigma=0.6".
  static WeightFn parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double holder_order() const noexcept { return order_; }
  double scale() const noexcept { return scale_; }
  std::string label() const;

  /// Whether the order lies in the narrow range (1/2, 1/2 + 1/20) the
  /// root-localization argument is carried out for.
  bool in_proof_range() const noexcept { return order_ > 0.5 && order_ < 0.55; }

  double operator()(double x) const noexcept;

  friend bool operator==(const WeightFn&, const WeightFn&) = default;

 private:
  WeightFn(Kind kind, double order, double scale) : kind_(kind), order_(order), scale_(scale) {}

  Kind kind_;
  double order_;
  double scale_;
};

/// Grid estimate of the Hoelder norm with the weight's own order.
double holder_norm(const WeightFn& phi, std::size_t grid_points = 100000);

/// Polynomial sum_{j<n} c_j z^j; for random instances c_j = xi_j phi(j/n).
/// Immutable after construction.
class RandomPoly {
 public:
  /// Wraps a fixed coefficient vector (lowest degree first).
  static RandomPoly from_coeffs(std::vector<cplx> coeffs);

  std::size_t n() const noexcept { return coeffs_.size(); }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }
  const std::string& dist_tag() const noexcept { return dist_tag_; }
  const std::string& weight_tag() const noexcept { return weight_tag_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// sum_j |c_j|.
  double l1_norm() const noexcept;

  friend RandomPoly build_poly(const CoeffDistribution&, const WeightFn&, std::size_t,
                               std::uint64_t);

 private:
  std::vector<cplx> coeffs_;
  std::string dist_tag_;
  std::string weight_tag_;
  std::uint64_t seed_ = 0;
};

/// Coefficient j is the first draw of stream mix(seed, j) times phi(j/n), so
/// it does not depend on evaluation order.
RandomPoly build_poly(const CoeffDistribution& dist, const WeightFn& phi, std::size_t n,
                      std::uint64_t seed);

/// Fills `out` with xi_j phi(j/n) for j < out.size() (the build_poly recipe,
/// without the allocation).
void draw_coeffs(const CoeffDistribution& dist, const WeightFn& phi, std::uint64_t seed,
                 std::span<cplx> out);

/// Horner evaluation.
cplx eval(std::span<const cplx> coeffs, cplx z);
cplx eval(const RandomPoly& p, cplx z);

/// [p(z), p'(z), p''(z)] truncated to order + 1 entries; order in {0, 1, 2}.
std::vector<cplx> eval_derivatives(const RandomPoly& p, cplx z, int order);

/// T_n(x) = p(exp(ix)).
cplx trig_eval(const RandomPoly& p, double x);

/// Values of sum_j j^order c_j exp(i j x_k) at x_k = 2 pi k / grid_size, via one
/// FFT (coefficients are folded modulo grid_size). order 0 gives T_n itself;
/// |order 1| = |T_n'| and |order 2| = |T_n''|.
std::vector<cplx> circle_values(std::span<const cplx> coeffs, std::size_t grid_size,
                                int order = 0);

struct SupNormBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// Certified bracket for max_x |T_n(x)| from a uniform grid of the given size
/// (>= 8n). lower is the grid max; upper uses Bernstein's inequality
/// |T'| <= n |T| to bound the gap: sup <= grid_max / (1 - 2 pi n / grid_size).
/// The bound is also taken on every nested dyadic subgrid of size >= 8n and the
/// smallest upper kept, which makes the bracket monotone under grid doubling.
SupNormBounds sup_norm_certified(const RandomPoly& p, std::size_t grid_size);

/// Estimate of inf |p(z)| over the annulus ||z| - 1| < eps n^-2.
///
/// The unit circle is sampled on a uniform grid with spacing s <= eps n^-2;
/// at each grid angle x the quantity
///   max(0, |T(x)| - 2 s_eps |T'(x)| - R),   s_eps = eps n^-2,
///   R = 2 s_eps^2 sum_j j(j-1) |c_j| (1 + max(1, eps) n^-2)^j
/// lower-bounds |p| on the disc of radius 2 s_eps around exp(ix) (second-order
/// Taylor bound), and the minimum over the grid is returned. The fine grid is
/// never materialized: a coarse FFT grid is refined only in cells whose local
/// Taylor lower bound can still beat the running minimum, which gives exactly
/// the fine-grid minimum.
double annulus_min_modulus(const RandomPoly& p, double eps, std::size_t n);

/// Same estimate for several eps values sharing one coarse evaluation.
std::vector<double> annulus_min_modulus(const RandomPoly& p, std::span<const double> eps,
                                        std::size_t n);

/// The remainder R used by annulus_min_modulus.
double annulus_remainder(std::span<const cplx> coeffs, double eps, std::size_t n);

/// sum_j j(j-1) |c_j| (1 + n^-2)^(j-2): deterministic majorant of sup |G''|
/// on the annulus of width n^-2.
double second_derivative_majorant(std::span<const cplx> coeffs, std::size_t n);

}  // namespace rootsim
