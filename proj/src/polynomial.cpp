#include "rootsim/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "parse_util.hpp"
#include "rootsim/dft.hpp"
#include "rootsim/errors.hpp"
#include "rootsim/rng.hpp"

namespace rootsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Upper limit on the number of angles of the (virtual) fine annulus grid.
constexpr std::size_t kMaxAnnulusGrid = std::size_t{1} << 36;
constexpr std::size_t kHolderSubgrid = 1024;

}  // namespace

// ---------------------------------------------------------------- WeightFn

WeightFn WeightFn::constant() { return {Kind::Constant, 1.0, 1.0}; }

WeightFn WeightFn::linear() { return {Kind::Linear, 1.0, 0.5}; }

WeightFn WeightFn::power(double order) {
  if (!(order > 0.5 && order <= 1.0))
    throw DomainError("power weight: order must lie in (1/2, 1]");
  // x^order has sup 1 and Hoelder constant 1 (attained against s = 0).
  return {Kind::Power, order, 0.5};
}

WeightFn WeightFn::parse(std::string_view text) {
  text = detail::trim(text);
  if (text == "const" || text == "constant") return constant();
  if (text == "linear") return linear();
  if (auto s = detail::keyed_param(text, "power", "sigma", 0.6)) return power(*s);
  throw InputError("unknown weight '" + std::string(text) + "'");
}

std::string WeightFn::label() const {
  switch (kind_) {
    case Kind::Constant:
      return "const";
    case Kind::Linear:
      return "linear";
    case Kind::Power:
      return "power:sigma=" + detail::shortest(order_);
  }
  return {};
}

double WeightFn::operator()(double x) const noexcept {
  switch (kind_) {
    case Kind::Constant:
      return scale_;
    case Kind::Linear:
      return scale_ * x;
    case Kind::Power:
      return scale_ * std::pow(x, order_);
  }
  return 0.0;
}

double holder_norm(const WeightFn& phi, std::size_t grid_points) {
  if (grid_points < 3) throw InputError("holder_norm: need at least 3 grid points");
  const double order = phi.holder_order();
  const std::size_t last = grid_points - 1;
  std::vector<double> v(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) v[i] = phi(static_cast<double>(i) / last);

  double sup = 0.0;
  for (double x : v) sup = std::max(sup, std::abs(x));

  auto quotient = [&](std::size_t i, std::size_t j) {
    const double dt = static_cast<double>(j - i) / last;
    return std::abs(v[j] - v[i]) / std::pow(dt, order);
  };
  // All pairs through either endpoint, all adjacent pairs, and all pairs of a
  // coarser subgrid.
  double q = 0.0;
  for (std::size_t j = 1; j <= last; ++j) {
    q = std::max(q, quotient(0, j));
    q = std::max(q, quotient(j - 1, last));
    q = std::max(q, quotient(j - 1, j));
  }
  const std::size_t stride = std::max<std::size_t>(1, last / kHolderSubgrid);
  for (std::size_t i = 0; i <= last; i += stride)
    for (std::size_t j = i + stride; j <= last; j += stride) q = std::max(q, quotient(i, j));
  return sup + q;
}

// -------------------------------------------------------------- RandomPoly

RandomPoly RandomPoly::from_coeffs(std::vector<cplx> coeffs) {
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InputError("polynomial coefficients must be finite");
  RandomPoly p;
  p.coeffs_ = std::move(coeffs);
  p.dist_tag_ = "fixed";
  p.weight_tag_ = "none";
  return p;
}

double RandomPoly::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& c : coeffs_) s += std::abs(c);
  return s;
}

void draw_coeffs(const CoeffDistribution& dist, const WeightFn& phi, std::uint64_t seed,
                 std::span<cplx> out) {
  const double n = static_cast<double>(out.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    RngState rng(mix(seed, j));
    out[j] = dist.sample(rng) * phi(static_cast<double>(j) / n);
  }
}

RandomPoly build_poly(const CoeffDistribution& dist, const WeightFn& phi, std::size_t n,
                      std::uint64_t seed) {
  if (n < 2) throw DomainError("build_poly: n must be at least 2");
  RandomPoly p;
  p.coeffs_.resize(n);
  draw_coeffs(dist, phi, seed, p.coeffs_);
  p.dist_tag_ = dist.label();
  p.weight_tag_ = phi.label();
  p.seed_ = seed;
  return p;
}

// -------------------------------------------------------------- evaluation

cplx eval(std::span<const cplx> coeffs, cplx z) {
  cplx acc = 0.0;
  for (std::size_t j = coeffs.size(); j-- > 0;) acc = acc * z + coeffs[j];
  return acc;
}

cplx eval(const RandomPoly& p, cplx z) { return eval(p.coeffs(), z); }

std::vector<cplx> eval_derivatives(const RandomPoly& p, cplx z, int order) {
  if (order < 0 || order > 2) throw DomainError("eval_derivatives: order must be 0, 1 or 2");
  std::vector<cplx> out;
  std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
  for (int k = 0; k <= order; ++k) {
    out.push_back(eval(c, z));
    if (c.empty()) continue;
    // Differentiate the coefficient array in place.
    for (std::size_t j = 1; j < c.size(); ++j) c[j - 1] = c[j] * static_cast<double>(j);
    c.pop_back();
  }
  return out;
}

cplx trig_eval(const RandomPoly& p, double x) { return eval(p, std::polar(1.0, x)); }

std::vector<cplx> circle_values(std::span<const cplx> coeffs, std::size_t grid_size, int order) {
  if (grid_size == 0) throw InputError("circle_values: empty grid");
  std::vector<cplx> buf(grid_size);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double w = std::pow(static_cast<double>(j), order);
    buf[j % grid_size] += w * coeffs[j];
  }
  FftPlan(grid_size).forward(buf, buf);
  return buf;
}

SupNormBounds sup_norm_certified(const RandomPoly& p, std::size_t grid_size) {
  const std::size_t n = p.n();
  if (grid_size < 8 * n)
    throw DomainError("sup_norm_certified: grid_size must be at least 8n for certification");
  const auto vals = circle_values(p.coeffs(), grid_size);
  std::vector<double> mag(vals.size());
  std::transform(vals.begin(), vals.end(), mag.begin(), [](cplx v) { return std::abs(v); });

  SupNormBounds out;
  out.lower = *std::max_element(mag.begin(), mag.end());
  out.upper = std::numeric_limits<double>::infinity();
  for (std::size_t stride = 1; grid_size % stride == 0 && grid_size / stride >= 8 * n;
       stride *= 2) {
    const std::size_t size = grid_size / stride;
    double level_max = 0.0;
    for (std::size_t i = 0; i < grid_size; i += stride) level_max = std::max(level_max, mag[i]);
    const double factor = 1.0 - kTwoPi * static_cast<double>(n) / static_cast<double>(size);
    out.upper = std::min(out.upper, level_max / factor);
  }
  return out;
}

// ------------------------------------------------------------------ annulus

double annulus_remainder(std::span<const cplx> coeffs, double eps, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double width = eps / (nn * nn);
  const double radius = 1.0 + std::max(1.0, eps) / (nn * nn);
  double m2 = 0.0;
  double rj = 1.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double jd = static_cast<double>(j);
    m2 += jd * (jd - 1.0) * std::abs(coeffs[j]) * rj;
    rj *= radius;
  }
  return 2.0 * width * width * m2;
}

double second_derivative_majorant(std::span<const cplx> coeffs, std::size_t n) {
  const double nn = static_cast<double>(n);
  const double radius = 1.0 + 1.0 / (nn * nn);
  double m = 0.0;
  double rj = 1.0;  // radius^(j-2)
  for (std::size_t j = 2; j < coeffs.size(); ++j) {
    const double jd = static_cast<double>(j);
    m += jd * (jd - 1.0) * std::abs(coeffs[j]) * rj;
    rj *= radius;
  }
  return m;
}

std::vector<double> annulus_min_modulus(const RandomPoly& p, std::span<const double> eps_list,
                                        std::size_t n) {
  if (n == 0) throw DomainError("annulus_min_modulus: n must be positive");
  for (double e : eps_list)
    if (!(e > 0.0) || !std::isfinite(e)) throw DomainError("annulus_min_modulus: eps must be > 0");

  const auto c = p.coeffs();
  std::size_t deg = c.size();
  while (deg > 0 && c[deg - 1] == cplx{}) --deg;
  std::vector<double> result(eps_list.size(), 0.0);
  if (deg == 0) return result;

  const double nn = static_cast<double>(n);
  const std::size_t coarse = std::max<std::size_t>(256, next_power_of_two(64 * deg));
  for (double e : eps_list) {
    const double spacing = e / (nn * nn);
    const double m = std::ceil(kTwoPi / (static_cast<double>(coarse) * spacing));
    if (m * static_cast<double>(coarse) > static_cast<double>(kMaxAnnulusGrid))
      throw ResolutionError(
          "annulus_min_modulus: eps n^-2 grid exceeds the evaluation cap; lower n or raise eps");
  }

  const auto t0 = circle_values(c, coarse, 0);
  const auto t1 = circle_values(c, coarse, 1);
  const auto t2 = circle_values(c, coarse, 2);
  double b2 = 0.0, b3 = 0.0;
  for (std::size_t j = 0; j < deg; ++j) {
    const double jd = static_cast<double>(j);
    b2 += jd * jd * std::abs(c[j]);
    b3 += jd * jd * jd * std::abs(c[j]);
  }
  std::vector<cplx> dcoef(deg > 1 ? deg - 1 : 1);
  for (std::size_t j = 1; j < deg; ++j) dcoef[j - 1] = c[j] * static_cast<double>(j);
  const std::span<const cplx> body = c.first(deg);

  std::vector<std::pair<double, std::size_t>> cells(coarse);
  for (std::size_t ei = 0; ei < eps_list.size(); ++ei) {
    const double width = eps_list[ei] / (nn * nn);
    const double slope = 2.0 * width;
    const double rem = annulus_remainder(c, eps_list[ei], n);
    auto f = [&](double t, double dt) { return std::max(0.0, t - slope * dt - rem); };

    const std::size_t m = static_cast<std::size_t>(
        std::ceil(kTwoPi / (static_cast<double>(coarse) * width)));
    const std::size_t fine = coarse * m;
    const double h = kTwoPi / static_cast<double>(coarse) / static_cast<double>(m);
    const double reach = static_cast<double>(m / 2) * h;

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < coarse; ++i) {
      const double a0 = std::abs(t0[i]), a1 = std::abs(t1[i]), a2 = std::abs(t2[i]);
      best = std::min(best, f(a0, a1));
      const double lo_t = a0 - reach * a1 - 0.5 * reach * reach * b2;
      const double hi_d = a1 + reach * a2 + 0.5 * reach * reach * b3;
      cells[i] = {lo_t - slope * hi_d - rem, i};
    }
    if (m > 1 && best > 0.0) {
      std::sort(cells.begin(), cells.end());
      const long lo_off = -static_cast<long>(m / 2);
      const long hi_off = static_cast<long>((m + 1) / 2) - 1;
      for (const auto& [bound, i] : cells) {
        if (bound >= best || best == 0.0) break;
        for (long r = lo_off; r <= hi_off; ++r) {
          if (r == 0) continue;
          const long k = (static_cast<long>(i * m) + r + static_cast<long>(fine)) %
                         static_cast<long>(fine);
          const double x = kTwoPi * static_cast<double>(k) / static_cast<double>(fine);
          const cplx z = std::polar(1.0, x);
          best = std::min(best, f(std::abs(eval(body, z)), std::abs(eval(dcoef, z))));
        }
      }
    }
    result[ei] = best;
  }
  return result;
}

double annulus_min_modulus(const RandomPoly& p, double eps, std::size_t n) {
  const double e[] = {eps};
  return annulus_min_modulus(p, e, n)[0];
}

}  // namespace rootsim
