#include "rootsim/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "rootsim/errors.hpp"

namespace rootsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kStepTol = 1e-13;

// Newton correction p(z)/p'(z) for p of degree d = c.size() - 1. Outside the
// unit disc the reversed polynomial is used so that z^d never overflows.
cplx newton_ratio(std::span<const cplx> c, cplx z) {
  const std::size_t d = c.size() - 1;
  if (std::abs(z) <= 1.0) {
    cplx p = c[d], dp = 0.0;
    for (std::size_t j = d; j-- > 0;) {
      dp = dp * z + p;
      p = p * z + c[j];
    }
    if (p == cplx{}) return 0.0;
    return p / dp;
  }
  // p(z) = z^d q(y), y = 1/z, q(y) = sum_j c_j y^(d-j);
  // p'(z) = z^(d-1) (d q(y) - y q'(y)).
  const cplx y = 1.0 / z;
  cplx q = c[0], dq = 0.0;
  for (std::size_t j = 1; j <= d; ++j) {
    dq = dq * y + q;
    q = q * y + c[j];
  }
  if (q == cplx{}) return 0.0;
  return z * q / (static_cast<double>(d) * q - y * dq);
}

// |p(z)| / ||c||_1, measured on the reciprocal polynomial when |z| > 1 so
// that far-out roots are judged on the same scale as those inside the disc.
double normalized_residual(std::span<const cplx> c, cplx z, double l1) {
  if (std::abs(z) <= 1.0) return std::abs(eval(c, z)) / l1;
  const cplx y = 1.0 / z;
  cplx q = c[0];
  for (std::size_t j = 1; j < c.size(); ++j) q = q * y + c[j];
  return std::abs(q) / l1;
}

}  // namespace

double arg_2pi(cplx z) noexcept {
  double a = std::arg(z);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

RootSet find_roots(std::span<const cplx> coeffs, int max_iter, double residual_tol) {
  for (const auto& c : coeffs)
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw InputError("find_roots: non-finite coefficient");
  std::size_t top = coeffs.size();
  while (top > 0 && coeffs[top - 1] == cplx{}) --top;
  std::size_t low = 0;
  while (low < top && coeffs[low] == cplx{}) ++low;
  if (top == 0 || top - 1 == 0) throw InputError("find_roots: polynomial has degree 0");

  RootSet rs;
  rs.zero_roots = low;
  rs.roots.assign(low, cplx{});
  const std::span<const cplx> c = coeffs.subspan(low, top - low);
  const std::size_t d = c.size() - 1;

  std::vector<cplx> z(d);
  if (d > 0) {
    double radius = std::pow(std::abs(c[0]) / std::abs(c[d]), 1.0 / static_cast<double>(d));
    if (!std::isfinite(radius) || radius == 0.0) radius = 1.0;
    for (std::size_t k = 0; k < d; ++k) {
      const double angle = kTwoPi * static_cast<double>(k) / static_cast<double>(d) + 0.4;
      z[k] = std::polar(radius, angle);
    }
  }

  bool stopped = d == 0;
  int it = 0;
  while (!stopped && it < max_iter) {
    ++it;
    bool all_small = true;
    for (std::size_t i = 0; i < d; ++i) {
      const cplx ratio = newton_ratio(c, z[i]);
      if (ratio == cplx{}) continue;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) repulsion += 1.0 / (z[i] - z[j]);
      const cplx w = ratio / (1.0 - ratio * repulsion);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      if (std::abs(w) >= kStepTol * (1.0 + std::abs(z[i]))) all_small = false;
    }
    stopped = all_small;
  }
  for (auto& r : z) {
    const cplx w = newton_ratio(c, r);
    if (std::isfinite(w.real()) && std::isfinite(w.imag())) r -= w;
  }
  rs.roots.insert(rs.roots.end(), z.begin(), z.end());
  rs.iterations = it;

  double l1 = 0.0;
  for (const auto& v : coeffs) l1 += std::abs(v);
  rs.residuals.reserve(rs.roots.size());
  bool ok = stopped;
  for (const auto& r : rs.roots) {
    const double res = normalized_residual(coeffs, r, l1);
    rs.residuals.push_back(res);
    if (!(res <= residual_tol)) ok = false;
  }
  rs.converged = ok;
  return rs;
}

RootSet find_roots(const RandomPoly& p, int max_iter, double residual_tol) {
  return find_roots(p.coeffs(), max_iter, residual_tol);
}

double ks_uniform(std::span<const double> arguments) {
  if (arguments.empty()) throw InputError("ks_uniform: no arguments");
  std::vector<double> u(arguments.begin(), arguments.end());
  for (double& v : u) v /= kTwoPi;
  std::sort(u.begin(), u.end());
  const double m = static_cast<double>(u.size());
  double d = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double idx = static_cast<double>(i + 1);
    d = std::max({d, idx / m - u[i], u[i] - (idx - 1.0) / m});
  }
  return d;
}

AnnulusStats annulus_stats(const RootSet& rs, std::size_t n, std::span<const double> widths) {
  if (rs.roots.empty()) throw InputError("annulus_stats: empty root set");
  if (!rs.converged) throw InputError("annulus_stats: root set did not converge");
  AnnulusStats st;
  st.n = n;
  std::vector<double> dist, args;
  for (const auto& r : rs.roots) {
    dist.push_back(std::abs(std::abs(r) - 1.0));
    args.push_back(arg_2pi(r));
  }
  std::vector<double> w(widths.begin(), widths.end());
  std::sort(w.begin(), w.end());
  for (double width : w) {
    const auto cnt = std::count_if(dist.begin(), dist.end(), [&](double x) { return x <= width; });
    st.frac_within.emplace_back(width, static_cast<double>(cnt) / dist.size());
  }
  const double nn = static_cast<double>(n);
  st.min_scaled_dist = nn * nn * *std::min_element(dist.begin(), dist.end());
  st.ks_uniform = ks_uniform(args);
  return st;
}

std::vector<double> default_widths(std::size_t n, double eps) {
  const double nn = static_cast<double>(n);
  std::vector<double> w;
  for (double k : {1.0, 2.0, 4.0}) w.push_back(eps * k / (nn * nn));
  for (double c : {1.0, 2.0, 5.0, 10.0}) w.push_back(c / nn);
  w.push_back(0.05);
  w.push_back(0.1);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

}  // namespace rootsim
