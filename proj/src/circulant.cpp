#include "rootsim/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rootsim/dft.hpp"
#include "rootsim/errors.hpp"
#include "rootsim/roots.hpp"

namespace rootsim {

namespace {

constexpr std::size_t kDenseCap = 4096;
constexpr std::size_t kSvdCap = 64;
constexpr std::size_t kEigCap = 16;
constexpr int kMaxSweeps = 60;
constexpr double kJacobiTol = 1e-13;
constexpr double kSingularRatio = 1e-14;

std::vector<cplx> check_row(std::vector<cplx> row) {
  if (row.empty()) throw InputError("circulant: first row must be nonempty");
  for (const auto& v : row)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("circulant: entries must be finite");
  return row;
}

// Solves (A) x = b in place by LU with partial pivoting; zero pivots are
// replaced by `floor` so that inverse iteration at an exact eigenvalue works.
std::vector<cplx> solve_shifted(CMatrix a, std::vector<cplx> b, double floor) {
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(piv, c), a(col, c));
      std::swap(b[piv], b[col]);
    }
    if (std::abs(a(col, col)) < floor) a(col, col) = floor;
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a(r, col) / a(col, col);
      if (f == cplx{}) continue;
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
      b[r] -= f * b[col];
    }
  }
  std::vector<cplx> x(n);
  for (std::size_t i = n; i-- > 0;) {
    cplx acc = b[i];
    for (std::size_t c = i + 1; c < n; ++c) acc -= a(i, c) * x[c];
    x[i] = acc / a(i, i);
  }
  return x;
}

double normalize(std::vector<cplx>& v) {
  double s = 0.0;
  for (const auto& x : v) s += std::norm(x);
  s = std::sqrt(s);
  if (s > 0.0)
    for (auto& x : v) x /= s;
  return s;
}

double eigen_residual(const CMatrix& m, const std::vector<cplx>& v, cplx lambda) {
  const auto mv = m.apply(v);
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) s += std::norm(mv[i] - lambda * v[i]);
  return std::sqrt(s);
}

}  // namespace

Circulant::Circulant(std::vector<cplx> first_row) : row_(check_row(std::move(first_row))) {}

Circulant Circulant::real(std::span<const double> first_row) {
  return Circulant(std::vector<cplx>(first_row.begin(), first_row.end()));
}

GCirculant::GCirculant(std::vector<cplx> first_row, std::size_t g)
    : row_(check_row(std::move(first_row))) {
  if (g == 0) throw DomainError("g-circulant: g must be positive");
  g_ = g % row_.size();
  if (g_ == 0) g_ = row_.size();
}

std::vector<cplx> eigenvalues(const Circulant& c) { return dft_forward(c.first_row()); }

SpectralSummary summarize_spectrum(std::vector<cplx> eig) {
  SpectralSummary s;
  s.eigenvalues = std::move(eig);
  s.s_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
    const double a = std::abs(s.eigenvalues[k]);
    if (a < s.s_min) {
      s.s_min = a;
      s.argmin = k;
    }
    s.s_max = std::max(s.s_max, a);
  }
  s.singular = s.s_min <= kSingularRatio * s.s_max;
  return s;
}

SpectralSummary extreme_singular_values(const Circulant& c) {
  return summarize_spectrum(eigenvalues(c));
}

CMatrix densify(const Circulant& c) { return densify(GCirculant({c.first_row().begin(), c.first_row().end()}, 1)); }

CMatrix densify(const GCirculant& gc) {
  const std::size_t n = gc.n();
  if (n > kDenseCap) throw SizeError("densify: n exceeds 4096");
  CMatrix m(n, n);
  const auto row = gc.first_row();
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t shift = (j * gc.g()) % n;
    for (std::size_t l = 0; l < n; ++l) m(j, l) = row[(l + n - shift) % n];
  }
  return m;
}

CMatrix q_factor(std::size_t n, std::size_t g) {
  if (n == 0) throw DomainError("q_factor: n must be positive");
  if (n > kDenseCap) throw SizeError("q_factor: n exceeds 4096");
  std::vector<cplx> e(n);
  e[0] = 1.0;
  return densify(GCirculant(std::move(e), g));
}

SpectralSummary gcirc_spectral(const GCirculant& gc) {
  const std::size_t n = gc.n();
  SpectralSummary s;
  if (std::gcd(n, gc.g()) == 1) {
    s = extreme_singular_values(gc.underlying());
  } else if (n <= kSvdCap) {
    const auto sv = dense_svd_oracle(densify(gc));
    s.s_max = sv.front();
    s.s_min = sv.back();
    s.argmin = 0;
    s.singular = s.s_min <= kSingularRatio * s.s_max;
  } else {
    throw UnsupportedError("gcirc_spectral: gcd(n, g) > 1 and n above the dense oracle cap");
  }
  s.eigenvalues.clear();
  if (n <= kEigCap) {
    for (const auto& ep : dense_eig_oracle(densify(gc))) s.eigenvalues.push_back(ep.value);
  }
  return s;
}

std::vector<double> dense_svd_oracle(const CMatrix& m) {
  const std::size_t rows = m.rows(), n = m.cols();
  if (n > kSvdCap || rows > kSvdCap) throw SizeError("dense_svd_oracle: n exceeds 64");
  if (n == 0) return {};
  // Columns stored contiguously.
  std::vector<std::vector<cplx>> col(n, std::vector<cplx>(rows));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < n; ++c) col[c][r] = m(r, c);

  // Columns that have collapsed to rounding level (rank-deficient input)
  // cannot reach the relative tolerance, so they count as converged.
  double fro2 = 0.0;
  for (const auto& c : col)
    for (const auto& x : c) fro2 += std::norm(x);
  const double negligible = 1e-28 * fro2;

  bool done = false;
  for (int sweep = 0; sweep < kMaxSweeps && !done; ++sweep) {
    done = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
          alpha += std::norm(col[p][r]);
          beta += std::norm(col[q][r]);
          gamma += std::conj(col[p][r]) * col[q][r];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= kJacobiTol * std::sqrt(alpha * beta)) continue;
        if (alpha <= negligible || beta <= negligible) continue;
        done = false;
        // Rotate a_q by the phase of gamma so the inner product is real, then
        // apply the real Jacobi rotation that zeroes it.
        const cplx phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        for (std::size_t r = 0; r < rows; ++r) {
          const cplx ap = col[p][r];
          const cplx aq = col[q][r] * std::conj(phase);
          col[p][r] = cs * ap - sn * aq;
          col[q][r] = sn * ap + cs * aq;
        }
      }
    }
  }
  if (!done) throw NumericalError("dense_svd_oracle: Jacobi sweeps did not converge");
  std::vector<double> sv(n);
  for (std::size_t c = 0; c < n; ++c) {
    double s = 0.0;
    for (const auto& x : col[c]) s += std::norm(x);
    sv[c] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

std::vector<cplx> characteristic_polynomial(const CMatrix& a) {
  const std::size_t n = a.rows();
  if (n != a.cols()) throw InputError("characteristic_polynomial: matrix must be square");
  std::vector<cplx> c(n + 1);
  c[n] = 1.0;
  CMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    CMatrix next = a * mk;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    mk = std::move(next);
    const CMatrix am = a * mk;
    cplx tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / static_cast<double>(k);
  }
  return c;
}

std::vector<EigenPair> dense_eig_oracle(const CMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("dense_eig_oracle: matrix must be square");
  if (n > kEigCap) throw SizeError("dense_eig_oracle: n exceeds 16");
  if (n == 0) return {};
  const double scale = std::max(m.frobenius_norm(), 1e-300);
  const auto charpoly = characteristic_polynomial(m);
  const RootSet rs = find_roots(charpoly, 2000, 1.0);

  std::vector<EigenPair> out;
  out.reserve(n);
  for (const cplx guess : rs.roots) {
    CMatrix shifted = m;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= guess;
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = cplx(1.0 + 0.1 * i, 0.05 * i);
    normalize(v);
    for (int it = 0; it < 3; ++it) {
      v = solve_shifted(shifted, v, 1e-14 * scale);
      normalize(v);
    }
    EigenPair best{guess, eigen_residual(m, v, guess)};
    // Rayleigh quotient refinement; kept only if it tightens the residual.
    const auto mv = m.apply(v);
    cplx rq = 0.0;
    for (std::size_t i = 0; i < n; ++i) rq += std::conj(v[i]) * mv[i];
    const double rq_res = eigen_residual(m, v, rq);
    if (rq_res < best.residual) best = {rq, rq_res};
    out.push_back(best);
  }
  return out;
}

}  // namespace rootsim
