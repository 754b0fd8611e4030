#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rootsim/dense.hpp"

namespace rootsim {

/// circ(c_0, ..., c_{n-1}): row j is the first row shifted right by j, so
/// entry (j, l) = c_{(l - j) mod n}.
class Circulant {
 public:
  explicit Circulant(std::vector<cplx> first_row);
  static Circulant real(std::span<const double> first_row);

  std::size_t n() const noexcept { return row_.size(); }
  std::span<const cplx> first_row() const noexcept { return row_; }

 private:
  std::vector<cplx> row_;
};

/// g-circulant: row j is row j-1 shifted right by g, entry (j, l) =
/// c_{(l - j g) mod n}. g is reduced into [1, n]; g = 1 is the ordinary circulant.
class GCirculant {
 public:
  GCirculant(std::vector<cplx> first_row, std::size_t g);

  std::size_t n() const noexcept { return row_.size(); }
  std::size_t g() const noexcept { return g_; }
  std::span<const cplx> first_row() const noexcept { return row_; }
  Circulant underlying() const { return Circulant(row_); }

 private:
  std::vector<cplx> row_;
  std::size_t g_;
};

struct SpectralSummary {
  /// Empty when not computed (g-circulants above the eigen-oracle cap).
  std::vector<cplx> eigenvalues;
  double s_min = 0.0;
  double s_max = 0.0;
  /// Index k attaining s_min (circulant path only).
  std::size_t argmin = 0;
  /// s_min <= 1e-14 s_max.
  bool singular = false;
};

/// Eigenvalue k is sum_j c_j exp(2 pi i jk / n), i.e. the first row's
/// polynomial at the k-th root of unity. O(n log n).
std::vector<cplx> eigenvalues(const Circulant& c);

/// Extreme singular values as extreme eigenvalue moduli (circulants are normal).
SpectralSummary extreme_singular_values(const Circulant& c);

/// Minimum eigenvalue modulus from an already-computed spectrum.
SpectralSummary summarize_spectrum(std::vector<cplx> eigenvalues);

/// Dense forms, n <= 4096.
CMatrix densify(const Circulant& c);
CMatrix densify(const GCirculant& gc);

/// The 0/1 g-circulant with first row (1, 0, ..., 0); Q * C == C^g.
CMatrix q_factor(std::size_t n, std::size_t g);

/// For gcd(n, g) = 1 the singular values equal those of the underlying
/// circulant. Otherwise the dense SVD oracle is used up to its cap.
/// Eigenvalues are filled for n <= 16 via the dense eigen oracle.
SpectralSummary gcirc_spectral(const GCirculant& gc);

/// One-sided (Hestenes) Jacobi SVD; singular values sorted non-increasing. n <= 64.
std::vector<double> dense_svd_oracle(const CMatrix& m);

struct EigenPair {
  cplx value;
  /// ||(M - value I) v|| for a unit inverse-iteration vector v.
  double residual = 0.0;
};

/// Eigenvalues via the Faddeev-LeVerrier characteristic polynomial and
/// find_roots, each refined and certified with one inverse-iteration vector.
/// n <= 16.
std::vector<EigenPair> dense_eig_oracle(const CMatrix& m);

/// Characteristic polynomial det(lambda I - M), lowest degree first.
std::vector<cplx> characteristic_polynomial(const CMatrix& m);

}  // namespace rootsim
