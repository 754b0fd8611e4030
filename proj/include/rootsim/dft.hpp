#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "rootsim/dense.hpp"

namespace rootsim {

/// Precomputed transform of one length. Forward uses the +i sign:
///   out[k] = sum_j in[j] exp(+2 pi i j k / n)
/// so out[k] is the polynomial with coefficients `in` evaluated at the k-th
/// power of exp(2 pi i / n). Power-of-two lengths use iterative radix-2;
/// every other length goes through Bluestein's chirp-z convolution.
///
/// A plan is immutable after construction and may be shared across threads;
/// the scratch buffer is passed in by the caller.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n, bool force_bluestein = false);

  std::size_t size() const noexcept { return n_; }
  bool uses_bluestein() const noexcept { return bluestein_; }

  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  void inverse(std::span<const cplx> in, std::span<cplx> out) const;

  std::vector<cplx> forward(std::span<const cplx> in) const;
  std::vector<cplx> inverse(std::span<const cplx> in) const;

 private:
  void radix2(std::span<cplx> data, bool inverse) const;
  void bluestein(std::span<const cplx> in, std::span<cplx> out, bool inverse) const;

  std::size_t n_;
  bool bluestein_;
  // radix-2 part: size m (n itself, or the Bluestein padding length)
  std::size_t m_ = 0;
  std::vector<std::size_t> bitrev_;
  std::vector<cplx> twiddle_;  // exp(+2 pi i k / m), k < m/2
  // Bluestein part
  std::vector<cplx> chirp_;        // exp(+i pi k^2 / n), k < n
  std::vector<cplx> kernel_fft_;   // radix-2 transform of conj(chirp) wrapped to length m
};

/// Unnormalized forward transform with the +i sign.
std::vector<cplx> dft_forward(std::span<const cplx> v);
/// Inverse of dft_forward, including the 1/n factor.
std::vector<cplx> dft_inverse(std::span<const cplx> v);

/// Runs the Bluestein path even for power-of-two n.
std::vector<cplx> dft_forward_bluestein(std::span<const cplx> v);

/// Unitary Fourier matrix with entries exp(2 pi i j k / n) / sqrt(n); n <= 2048.
CMatrix fourier_matrix(std::size_t n);

bool is_power_of_two(std::size_t n) noexcept;
std::size_t next_power_of_two(std::size_t n) noexcept;

}  // namespace rootsim
