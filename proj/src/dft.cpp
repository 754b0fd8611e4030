#include "rootsim/dft.hpp"

#include <cmath>
#include <numbers>

#include "rootsim/errors.hpp"

namespace rootsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kFourierMatrixCap = 2048;

std::vector<cplx>& scratch() {
  thread_local std::vector<cplx> buf;
  return buf;
}

}  // namespace

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) noexcept {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

FftPlan::FftPlan(std::size_t n, bool force_bluestein)
    : n_(n), bluestein_(force_bluestein || !is_power_of_two(n)) {
  if (n == 0) throw InputError("FftPlan: length must be at least 1");
  m_ = bluestein_ ? next_power_of_two(2 * n - 1) : n;

  bitrev_.resize(m_);
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < m_) ++bits;
  for (std::size_t i = 0; i < m_; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b)
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    bitrev_[i] = r;
  }
  twiddle_.resize(m_ / 2);
  for (std::size_t k = 0; k < m_ / 2; ++k) {
    const double a = kTwoPi * static_cast<double>(k) / static_cast<double>(m_);
    twiddle_[k] = {std::cos(a), std::sin(a)};
  }

  if (!bluestein_) return;
  // exp(i pi k^2 / n) with k^2 reduced mod 2n so the angle stays small.
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = static_cast<std::size_t>(
        (static_cast<unsigned __int128>(k) * k) % (2 * static_cast<unsigned __int128>(n)));
    const double a = std::numbers::pi * static_cast<double>(r) / static_cast<double>(n);
    chirp_[k] = {std::cos(a), std::sin(a)};
  }
  kernel_fft_.assign(m_, cplx{});
  kernel_fft_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    kernel_fft_[k] = std::conj(chirp_[k]);
    kernel_fft_[m_ - k] = std::conj(chirp_[k]);
  }
  radix2(kernel_fft_, false);
}

void FftPlan::radix2(std::span<cplx> a, bool inverse) const {
  const std::size_t m = a.size();
  for (std::size_t i = 0; i < m; ++i)
    if (i < bitrev_[i]) std::swap(a[i], a[bitrev_[i]]);
  for (std::size_t len = 2; len <= m; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = m / len;
    for (std::size_t start = 0; start < m; start += len) {
      for (std::size_t j = 0; j < half; ++j) {
        cplx w = twiddle_[j * stride];
        if (inverse) w = std::conj(w);
        const cplx u = a[start + j];
        const cplx v = a[start + j + half] * w;
        a[start + j] = u + v;
        a[start + j + half] = u - v;
      }
    }
  }
}

void FftPlan::bluestein(std::span<const cplx> in, std::span<cplx> out, bool inverse) const {
  // sum_j x_j e^{+2 pi i jk/n} = w_k sum_j (x_j w_j) conj(w_{k-j}),  w_k = e^{i pi k^2/n}.
  // The inverse sign is obtained by conjugating input and output.
  auto& buf = scratch();
  buf.assign(m_, cplx{});
  for (std::size_t j = 0; j < n_; ++j) {
    const cplx x = inverse ? std::conj(in[j]) : in[j];
    buf[j] = x * chirp_[j];
  }
  radix2(buf, false);
  for (std::size_t i = 0; i < m_; ++i) buf[i] *= kernel_fft_[i];
  radix2(buf, true);
  const double scale = 1.0 / static_cast<double>(m_);
  for (std::size_t k = 0; k < n_; ++k) {
    const cplx y = buf[k] * scale * chirp_[k];
    out[k] = inverse ? std::conj(y) : y;
  }
}

void FftPlan::forward(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw InputError("FftPlan: length mismatch");
  if (bluestein_) {
    bluestein(in, out, false);
    return;
  }
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  radix2(out, false);
}

void FftPlan::inverse(std::span<const cplx> in, std::span<cplx> out) const {
  if (in.size() != n_ || out.size() != n_) throw InputError("FftPlan: length mismatch");
  if (bluestein_) {
    bluestein(in, out, true);
  } else {
    if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
    radix2(out, true);
  }
  const double scale = 1.0 / static_cast<double>(n_);
  for (auto& v : out) v *= scale;
}

std::vector<cplx> FftPlan::forward(std::span<const cplx> in) const {
  std::vector<cplx> out(n_);
  forward(in, out);
  return out;
}

std::vector<cplx> FftPlan::inverse(std::span<const cplx> in) const {
  std::vector<cplx> out(n_);
  inverse(in, out);
  return out;
}

std::vector<cplx> dft_forward(std::span<const cplx> v) { return FftPlan(v.size()).forward(v); }

std::vector<cplx> dft_inverse(std::span<const cplx> v) { return FftPlan(v.size()).inverse(v); }

std::vector<cplx> dft_forward_bluestein(std::span<const cplx> v) {
  return FftPlan(v.size(), true).forward(v);
}

CMatrix fourier_matrix(std::size_t n) {
  if (n == 0 || n > kFourierMatrixCap)
    throw SizeError("fourier_matrix: n must be in [1, 2048]");
  CMatrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k) {
      const double a = kTwoPi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      f(j, k) = cplx{std::cos(a), std::sin(a)} * scale;
    }
  return f;
}

}  // namespace rootsim
