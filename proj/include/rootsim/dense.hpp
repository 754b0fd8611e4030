#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace rootsim {

using cplx = std::complex<double>;

/// Small row-major complex matrix used by the oracles and the Fourier matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(const std::vector<cplx>& d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<cplx>& data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix transpose() const;
  std::vector<cplx> apply(const std::vector<cplx>& x) const;

  double frobenius_norm() const;
  double max_abs() const;

  /// Row-major CSV, complex entries as "re+imj".
  std::string to_csv() const;

  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// max_{ij} |a_ij - b_ij|.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// Determinant by LU with partial pivoting.
cplx determinant(CMatrix m);

}  // namespace rootsim
