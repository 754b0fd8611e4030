#include "rootsim/dense.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rootsim/errors.hpp"

namespace rootsim {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(const std::vector<cplx>& d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

CMatrix CMatrix::transpose() const {
  CMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

std::vector<cplx> CMatrix::apply(const std::vector<cplx>& x) const {
  if (x.size() != cols_) throw InputError("CMatrix::apply: dimension mismatch");
  std::vector<cplx> y(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    cplx acc = 0.0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

double CMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

std::string CMatrix::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      const cplx v = (*this)(r, c);
      if (c) os << ',';
      os << v.real() << (std::signbit(v.imag()) ? '-' : '+') << std::abs(v.imag()) << 'j';
    }
    os << '\n';
  }
  return os.str();
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) throw InputError("CMatrix multiply: dimension mismatch");
  CMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
    throw InputError("CMatrix subtract: dimension mismatch");
  CMatrix out(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.data_.size(); ++i) out.data_[i] = a.data_[i] - b.data_[i];
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).max_abs(); }

cplx determinant(CMatrix m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw InputError("determinant: matrix must be square");
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (m(piv, col) == cplx{}) return 0.0;
    if (piv != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(m(piv, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

}  // namespace rootsim
