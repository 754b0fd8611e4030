#include <doctest.h>

#include "rootsim/dense.hpp"
#include "rootsim/errors.hpp"

using namespace rootsim;

TEST_CASE("identity, diagonal and products") {
  const auto i3 = CMatrix::identity(3);
  const auto d = CMatrix::diagonal({1.0, cplx(0, 2), -3.0});
  CHECK(i3 * d == d);
  CHECK(d * i3 == d);
  CHECK(max_abs_diff(d - d, CMatrix(3, 3)) == 0.0);
  CHECK(d.max_abs() == 3.0);
  CHECK(d.frobenius_norm() == doctest::Approx(std::sqrt(14.0)));
}

TEST_CASE("adjoint conjugates and transposes") {
  CMatrix m(2, 3);
  m(0, 1) = cplx(1, 2);
  m(1, 2) = cplx(-3, 0.5);
  const auto a = m.adjoint();
  REQUIRE(a.rows() == 3);
  CHECK(a(1, 0) == cplx(1, -2));
  CHECK(a(2, 1) == cplx(-3, -0.5));
  CHECK(m.transpose()(1, 0) == cplx(1, 2));
}

TEST_CASE("apply is matrix-vector product") {
  CMatrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;
  m(1, 0) = cplx(0, 1);
  const auto y = m.apply({1.0, 1.0});
  CHECK(y[0] == cplx(3, 0));
  CHECK(y[1] == cplx(0, 1));
  CHECK_THROWS_AS(m.apply({1.0}), InputError);
}

TEST_CASE("determinant by LU") {
  CHECK(determinant(CMatrix::diagonal({2.0, 3.0, cplx(0, 1)})) == cplx(0, 6));
  CMatrix p(2, 2);
  p(0, 1) = 1.0;
  p(1, 0) = 1.0;
  CHECK(determinant(p) == cplx(-1.0, 0.0));
  CMatrix s(2, 2);
  s(0, 0) = s(0, 1) = s(1, 0) = s(1, 1) = 1.0;
  CHECK(std::abs(determinant(s)) == 0.0);
}

TEST_CASE("csv layout is row-major re+imj") {
  CMatrix m(1, 2);
  m(0, 0) = cplx(1, -2);
  m(0, 1) = cplx(0.5, 0);
  CHECK(m.to_csv() == "1-2j,0.5+0j\n");
}
