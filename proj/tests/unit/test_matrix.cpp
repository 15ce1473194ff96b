#include "zslab/matrix.hpp"

#include <random>

#include "doctest.h"
#include "zslab/errors.hpp"

using namespace zslab;

TEST_CASE("approx_eq basics") {
  CMat i2 = identity(2);
  CHECK(approx_eq(i2, i2, {1e-9}));

  CMat perturbed = i2;
  perturbed(0, 0) += 1e-6;
  CHECK_FALSE(approx_eq(i2, perturbed, {1e-9}));

  CMat tiny = i2;
  tiny(0, 0) += 1e-12;
  CHECK(approx_eq(i2, tiny, {1e-9}));

  CHECK_THROWS_AS(approx_eq(i2, zero(2, 3)), DimensionError);
}

TEST_CASE("approx_eq is reflexive and symmetric, exact at eps=0") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    CMat a(3, 3), b(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        a(i, j) = Complex(dist(rng), dist(rng));
        b(i, j) = Complex(dist(rng), dist(rng));
      }
    }
    CHECK(approx_eq(a, a, {0.0}));
    CHECK(approx_eq(a, b, {1e-9}) == approx_eq(b, a, {1e-9}));
  }
}

TEST_CASE("is_positive on diagonal and Gram examples") {
  CMat d = zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  CHECK(is_positive(d));

  d(1, 1) = -1.0;
  CHECK_FALSE(is_positive(d));

  // Gram matrix of (1,0) and (1,1): [[1,1],[1,2]], eigenvalues (3+-sqrt5)/2.
  CMat g(2, 2);
  g << 1.0, 1.0, 1.0, 2.0;
  CHECK(is_positive(g));
  double lam = min_eigenvalue(g);
  CHECK(lam == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));

  CHECK_THROWS_AS(is_positive(zero(2, 3)), DimensionError);
}

TEST_CASE("A*A is always positive") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    CMat a(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        a(i, j) = Complex(dist(rng), dist(rng));
      }
    }
    CHECK(is_positive(CMat(a.adjoint() * a)));
  }
}

TEST_CASE("adjoint is an involution") {
  CMat a(2, 3);
  a << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(0, 0),
      Complex(2, 2), Complex(-1, 5);
  CHECK(max_abs_diff(CMat(CMat(a.adjoint()).adjoint()), a) == 0.0);
}

TEST_CASE("kron pairs row-major coordinates") {
  CMat a(2, 2), b(2, 2);
  a << 1.0, 2.0, 3.0, 4.0;
  b << 0.0, 1.0, 1.0, 0.0;
  CMat k = kron(a, b);
  CHECK(k.rows() == 4);
  // (kron(a,b))((i*2+k),(j*2+l)) = a(i,j) b(k,l)
  CHECK(k(0, 1) == Complex(1.0, 0.0) * b(0, 1));
  CHECK(k(2, 1) == a(1, 0) * b(0, 1));

  CVec x(2), y(2);
  x << 1.0, 2.0;
  y << 3.0, 5.0;
  CVec v = kron_vec(x, y);
  CHECK(v(0) == Complex(3.0, 0.0));
  CHECK(v(3) == Complex(10.0, 0.0));
}

TEST_CASE("span utilities") {
  std::vector<CMat> basis = {unit_matrix(2, 2, 0, 0), unit_matrix(2, 2, 1, 1)};
  CHECK(span_rank(basis) == 2);
  CHECK(in_span(basis, CMat(2.0 * identity(2)), 1e-9));
  CHECK_FALSE(in_span(basis, unit_matrix(2, 2, 0, 1), 1e-9));

  double residual = 0.0;
  CVec c = span_coords(basis, CMat(3.0 * unit_matrix(2, 2, 1, 1)), &residual);
  CHECK(residual <= 1e-12);
  CHECK(std::abs(c(1) - Complex(3.0, 0.0)) <= 1e-12);
}
