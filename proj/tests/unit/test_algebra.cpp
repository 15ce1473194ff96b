#include "zslab/algebra.hpp"

#include "doctest.h"
#include "zslab/errors.hpp"

using namespace zslab;

TEST_CASE("builtin algebras close up") {
  CHECK(MatrixStarAlgebra::scalars()->check_closure().ok());
  CHECK(MatrixStarAlgebra::diagonal(3)->check_closure().ok());
  CHECK(MatrixStarAlgebra::full_matrix(2)->check_closure().ok());
}

TEST_CASE("coords and membership") {
  auto diag = MatrixStarAlgebra::diagonal(2);
  CMat a = zero(2, 2);
  a(0, 0) = Complex(2, 1);
  a(1, 1) = Complex(0, -3);
  auto c = diag->coords(a);
  REQUIRE(c.has_value());
  CHECK(max_abs_diff(diag->expand(*c), a) <= 1e-12);
  CHECK_FALSE(diag->contains(unit_matrix(2, 2, 0, 1)));

  auto dependent = std::vector<CMat>{identity(2), identity(2)};
  CHECK_THROWS_AS(MatrixStarAlgebra(dependent, identity(2), "bad"),
                  ConstructionError);
}

TEST_CASE("identity map on M_2 is a *-isomorphism") {
  auto m2 = MatrixStarAlgebra::full_matrix(2);
  AlgebraMap f{m2->basis()};
  CHECK(check_star_homomorphism(f, *m2, *m2).ok());
}

TEST_CASE("transpose on M_2 is an anti-homomorphism, not a homomorphism") {
  auto m2 = MatrixStarAlgebra::full_matrix(2);
  AlgebraMap f;
  for (const CMat& b : m2->basis()) f.images.push_back(b.transpose());
  ViolationReport report = check_star_homomorphism(f, *m2, *m2);
  CHECK_FALSE(report.ok());
  // (E12 E21)^T = E11 but E12^T E21^T = E21 E12 = E22.
  bool mult_violation = false;
  for (const auto& v : report.witnesses()) {
    if (v.tag == "multiplicativity") mult_violation = true;
  }
  CHECK(mult_violation);
}

TEST_CASE("coordinate swap on the diagonal algebra is a *-automorphism") {
  auto diag = MatrixStarAlgebra::diagonal(2);
  AlgebraMap f;
  f.images.push_back(unit_matrix(2, 2, 1, 1));
  f.images.push_back(unit_matrix(2, 2, 0, 0));
  CHECK(check_star_homomorphism(f, *diag, *diag).ok());
}

TEST_CASE("non-unital map is flagged") {
  auto diag = MatrixStarAlgebra::diagonal(2);
  AlgebraMap f;
  f.images.push_back(unit_matrix(2, 2, 0, 0));  // E11 -> E11
  f.images.push_back(zero(2, 2));               // E22 -> 0
  ViolationReport report = check_star_homomorphism(f, *diag, *diag);
  CHECK_FALSE(report.ok());
  bool unital_violation = false;
  for (const auto& v : report.witnesses()) {
    if (v.tag == "unital") unital_violation = true;
  }
  CHECK(unital_violation);
}
