#ifndef ZSLAB_ALGEBRA_HPP_
#define ZSLAB_ALGEBRA_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zslab/matrix.hpp"
#include "zslab/report.hpp"

namespace zslab {

/// A unital *-subalgebra of M_d given by an explicit spanning basis.
/// Membership is a least-squares projection test against the basis span;
/// closure under products and adjoints is checked, not assumed.
class MatrixStarAlgebra {
 public:
  MatrixStarAlgebra(std::vector<CMat> basis, CMat unit, std::string name);

  int ambient_dim() const { return ambient_dim_; }
  /// Linear dimension (the basis is required to be independent).
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<CMat>& basis() const { return basis_; }
  const CMat& unit() const { return unit_; }
  const std::string& name() const { return name_; }

  /// Coordinates of `a` in the basis, or nullopt when a is outside the span
  /// at tolerance.
  std::optional<CVec> coords(const CMat& a, double tol = 1e-9) const;
  CMat expand(const CVec& coeffs) const;
  bool contains(const CMat& a, double tol = 1e-9) const;

  /// Basis independence, closure of products/adjoints, unit behaviour,
  /// finiteness of entries.
  ViolationReport check_closure(Tolerance tol = {}) const;

  static std::shared_ptr<const MatrixStarAlgebra> scalars();
  static std::shared_ptr<const MatrixStarAlgebra> full_matrix(int d);
  static std::shared_ptr<const MatrixStarAlgebra> diagonal(int d);

 private:
  std::vector<CMat> basis_;
  CMat unit_;
  std::string name_;
  int ambient_dim_;
  CMat stacked_;  // vectorized basis, one column per element
  Eigen::CompleteOrthogonalDecomposition<CMat> solver_;
};

/// A linear map between algebras, given by images of the source basis.
struct AlgebraMap {
  std::vector<CMat> images;  // images[i] = f(basis[i]), ambient in target
};

/// Composes coordinates: returns f(a) for ambient a in the source span.
CMat apply_algebra_map(const AlgebraMap& f, const MatrixStarAlgebra& source,
                       const CMat& a);

/// Reports every basis pair where f(ab) != f(a)f(b), every basis element
/// where f(a*) != f(a)*, whether f maps the unit to the unit, and whether
/// images stay inside the target span. Empty report = unital
/// *-homomorphism to tolerance.
ViolationReport check_star_homomorphism(const AlgebraMap& f,
                                        const MatrixStarAlgebra& source,
                                        const MatrixStarAlgebra& target,
                                        Tolerance tol = {});

}  // namespace zslab

#endif  // ZSLAB_ALGEBRA_HPP_
