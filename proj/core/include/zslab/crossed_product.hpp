#ifndef ZSLAB_CROSSED_PRODUCT_HPP_
#define ZSLAB_CROSSED_PRODUCT_HPP_

#include <functional>
#include <map>
#include <memory>
#include <vector>

#include "zslab/algebra.hpp"
#include "zslab/group.hpp"

namespace zslab {

/// Concrete crossed product of a finite-dimensional algebra by a finite
/// group, realized on C^(d*|G|) through the regular representation:
///   (pi(a) xi)(h) = beta_{h^{-1}}(a) xi(h),  (u_g xi)(h) = xi(g^{-1} h).
/// For finite groups this model is *-isomorphic to the universal crossed
/// product (full and reduced coincide); the generators a u_g satisfy the
/// covariance relation u_g a = beta_g(a) u_g, verified at build time.
class CrossedProduct {
 public:
  using Action = std::function<AlgebraMap(const Elem& g)>;

  CrossedProduct(std::shared_ptr<const MatrixStarAlgebra> coeff,
                 std::shared_ptr<const Group> group, Action beta);

  const MatrixStarAlgebra& algebra() const { return *algebra_; }
  std::shared_ptr<const MatrixStarAlgebra> algebra_ptr() const {
    return algebra_;
  }
  const MatrixStarAlgebra& coeff() const { return *coeff_; }
  const Group& group() const { return *group_; }
  const std::vector<Elem>& group_elements() const { return elements_; }
  int group_index(const Elem& g) const;

  CMat pi(const CMat& a) const;
  const CMat& u(const Elem& g) const;
  /// pi(basis[i]) u_g, the generator grid spanning the algebra.
  const CMat& generator(int basis_index, const Elem& g) const;

  /// Conditional expectation onto the coefficient copy: reads off the u_e
  /// coefficient, Phi(sum a_g u_g) = a_e, returned as an ambient element of
  /// the coefficient algebra.
  CMat expectation(const CMat& t) const;

  CMat beta_ambient(const Elem& g, const CMat& a) const;

  /// Covariance relation, unitarity/multiplicativity of u, Phi identities
  /// (Phi(a u_g) = delta_{g,e} a, idempotence, contractivity and positivity
  /// on test elements).
  ViolationReport check(Tolerance tol = {}) const;

  /// Dimension of the center of the built algebra (1 = trivial center).
  int center_dimension(double tol = 1e-9) const;

 private:
  std::shared_ptr<const MatrixStarAlgebra> coeff_;
  std::shared_ptr<const Group> group_;
  Action beta_;
  std::vector<Elem> elements_;
  std::map<Elem, CMat> u_;
  std::map<std::pair<int, Elem>, CMat> gens_;
  std::shared_ptr<const MatrixStarAlgebra> algebra_;
};

/// Builds and validates; throws UnsupportedStructureError for infinite G and
/// ConstructionError when the action is not by *-automorphisms or the
/// covariance check fails.
std::shared_ptr<const CrossedProduct> build_crossed_product(
    std::shared_ptr<const MatrixStarAlgebra> coeff,
    std::shared_ptr<const Group> group, CrossedProduct::Action beta,
    Tolerance tol = {});

}  // namespace zslab

#endif  // ZSLAB_CROSSED_PRODUCT_HPP_
