#ifndef ZSLAB_PRODUCT_SYSTEM_HPP_
#define ZSLAB_PRODUCT_SYSTEM_HPP_

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "zslab/correspondence.hpp"
#include "zslab/semigroup.hpp"

namespace zslab {

/// A product system stored on a finite ball of its grading semigroup.
/// Fibers are correspondences over a common coefficient algebra; the
/// multiplication X_p x X_q -> X_pq is a matrix on paired coordinates,
/// defined exactly for the pairs whose product stays in the ball. The
/// identity fiber carries an explicit ambient realization (e_basis) that
/// identifies X_e with the coefficient algebra.
class ProductSystem {
 public:
  struct Data {
    std::shared_ptr<const Semigroup> grading;
    Ball ball;
    std::shared_ptr<const MatrixStarAlgebra> coeff;
    std::map<Elem, Correspondence> fibers;
    std::map<std::pair<Elem, Elem>, CMat> mult;
    std::vector<CMat> e_basis;
  };

  explicit ProductSystem(Data d);

  const Semigroup& grading() const { return *data_.grading; }
  std::shared_ptr<const Semigroup> grading_ptr() const { return data_.grading; }
  const Ball& ball() const { return data_.ball; }
  const MatrixStarAlgebra& coeff() const { return *data_.coeff; }
  std::shared_ptr<const MatrixStarAlgebra> coeff_ptr() const {
    return data_.coeff;
  }

  bool has_fiber(const Elem& p) const { return data_.fibers.count(p) != 0; }
  const Correspondence& fiber(const Elem& p) const;
  const std::map<Elem, Correspondence>& fibers() const { return data_.fibers; }

  bool mult_defined(const Elem& p, const Elem& q) const;
  /// Throws WindowOverflowError when pq leaves the ball.
  const CMat& mult_matrix(const Elem& p, const Elem& q) const;
  CVec multiply(const Elem& p, const Elem& q, const CVec& x,
                const CVec& y) const;

  /// Ambient realization of the identity fiber.
  const std::vector<CMat>& e_basis() const { return data_.e_basis; }
  CMat e_to_ambient(const CVec& x) const;
  std::optional<CVec> ambient_to_e(const CMat& a, double tol = 1e-9) const;
  /// Coordinates of the coefficient unit in X_e.
  CVec unit_vector() const;

  /// i_p^{pq}(S): the operator with i(S)(xy) = (Sx)y, computed as
  /// M (S (x) id) M^+; independent of the right inverse chosen because
  /// adjointable S preserve ker M.
  CMat embed_compact(const Elem& p, const Elem& q, const CMat& s) const;
  /// i_p^r via the left quotient p \ r; throws DomainError if p does not
  /// left-divide r.
  CMat embed_into(const Elem& p, const Elem& r, const CMat& s) const;

  /// S v T = i_p^r(S) i_q^r(T) on X_r with r = lcm(p, q); nullopt when
  /// pP cap qP is empty; WindowOverflowError when r exists outside the ball.
  std::optional<CMat> meet(const Elem& p, const Elem& q, const CMat& s,
                           const CMat& t) const;

 private:
  const CMat& mult_pinv(const Elem& p, const Elem& q) const;

  Data data_;
  mutable std::map<std::pair<Elem, Elem>, CMat> pinv_cache_;
};

/// The product-system axioms over the stored ball: X_e = coefficient algebra
/// under e_basis, every M_{p,q} unitary (module isometry onto X_pq),
/// multiplication by X_e implements the module actions, associativity on all
/// in-ball triples. Out-of-ball products are counted as skipped.
ViolationReport validate_product_system(const ProductSystem& x,
                                        Tolerance tol = {});

/// Runs validate_correspondence on every fiber.
ViolationReport validate_fibers(const ProductSystem& x, Tolerance tol = {});

/// Definition of compact alignment, verified: for in-ball pairs with
/// lcm r in the ball, every spanning S v T lies in span K(X_r).
ViolationReport check_compactly_aligned(const ProductSystem& x,
                                        Tolerance tol = {});

}  // namespace zslab

#endif  // ZSLAB_PRODUCT_SYSTEM_HPP_
