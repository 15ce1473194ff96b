#ifndef ZSLAB_CORRESPONDENCE_HPP_
#define ZSLAB_CORRESPONDENCE_HPP_

#include <memory>
#include <optional>
#include <vector>

#include "zslab/algebra.hpp"
#include "zslab/matrix.hpp"
#include "zslab/report.hpp"

namespace zslab {

/// A finite-dimensional C*-correspondence over a MatrixStarAlgebra. The
/// fiber is C^m with explicit structure tensors:
///   - inner_tensor[i][j] = <e_i, e_j> in the ambient algebra matrices
///     (conjugate-linear in the first slot, linear in the second),
///   - left_of_basis[k]  = the m x m matrix of x -> b_k . x,
///   - right_of_basis[k] = the m x m matrix of x -> x . b_k.
class Correspondence {
 public:
  Correspondence(std::shared_ptr<const MatrixStarAlgebra> coeff,
                 std::vector<std::vector<CMat>> inner_tensor,
                 std::vector<CMat> left_of_basis,
                 std::vector<CMat> right_of_basis);

  int dim() const { return dim_; }
  const MatrixStarAlgebra& coeff() const { return *coeff_; }
  std::shared_ptr<const MatrixStarAlgebra> coeff_ptr() const { return coeff_; }

  const CMat& inner_basis(int i, int j) const;
  CMat inner(const CVec& x, const CVec& y) const;

  /// phi(a) for ambient a (decomposed in the coefficient basis).
  CMat left_matrix(const CMat& a) const;
  CMat right_matrix(const CMat& a) const;
  CVec left_apply(const CMat& a, const CVec& x) const;
  CVec right_apply(const CVec& x, const CMat& a) const;

  /// theta_{x,y} : z -> x <y,z>, as an m x m matrix.
  CMat rank_one(const CVec& x, const CVec& y) const;

  struct CompactSpan {
    std::vector<CMat> basis;      // spanning matrices of K(X)
    int compact_dim = 0;
    int adjointable_dim = 0;
    bool equals_adjointable = false;
  };
  /// span{theta_{e_i,e_j}} plus the comparison against the space of
  /// adjointable operators; in finite dimensions with essential left action
  /// the two coincide, and the flag records that they verifiably do.
  CompactSpan compact_span(double tol = 1e-9) const;

  /// Solves <T*x, y> = <x, Ty> for T* as a linear system; nullopt when the
  /// system is inconsistent at tolerance (T is not adjointable).
  std::optional<CMat> module_adjoint(const CMat& t, double tol = 1e-9) const;

  /// Block Gram matrix [<e_i,e_j>] on C^m (x) C^d; positivity of this matrix
  /// is the positivity axiom in the faithful ambient representation.
  CMat gram() const;

  /// Operator norm of an adjointable T in the localization of the module by
  /// the ambient representation of the coefficients.
  double module_norm(const CMat& t) const;

 private:
  std::shared_ptr<const MatrixStarAlgebra> coeff_;
  int dim_;
  std::vector<std::vector<CMat>> inner_;
  std::vector<CMat> left_;
  std::vector<CMat> right_;
};

/// All correspondence axioms on spanning sets: right-module structure,
/// inner-product sesquilinearity and *-symmetry, Gram positivity and
/// definiteness, phi a unital *-homomorphism by adjointable operators.
ViolationReport validate_correspondence(const Correspondence& x,
                                        Tolerance tol = {});

/// The coefficient algebra as the correspondence over itself (fiber = C^n in
/// basis coordinates, actions by multiplication, <x,y> = x* y).
Correspondence algebra_as_correspondence(
    std::shared_ptr<const MatrixStarAlgebra> a);

}  // namespace zslab

#endif  // ZSLAB_CORRESPONDENCE_HPP_
