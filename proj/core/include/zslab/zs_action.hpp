#ifndef ZSLAB_ZS_ACTION_HPP_
#define ZSLAB_ZS_ACTION_HPP_

#include <functional>
#include <map>
#include <memory>

#include "zslab/product_system.hpp"
#include "zslab/zs_data.hpp"

namespace zslab {

/// The family beta_g^p : X_p -> X_{g.p} of C-linear maps, stored as an
/// evaluable family of matrices with memoization over the window (same
/// single-writer caveat as ZSData).
class ZSAction {
 public:
  /// fn(g, p) returns the matrix of beta_g^p (dim X_{g.p} rows, dim X_p cols).
  using MapFn = std::function<CMat(const Elem& g, const Elem& p)>;

  explicit ZSAction(MapFn fn) : fn_(std::move(fn)) {}

  const CMat& matrix(const Elem& g, const Elem& p) const;

  /// Single-entry fault injection: beta_g^p multiplied by `factor`.
  std::shared_ptr<const ZSAction> with_scale_override(const Elem& g,
                                                      const Elem& p,
                                                      Complex factor) const;

 private:
  MapFn fn_;
  mutable std::map<std::pair<Elem, Elem>, CMat> memo_;
};

/// A product system, Zappa-Szep data on its grading, and an action beta.
/// gball is the group window every "for all g" check quantifies over.
struct ZSSystem {
  std::shared_ptr<const ProductSystem> system;
  std::shared_ptr<const ZSData> zs;
  std::shared_ptr<const ZSAction> beta;
  Ball gball;

  const CMat& beta_matrix(const Elem& g, const Elem& p) const {
    return beta->matrix(g, p);
  }
  /// beta_g on the identity fiber, conjugated to an algebra map through the
  /// ambient identification of X_e.
  AlgebraMap beta_on_algebra(const Elem& g) const;
  /// Ambient image beta_g(a) for a in the coefficient algebra.
  CMat beta_ambient(const Elem& g, const CMat& a) const;
};

/// beta_g^p(x); throws WindowOverflowError if p or g.p leaves the window.
CVec apply_beta(const ZSSystem& s, const Elem& g, const Elem& p,
                const CVec& x);

/// Axioms (A1)-(A6) over spanning vectors and the configured windows, one
/// report tag per axiom; out-of-window intermediates are counted skipped.
ViolationReport validate_zs_action(const ZSSystem& s, Tolerance tol = {});

/// g.p = p for every (g, p) in the windows (window-qualified).
bool is_homogeneous(const ZSSystem& s);

}  // namespace zslab

#endif  // ZSLAB_ZS_ACTION_HPP_
