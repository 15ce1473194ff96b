#ifndef ZSLAB_BOWTIE_HPP_
#define ZSLAB_BOWTIE_HPP_

#include <memory>

#include "zslab/crossed_product.hpp"
#include "zslab/zs_action.hpp"

namespace zslab {

/// The product system Y over P |><| G built from a Zappa-Szep system:
/// fibers Y_(p,g) reuse the X_p carrier with the inner product twisted by
/// beta_{g^{-1}} and the right action twisted by beta_g; multiplication
/// sends (x (x) g, y (x) h) to x beta_g(y) (x) g|_q h.
struct BowtieSystem {
  std::shared_ptr<const ProductSystem> system;  // graded by P |><| G
  ZSSystem base;

  /// Components of a pair fiber index.
  static const Elem& p_of(const Elem& pg) { return pg.first(); }
  static const Elem& g_of(const Elem& pg) { return pg.second(); }
};

/// Refuses construction (ConstructionError with the report
/// summary) when the action axioms fail on the window, unless
/// `assume_valid` marks the action as already validated by the caller.
BowtieSystem build_bowtie(const ZSSystem& s, bool assume_valid = false);

/// The homogeneous product system Z over P with coefficient algebra
/// A x| G: fibers Z_p = X_p (x) C[G] with
///   <x(x)g, y(x)h> = beta_{g^{-1}}(<x,y>) u_{g^{-1}h},
///   (a u_h).(x(x)g) = a beta_h(x) (x) h|_p g,
///   (x(x)g).(a u_h) = x beta_g(a) (x) gh,
///   mult: (x(x)g, y(x)h) -> x beta_g(y) (x) g|_q h,
/// and Z_e identified with the crossed product via a(x)g -> a u_g.
struct TildeSystem {
  std::shared_ptr<const ProductSystem> system;  // graded by P
  std::shared_ptr<const CrossedProduct> crossed;
  ZSSystem base;

  int fiber_index(const Elem& p, int vec_index, int group_index) const;
};

/// Requires a homogeneous system and finite G; refused otherwise.
TildeSystem build_tilde_bowtie(const ZSSystem& s, bool assume_valid = false);

}  // namespace zslab

#endif  // ZSLAB_BOWTIE_HPP_
