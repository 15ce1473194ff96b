#ifndef ZSLAB_FOCK_HPP_
#define ZSLAB_FOCK_HPP_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "zslab/bowtie.hpp"

namespace zslab {

/// Slot layout of a truncated Fock space: the direct sum of the fibers over
/// a finite ball, with offsets into the ambient coordinate space.
struct FockSpace {
  Ball slots;
  std::map<Elem, int> offset;
  std::map<Elem, int> fiber_dim;
  int total = 0;

  bool has(const Elem& s) const { return offset.count(s) != 0; }
  int offset_of(const Elem& s) const { return offset.at(s); }
  int dim_of(const Elem& s) const { return fiber_dim.at(s); }
  /// Orthogonal projection onto the listed slots.
  CMat projector(const std::set<Elem>& safe) const;
};

std::shared_ptr<const FockSpace> make_fock_space(const ProductSystem& x,
                                                 int fock_radius);

/// A fiber-wise linear representation by N x N matrices. `maps[p][i]` is the
/// image of the i-th basis vector of X_p. When built from a truncated Fock
/// space, slot_action/slot_preimage describe how fibers move slots; every
/// axiom check restricts itself to the slots the truncation keeps exact
/// (the safe domain).
class ToeplitzRep {
 public:
  using SlotFn =
      std::function<std::optional<Elem>(const Elem& fiber, const Elem& slot)>;

  ToeplitzRep(std::shared_ptr<const ProductSystem> system, int space_dim,
              std::map<Elem, std::vector<CMat>> maps,
              std::shared_ptr<const FockSpace> fock = nullptr,
              SlotFn slot_action = nullptr, SlotFn slot_preimage = nullptr);

  const ProductSystem& system() const { return *system_; }
  std::shared_ptr<const ProductSystem> system_ptr() const { return system_; }
  int space_dim() const { return space_dim_; }
  std::shared_ptr<const FockSpace> fock() const { return fock_; }
  bool has_fiber(const Elem& p) const { return maps_.count(p) != 0; }
  const std::vector<CMat>& fiber_maps(const Elem& p) const;
  const std::map<Elem, std::vector<CMat>>& maps() const { return maps_; }

  /// psi_p(x) for a coordinate vector x.
  CMat apply(const Elem& p, const CVec& x) const;
  /// psi_e of an ambient coefficient element.
  CMat apply_e_ambient(const CMat& a) const;
  /// psi^(p)(S) with psi^(p)(theta_{x,y}) = psi_p(x) psi_p(y)^*; S is
  /// decomposed in the rank-one span of the fiber (least squares, minimum
  /// norm); throws DomainError when S is outside the span at tolerance.
  CMat psi_hat(const Elem& p, const CMat& s, double tol = 1e-9) const;

  /// Safe projector for the inner-product identity at p (slots s with ps
  /// inside the Fock ball); identity when the rep has no Fock structure.
  CMat safe_identity(const Elem& p) const;
  /// Safe projector for multiplicativity at (p,q): slots s with qs and
  /// p(qs) both inside the ball.
  CMat safe_mult(const Elem& p, const Elem& q) const;
  /// Safe projector for the Cuntz-Pimsner identity at p: slots that are
  /// either not divisible by p or whose quotient stays in the ball.
  CMat safe_cp(const Elem& p) const;
  /// Safe projector for the Nica identity: slots moved inside the ball by
  /// every listed fiber.
  CMat safe_all_of(const std::vector<Elem>& fibers) const;

  std::optional<Elem> slot_action(const Elem& fiber, const Elem& slot) const;

 private:
  struct RankOneSolver {
    CMat stacked;  // vectorized rank-one basis
    Eigen::CompleteOrthogonalDecomposition<CMat> cod;
    CMat products;  // vectorized psi(e_i) psi(e_j)^*, one column per (i,j)
  };
  const RankOneSolver& rank_one_solver(const Elem& p) const;

  std::shared_ptr<const ProductSystem> system_;
  int space_dim_;
  std::map<Elem, std::vector<CMat>> maps_;
  std::shared_ptr<const FockSpace> fock_;
  SlotFn slot_action_;
  SlotFn slot_preimage_;
  mutable std::map<Elem, RankOneSolver> rank_one_cache_;
};

/// A window of group unitaries on the same space.
struct UnitaryRep {
  std::shared_ptr<const Group> group;
  Ball domain;
  std::map<Elem, CMat> mats;
  int space_dim = 0;

  bool has(const Elem& g) const { return mats.count(g) != 0; }
  const CMat& at(const Elem& g) const;
  /// U_e = 1, unitarity, and multiplicativity whenever gh stays in the
  /// window.
  ViolationReport validate(Tolerance tol = {}) const;
};

/// The truncated Fock representation: L_p(x) maps slot s to slot ps through
/// the multiplication maps, zero where the ball is left.
ToeplitzRep build_fock_rep(std::shared_ptr<const ProductSystem> x,
                           int fock_radius);

/// The slot permutation-with-twist unitaries of the action on the Fock
/// space; refuses when the ball is not invariant under the group window.
UnitaryRep build_fock_unitary(const ZSSystem& s, int fock_radius);

/// Toeplitz axioms on the safe domain: psi_e a *-homomorphism,
/// multiplicativity, and the inner-product identity.
ViolationReport validate_toeplitz(const ToeplitzRep& rep, Tolerance tol = {});

/// The covariance identity U_g psi_p(x) = psi_{g.p}(beta_g(x)) U_{g|_p} on
/// the mutual safe domain.
ViolationReport validate_covariance(const ToeplitzRep& psi, const UnitaryRep& u,
                                    const ZSSystem& s, Tolerance tol = {});

}  // namespace zslab

#endif  // ZSLAB_FOCK_HPP_
