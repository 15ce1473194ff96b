#ifndef ZSLAB_REPRESENTATIONS_HPP_
#define ZSLAB_REPRESENTATIONS_HPP_

#include "zslab/fock.hpp"

namespace zslab {

/// A Toeplitz representation of the base system together with a compatible
/// unitary window. `psi_e_unital` records whether psi_e(1) = 1; when it
/// fails, extracted group images are partial isometries, which is reported
/// rather than normalized away.
struct CovariantPair {
  ToeplitzRep psi;
  UnitaryRep u;
  bool psi_e_unital = true;
  double unital_residual = 0.0;
};

/// (psi, U) -> joint representation of the bowtie system:
/// fiber (p,g) maps x (x) g to psi_p(x) U_g. Refuses (ConstructionError)
/// when the covariance identity fails on the window, unless pre-validated.
ToeplitzRep to_joint_rep(const ToeplitzRep& psi, const UnitaryRep& u,
                         const BowtieSystem& y, bool validate = true,
                         Tolerance tol = {});

/// Joint representation -> (psi, U): psi_p(x) = Psi_(p,e)(x (x) e) and
/// U_g = Psi_(e,g)(1 (x) g).
CovariantPair from_joint_rep(const ToeplitzRep& joint, const BowtieSystem& y);

/// (psi, U) -> representation of the homogeneous product over P:
/// Psi_p(x (x) g) = psi_p(x) U_g, with U given on all of the finite group.
ToeplitzRep to_tilde_rep(const ToeplitzRep& psi, const UnitaryRep& u,
                         const TildeSystem& z, bool validate = true,
                         Tolerance tol = {});

/// Representation of the homogeneous product -> (psi, U).
CovariantPair from_tilde_rep(const ToeplitzRep& rep, const TildeSystem& z);

/// Representation transport: a representation of the homogeneous product
/// becomes a joint representation of the bowtie system through the common
/// covariant pair.
ToeplitzRep transport_rep(const ToeplitzRep& rep, const TildeSystem& z,
                          const BowtieSystem& y, Tolerance tol = {});

/// Reinterpretation of an adjointable operator on X_p as an operator on the
/// bowtie fiber (p,g); the carrier is shared, so the matrix is unchanged.
/// Refuses non-adjointable input.
CMat iota(const BowtieSystem& y, const Elem& p, const Elem& g, const CMat& s,
          double tol = 1e-9);

/// theta-compatibility of iota: iota(theta_{x,y}) is the rank-one operator
/// of x (x) g and y (x) g, module adjoints agree across the two inner
/// products, and iota is isometric for the module operator norms.
ViolationReport check_iota(const BowtieSystem& y, Tolerance tol = {},
                           double exact_tol = 1e-12);

/// Cuntz-Pimsner defect at a fiber: max over the coefficient basis of
/// || psi^(f)(phi_f(a)) - psi_e(a) || on the safe domain. Zero means
/// Cuntz-Pimsner covariant at f.
double cp_defect(const ToeplitzRep& rep, const Elem& fiber,
                 double tol = 1e-9);

/// Nica covariance residual || psi^(p)(S) psi^(q)(T) - psi^(r)(S v T) || on
/// the safe slots, or || psi^(p)(S) psi^(q)(T) || when pP cap qP is empty.
double nica_residual(const ToeplitzRep& rep, const Elem& p, const Elem& q,
                     const CMat& s, const CMat& t, double tol = 1e-9);

/// Joint and extracted representations assign equal compact images
/// (Psi^(p,g) after iota equals psi^(p)) and equal Cuntz-Pimsner defects.
ViolationReport check_cp_equivalence(const ToeplitzRep& joint,
                                     const CovariantPair& pair,
                                     const BowtieSystem& y,
                                     Tolerance tol = {});

/// (a) the embedding squares i after iota = iota after i hold entrywise;
/// (b) Nica residuals agree between the joint representation over the
/// product semigroup and the extracted one over P on matched tuples.
ViolationReport check_nica_equivalence(const ToeplitzRep& joint,
                                       const CovariantPair& pair,
                                       const BowtieSystem& y,
                                       Tolerance tol = {},
                                       double exact_tol = 1e-12);

}  // namespace zslab

#endif  // ZSLAB_REPRESENTATIONS_HPP_
