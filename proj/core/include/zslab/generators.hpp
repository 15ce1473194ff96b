#ifndef ZSLAB_GENERATORS_HPP_
#define ZSLAB_GENERATORS_HPP_

#include <memory>

#include "zslab/bowtie.hpp"
#include "zslab/kgraph.hpp"

namespace zslab {

/// Which vertex the k-graph inner product evaluates at. The standard module
/// structure uses the source; the range variant is kept so the alternative
/// reading of the inner-product formula can be diagnosed rather than
/// guessed at.
enum class VertexConvention { kSource, kRange };

/// One-dimensional fibers C v_p with v_p v_q = v_pq and
/// beta_g(v_p) = v_{g.p}.
ZSSystem trivial_system(std::shared_ptr<const ZSData> zs, int radius_p,
                        int radius_g);

/// The C(vertices)-product system over N^k of a k-graph: X_p has basis the
/// degree-p morphisms, chi_mu chi_nu = [s(mu) = r(nu)] chi_{mu nu},
/// <chi_mu, chi_nu> = [mu = nu] at the convention vertex. Throws when a
/// ball degree has no morphisms (complete the graph or shrink the radius).
std::shared_ptr<const ProductSystem> kgraph_system(
    std::shared_ptr<const KGraph> graph, int radius,
    VertexConvention convention = VertexConvention::kSource);

/// The homogeneous Zappa-Szep system of a self-similar action:
/// g.p = p on N^k, g|_p = g|_mu for any degree-p morphism (requires the
/// restriction to be degree-uniform; refused with a witness otherwise),
/// beta_g(chi_mu) = chi_{g.mu}.
ZSSystem selfsimilar_beta(std::shared_ptr<const SelfSimilarAction> action,
                          int radius_p, int radius_g,
                          VertexConvention convention = VertexConvention::kSource);

/// The crossed-coefficient product system of a self-similar action, built
/// directly from its defining formulas:
///   (chi_mu u_g)(chi_v u_h)   = [s(mu) = g.v] chi_mu u_{gh}
///   (chi_v u_h)(chi_mu u_g)   = [v = h.r(mu)] chi_{h.mu} u_{h|_mu g}
///   <chi_mu u_g, chi_nu u_h>  = u_{g^{-1}} <chi_mu, chi_nu> u_h
///   (chi_mu u_g)(chi_nu u_h)  = [s(mu) = r(g.nu)] chi_{mu(g.nu)} u_{g|_nu h}
/// It coincides with build_tilde_bowtie of selfsimilar_beta under the
/// basis identification chi_mu (x) u_g <-> chi_mu (x) g.
TildeSystem calE_system(std::shared_ptr<const SelfSimilarAction> action,
                        int radius_p);

/// The binary adding machine: FreeMonoid{0,1} with Z = <a>,
/// a.(0w) = 1w with a|_0 = e and a.(1w) = 0(a.w) with a|_1 = a.
std::shared_ptr<const ZSData> odometer_zs(int check_radius_p = 4,
                                          int check_radius_g = 2);

/// N^2 with Z/2 swapping the coordinates and trivial restriction; a genuine
/// non-homogeneous Zappa-Szep datum on a right LCM semigroup.
std::shared_ptr<const ZSData> coordinate_swap_zs();

/// Fibers C^2 over N with coordinatewise structure over the diagonal algebra
/// and Z/2 acting by the coordinate swap in every fiber; the smallest
/// matrix-valued homogeneous system with noncommutative crossed product.
ZSSystem diagonal_pair_system(int radius_p);

/// Entrywise comparison of two product systems on the same ball: fibers,
/// structure tensors, multiplication maps and the identity realization.
ViolationReport compare_product_systems(const ProductSystem& a,
                                        const ProductSystem& b,
                                        double exact_tol = 1e-12);

}  // namespace zslab

#endif  // ZSLAB_GENERATORS_HPP_
