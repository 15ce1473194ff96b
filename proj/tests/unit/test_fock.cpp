#include "zslab/fock.hpp"

#include "doctest.h"
#include "test_helpers.hpp"
#include "zslab/errors.hpp"
#include "zslab/generators.hpp"

using namespace zslab;

namespace {

ZSSystem trivial_over_n(int radius) {
  auto zs = ZSData::trivial(make_nk_semigroup(1), make_trivial_group());
  return trivial_system(zs, radius, 1);
}

}  // namespace

TEST_CASE("truncated Fock of the trivial N system is the finite shift") {
  ZSSystem s = trivial_over_n(3);
  ToeplitzRep rep = build_fock_rep(s.system, 3);
  CHECK(rep.space_dim() == 4);
  CVec one = CVec::Ones(1);
  CMat l1 = rep.apply(Elem::vec({1}), one);
  CMat shift = zero(4, 4);
  shift(1, 0) = 1.0;
  shift(2, 1) = 1.0;
  shift(3, 2) = 1.0;
  CHECK(max_abs_diff(l1, shift) == 0.0);

  CMat l0 = rep.apply(Elem::vec({0}), one);
  CHECK(max_abs_diff(l0, identity(4)) == 0.0);
}

TEST_CASE("Fock representations satisfy the Toeplitz axioms on safe slots") {
  ZSSystem trivial = trivial_over_n(3);
  CHECK(validate_toeplitz(build_fock_rep(trivial.system, 3)).ok());

  ZSSystem swap2 = diagonal_pair_system(3);
  CHECK(validate_toeplitz(build_fock_rep(swap2.system, 3)).ok());

  ZSSystem loops = selfsimilar_beta(testing::loop_swap_all_action(), 3, 1);
  CHECK(validate_toeplitz(build_fock_rep(loops.system, 3)).ok());

  ZSSystem odo = trivial_system(odometer_zs(), 3, 2);
  CHECK(validate_toeplitz(build_fock_rep(odo.system, 3)).ok());
}

TEST_CASE("identity-fiber images act block-diagonally") {
  ZSSystem swap2 = diagonal_pair_system(2);
  ToeplitzRep rep = build_fock_rep(swap2.system, 2);
  CMat a = unit_matrix(2, 2, 0, 0);
  CMat image = rep.apply_e_ambient(a);
  // Block diagonal action of phi_s(a) on every slot.
  const FockSpace& fock = *rep.fock();
  for (const Elem& slot : fock.slots.elems) {
    int off = fock.offset_of(slot);
    CHECK(max_abs_diff(CMat(image.block(off, off, 2, 2)),
                       swap2.system->fiber(slot).left_matrix(a)) <= 1e-12);
  }
}

TEST_CASE("Fock unitaries permute slots by the action") {
  ZSSystem odo = trivial_system(odometer_zs(), 2, 2);
  UnitaryRep u = build_fock_unitary(odo, 2);
  CHECK(u.validate().ok());

  // beta~_a permutes the 7 slots by the binary increment.
  Elem a = Elem::vec({1});
  const CMat& ua = u.at(a);
  const FockSpace fock = *make_fock_space(*odo.system, 2);
  for (const Elem& slot : fock.slots.elems) {
    Elem target = odo.zs->act(a, slot);
    CHECK(std::abs(ua(fock.offset_of(target), fock.offset_of(slot)) -
                   Complex(1, 0)) <= 1e-12);
  }
  CHECK(max_abs_diff(u.at(Elem::vec({0})), identity(u.space_dim)) <= 1e-12);
}

TEST_CASE("Fock pairs satisfy the covariance identity") {
  ZSSystem odo = trivial_system(odometer_zs(), 3, 2);
  ToeplitzRep psi = build_fock_rep(odo.system, 3);
  UnitaryRep u = build_fock_unitary(odo, 3);
  CHECK(validate_covariance(psi, u, odo).ok());

  ZSSystem swap2 = diagonal_pair_system(3);
  CHECK(validate_covariance(build_fock_rep(swap2.system, 3),
                            build_fock_unitary(swap2, 3), swap2)
            .ok());

  ZSSystem loops = selfsimilar_beta(testing::loop_swap_all_action(), 3, 1);
  CHECK(validate_covariance(build_fock_rep(loops.system, 3),
                            build_fock_unitary(loops, 3), loops)
            .ok());

  ZSSystem nk_swap = trivial_system(coordinate_swap_zs(), 2, 1);
  CHECK(validate_covariance(build_fock_rep(nk_swap.system, 2),
                            build_fock_unitary(nk_swap, 2), nk_swap)
            .ok());
}

TEST_CASE("replacing U by the identity breaks covariance") {
  ZSSystem odo = trivial_system(odometer_zs(), 3, 2);
  ToeplitzRep psi = build_fock_rep(odo.system, 3);
  UnitaryRep u = build_fock_unitary(odo, 3);
  for (auto& [g, m] : u.mats) {
    m = identity(u.space_dim);
  }
  ViolationReport report = validate_covariance(psi, u, odo);
  CHECK_FALSE(report.ok());
}

TEST_CASE("non-invariant Fock balls are refused") {
  // A table action on N that swaps 1 and 2 leaves the radius-1 ball.
  auto n1 = make_nk_semigroup(1);
  auto z2 = make_cyclic_group(2);
  Elem g = Elem::index(1);
  auto zs = std::make_shared<ZSData>(
      n1, z2,
      [g](const Elem& h, const Elem& p) {
        if (h != g) return p;
        auto v = p.as_vec()[0];
        if (v == 1) return Elem::vec({2});
        if (v == 2) return Elem::vec({1});
        return p;
      },
      [](const Elem& h, const Elem&) { return h; }, "table");
  ZSSystem s = trivial_system(zs, 3, 1);
  CHECK_THROWS_AS(build_fock_unitary(s, 1), ConstructionError);
  CHECK_NOTHROW(build_fock_unitary(s, 2));
}

TEST_CASE("psi_hat reproduces rank-one products") {
  ZSSystem swap2 = diagonal_pair_system(3);
  ToeplitzRep rep = build_fock_rep(swap2.system, 3);
  Elem one = Elem::vec({1});
  const Correspondence& x1 = swap2.system->fiber(one);
  for (int i = 0; i < 2; ++i) {
    CVec ei = CVec::Zero(2);
    ei(i) = 1.0;
    for (int j = 0; j < 2; ++j) {
      CVec ej = CVec::Zero(2);
      ej(j) = 1.0;
      CMat expected =
          rep.apply(one, ei) * rep.apply(one, ej).adjoint();
      CHECK(max_abs_diff(rep.psi_hat(one, x1.rank_one(ei, ej)), expected) <=
            1e-9);
    }
  }
}
