#include "zslab/zs_action.hpp"

#include "doctest.h"
#include "test_helpers.hpp"
#include "zslab/errors.hpp"
#include "zslab/generators.hpp"

using namespace zslab;

TEST_CASE("trivial action on the trivial system validates") {
  auto zs = ZSData::trivial(make_nk_semigroup(1), make_cyclic_group(2));
  ZSSystem s = trivial_system(zs, 3, 1);
  CHECK(validate_zs_action(s).ok());
  CHECK(is_homogeneous(s));
}

TEST_CASE("odometer action on the trivial system validates") {
  ZSSystem s = trivial_system(odometer_zs(), 3, 2);
  ViolationReport report = validate_zs_action(s);
  CHECK(report.ok());
  CHECK(report.skipped() > 0);
  CHECK_FALSE(is_homogeneous(s));  // a . "0" = "1"
}

TEST_CASE("self-similar loop swap validates and is homogeneous") {
  ZSSystem s = selfsimilar_beta(testing::loop_swap_action(), 3, 1);
  CHECK(validate_zs_action(s).ok());
  CHECK(is_homogeneous(s));

  ZSSystem deep = selfsimilar_beta(testing::loop_swap_all_action(), 3, 1);
  CHECK(validate_zs_action(deep).ok());
  CHECK(is_homogeneous(deep));
}

TEST_CASE("beta moves basis vectors along the path action") {
  auto action = testing::loop_swap_all_action();
  ZSSystem s = selfsimilar_beta(action, 3, 1);
  Elem g = Elem::index(1);
  Elem two = Elem::vec({2});
  const auto& graph = action->graph();
  const auto& morphs = graph.morphisms({2});
  for (std::size_t i = 0; i < morphs.size(); ++i) {
    CVec x = CVec::Zero(static_cast<int>(morphs.size()));
    x(static_cast<int>(i)) = 1.0;
    CVec image = apply_beta(s, g, two, x);
    int expected = graph.index_of(action->act_path(g, morphs[i]));
    CHECK(std::abs(image(expected) - Complex(1, 0)) <= 1e-12);
  }
}

TEST_CASE("beta with a trivialized restriction table fails (A5)") {
  ZSSystem good = selfsimilar_beta(testing::loop_swap_all_action(), 3, 1);
  // Keep beta but replace the restriction with g|_p = e for p != e.
  ZSSystem broken = good;
  auto group = good.zs->G_ptr();
  broken.zs = std::make_shared<ZSData>(
      good.zs->P_ptr(), group, [](const Elem&, const Elem& p) { return p; },
      [group](const Elem& g, const Elem& p) {
        bool at_identity = true;
        for (auto c : p.as_vec()) at_identity = at_identity && c == 0;
        return at_identity ? g : group->identity();
      },
      "table");
  ViolationReport report = validate_zs_action(broken);
  CHECK_FALSE(report.ok());
  bool a5 = false;
  for (const auto& w : report.witnesses()) {
    if (w.tag == "A5") a5 = true;
  }
  CHECK(a5);
}

TEST_CASE("scaling one beta matrix is caught") {
  ZSSystem s = selfsimilar_beta(testing::loop_swap_action(), 3, 1);
  ZSSystem tampered = s;
  tampered.beta =
      s.beta->with_scale_override(Elem::index(1), Elem::vec({1}), 2.0);
  ViolationReport report = validate_zs_action(tampered);
  CHECK_FALSE(report.ok());
  bool a2_or_a6 = false;
  for (const auto& w : report.witnesses()) {
    if (w.tag == "A2" || w.tag == "A6" || w.tag == "A5") a2_or_a6 = true;
  }
  CHECK(a2_or_a6);
}

TEST_CASE("scaling beta on the identity fiber violates (A4)") {
  ZSSystem s = trivial_system(
      ZSData::trivial(make_nk_semigroup(1), make_cyclic_group(2)), 3, 1);
  ZSSystem tampered = s;
  tampered.beta = s.beta->with_scale_override(Elem::index(1), Elem::vec({0}),
                                              Complex(2.0, 0.0));
  ViolationReport report = validate_zs_action(tampered);
  CHECK_FALSE(report.ok());
  bool a4 = false;
  for (const auto& w : report.witnesses()) {
    if (w.tag == "A4") a4 = true;
  }
  CHECK(a4);
}

TEST_CASE("beta inverse comes from the group inverse") {
  ZSSystem s = trivial_system(odometer_zs(), 3, 2);
  for (const Elem& g : s.gball.elems) {
    Elem g_inv = s.zs->G().inverse(g);
    for (const Elem& p : s.system->ball().elems) {
      Elem gp = s.zs->act(g, p);
      if (!s.system->ball().contains(gp)) continue;
      CMat round_trip = s.beta_matrix(g_inv, gp) * s.beta_matrix(g, p);
      CHECK(max_abs_diff(round_trip, identity(s.system->fiber(p).dim())) <=
            1e-12);
    }
  }
}

TEST_CASE("apply_beta rejects out-of-window fibers") {
  ZSSystem s = trivial_system(odometer_zs(), 2, 1);
  CVec x = CVec::Ones(1);
  CHECK_THROWS_AS(apply_beta(s, Elem::vec({1}), Elem::word("111"), x),
                  WindowOverflowError);
  CHECK_NOTHROW(apply_beta(s, Elem::vec({1}), Elem::word("11"), x));
}

TEST_CASE("diagonal pair system validates") {
  ZSSystem s = diagonal_pair_system(3);
  CHECK(validate_zs_action(s).ok());
  CHECK(is_homogeneous(s));
  CHECK(validate_product_system(*s.system).ok());
  CHECK(validate_fibers(*s.system).ok());
}
