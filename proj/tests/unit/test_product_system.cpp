#include "zslab/product_system.hpp"

#include "doctest.h"
#include "zslab/errors.hpp"
#include "zslab/generators.hpp"

using namespace zslab;

namespace {

ZSSystem trivial_over_n(int radius) {
  auto zs = ZSData::trivial(make_nk_semigroup(1), make_trivial_group());
  return trivial_system(zs, radius, 1);
}

std::shared_ptr<const KGraph> two_loop_graph() {
  return KGraph::from_graph({"v"}, {{"x", "v", "v"}, {"y", "v", "v"}});
}

// Single-vertex 2-graph with one loop of each color and the flip square
// absent (only one choice): e.f = f.e.
std::shared_ptr<const KGraph> grid_graph() {
  std::vector<KGraph::Edge> edges = {{"b", 0, 0, 0}, {"r", 0, 0, 1}};
  std::vector<KGraph::Square> squares = {{0, 1, 1, 0}};
  return std::make_shared<KGraph>(2, std::vector<std::string>{"v"}, edges,
                                  squares);
}

CVec e_of(int n, int i) {
  CVec v = CVec::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("trivial system over N validates") {
  ZSSystem s = trivial_over_n(3);
  CHECK(validate_product_system(*s.system).ok());
  CHECK(validate_fibers(*s.system).ok());
}

TEST_CASE("full-shift system over N validates") {
  auto sys = kgraph_system(two_loop_graph(), 3);
  CHECK(validate_product_system(*sys).ok());
  CHECK(validate_fibers(*sys).ok());
  // dim X_n = 2^n.
  for (int n = 0; n <= 3; ++n) {
    CHECK(sys->fiber(Elem::vec({n})).dim() == (1 << n));
  }
}

TEST_CASE("a scaled multiplication map breaks unitarity") {
  ZSSystem s = trivial_over_n(2);
  ProductSystem::Data data;
  data.grading = s.system->grading_ptr();
  data.ball = s.system->ball();
  data.coeff = s.system->coeff_ptr();
  data.e_basis = s.system->e_basis();
  for (const Elem& p : data.ball.elems) {
    data.fibers.emplace(p, s.system->fiber(p));
  }
  for (const Elem& p : data.ball.elems) {
    for (const Elem& q : data.ball.elems) {
      if (!s.system->mult_defined(p, q)) continue;
      CMat m = s.system->mult_matrix(p, q);
      if (p == Elem::vec({1}) && q == Elem::vec({1})) m *= 2.0;
      data.mult.emplace(std::make_pair(p, q), std::move(m));
    }
  }
  ProductSystem tampered(std::move(data));
  ViolationReport report = validate_product_system(tampered);
  CHECK_FALSE(report.ok());
  bool unitarity = false;
  for (const auto& w : report.witnesses()) {
    if (w.tag == "unitarity" && w.witness.find("(1),(1)") != std::string::npos) {
      unitarity = true;
    }
  }
  CHECK(unitarity);
}

TEST_CASE("compact embeddings") {
  ZSSystem s = trivial_over_n(3);
  CMat lambda = zero(1, 1);
  lambda(0, 0) = Complex(2, 1);
  CHECK(max_abs_diff(
            s.system->embed_compact(Elem::vec({1}), Elem::vec({1}), lambda),
            lambda) <= 1e-12);

  auto shift = kgraph_system(two_loop_graph(), 3);
  CMat e11 = unit_matrix(2, 2, 0, 0);
  CMat embedded = shift->embed_compact(Elem::vec({1}), Elem::vec({1}), e11);
  // Degree-2 paths sorted lexicographically pair index 2i+j, so
  // i_1^2(E11) = E11 (x) I_2.
  CHECK(max_abs_diff(embedded, kron(e11, identity(2))) <= 1e-12);

  CMat ident = shift->embed_compact(Elem::vec({1}), Elem::vec({2}),
                                    identity(2));
  CHECK(max_abs_diff(ident, identity(8)) <= 1e-12);
}

TEST_CASE("embeddings act as S on the left factor, definitionally") {
  // i_p^{pq}(S)(xy) = (Sx)y on every basis product.
  auto shift = kgraph_system(two_loop_graph(), 3);
  Elem one = Elem::vec({1});
  Elem two = Elem::vec({2});
  const Correspondence& x1 = shift->fiber(one);
  const int m1 = x1.dim();
  const int m2 = shift->fiber(two).dim();
  for (int si = 0; si < m1; ++si) {
    for (int sj = 0; sj < m1; ++sj) {
      CMat s_op = x1.rank_one(e_of(m1, si), e_of(m1, sj));
      CMat embedded = shift->embed_compact(one, two, s_op);
      for (int i = 0; i < m1; ++i) {
        for (int j = 0; j < m2; ++j) {
          CVec lhs = embedded * shift->multiply(one, two, e_of(m1, i), e_of(m2, j));
          CVec rhs = shift->multiply(one, two, CVec(s_op * e_of(m1, i)),
                                     e_of(m2, j));
          CHECK(max_abs_diff(CMat(lhs), CMat(rhs)) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("embeddings are *-homomorphisms into the bigger fiber") {
  auto shift = kgraph_system(two_loop_graph(), 3);
  Elem one = Elem::vec({1});
  Elem two = Elem::vec({2});
  const Correspondence& x1 = shift->fiber(one);
  const Correspondence& x3 = shift->fiber(Elem::vec({3}));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CMat s = x1.rank_one(e_of(2, i), e_of(2, j));
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          CMat t = x1.rank_one(e_of(2, k), e_of(2, l));
          CMat lhs = shift->embed_compact(one, two, CMat(s * t));
          CMat rhs = shift->embed_compact(one, two, s) *
                     shift->embed_compact(one, two, t);
          CHECK(max_abs_diff(lhs, rhs) <= 1e-9);
        }
      }
      // i(S*) = i(S)* with the module adjoint of the target fiber.
      CMat embedded = shift->embed_compact(one, two, s);
      auto adj = x3.module_adjoint(embedded);
      REQUIRE(adj.has_value());
      CMat s_adj = *x1.module_adjoint(s);
      CHECK(max_abs_diff(*adj, shift->embed_compact(one, two, s_adj)) <= 1e-9);
    }
  }
}

TEST_CASE("embedding through a quotient chain is consistent") {
  auto shift = kgraph_system(two_loop_graph(), 3);
  Elem one = Elem::vec({1});
  Elem two = Elem::vec({2});
  Elem three = Elem::vec({3});
  const Correspondence& x1 = shift->fiber(one);
  CMat s = x1.rank_one(e_of(2, 0), e_of(2, 1));
  CMat direct = shift->embed_into(one, three, s);
  CMat chained = shift->embed_into(two, three, shift->embed_into(one, two, s));
  CHECK(max_abs_diff(direct, chained) <= 1e-9);
}

TEST_CASE("meet on N^2 and on the free monoid") {
  auto zs2 = ZSData::trivial(make_nk_semigroup(2), make_trivial_group());
  ZSSystem s2 = trivial_system(zs2, 2, 1);
  CMat one = identity(1);
  auto met = s2.system->meet(Elem::vec({1, 0}), Elem::vec({0, 1}), one, one);
  REQUIRE(met.has_value());
  CHECK(max_abs_diff(*met, identity(1)) <= 1e-12);

  // p = q collapses to the plain product.
  CMat two = zero(1, 1);
  two(0, 0) = 2.0;
  auto same = s2.system->meet(Elem::vec({1, 0}), Elem::vec({1, 0}), two, two);
  REQUIRE(same.has_value());
  CHECK(max_abs_diff(*same, CMat(two * two)) <= 1e-12);

  auto zsf = ZSData::trivial(make_free_monoid("01"), make_trivial_group());
  ZSSystem sf = trivial_system(zsf, 2, 1);
  CHECK_FALSE(sf.system->meet(Elem::word("0"), Elem::word("1"), one, one)
                  .has_value());
}

TEST_CASE("meet outside the window overflows") {
  auto zs2 = ZSData::trivial(make_nk_semigroup(2), make_trivial_group());
  ZSSystem s2 = trivial_system(zs2, 2, 1);
  CMat one = identity(1);
  CHECK_THROWS_AS(
      s2.system->meet(Elem::vec({2, 0}), Elem::vec({0, 1}), one, one),
      WindowOverflowError);
}

TEST_CASE("compact alignment of the scope systems") {
  auto zs2 = ZSData::trivial(make_nk_semigroup(2), make_trivial_group());
  CHECK(check_compactly_aligned(*trivial_system(zs2, 2, 1).system).ok());

  CHECK(check_compactly_aligned(*kgraph_system(two_loop_graph(), 3)).ok());
  CHECK(check_compactly_aligned(*kgraph_system(grid_graph(), 2)).ok());
}

TEST_CASE("rank-2 grid graph validates") {
  auto g = grid_graph();
  CHECK(g->check_factorization(3).ok());
  auto sys = kgraph_system(g, 2);
  CHECK(validate_product_system(*sys).ok());
  CHECK(validate_fibers(*sys).ok());
}
