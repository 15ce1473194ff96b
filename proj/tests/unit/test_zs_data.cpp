#include "zslab/zs_data.hpp"

#include "doctest.h"
#include "zslab/errors.hpp"
#include "zslab/generators.hpp"

using namespace zslab;

namespace {

// Independent oracle for the adding machine: words are little-endian binary
// integers, a^n adds n modulo 2^len, and the restriction is a^carry.
std::int64_t word_value(const std::string& w) {
  std::int64_t val = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == '1') val += std::int64_t(1) << i;
  }
  return val;
}

std::string oracle_act(std::int64_t n, const std::string& w) {
  const std::int64_t len = static_cast<std::int64_t>(w.size());
  const std::int64_t size = std::int64_t(1) << len;
  std::int64_t val = ((word_value(w) + n) % size + size) % size;
  std::string out;
  for (std::int64_t i = 0; i < len; ++i) {
    out += ((val >> i) & 1) ? '1' : '0';
  }
  return out;
}

std::int64_t oracle_carry(std::int64_t n, const std::string& w) {
  const std::int64_t len = static_cast<std::int64_t>(w.size());
  const std::int64_t size = std::int64_t(1) << len;
  std::int64_t total = word_value(w) + n;
  // Floor division keeps negative carries honest.
  std::int64_t carry = total / size;
  if (total % size < 0) --carry;
  return carry;
}

Elem zpow(std::int64_t n) { return Elem::vec({n}); }

}  // namespace

TEST_CASE("odometer matches the binary-increment oracle") {
  auto zs = odometer_zs(4, 2);
  Ball words = zs->P().ball(4);
  Ball gs = zs->G().ball(3);
  for (const Elem& g : gs.elems) {
    std::int64_t n = g.as_vec()[0];
    for (const Elem& w : words.elems) {
      const std::string& word = w.as_word();
      CHECK(zs->act(g, w) == Elem::word(oracle_act(n, word)));
      CHECK(zs->restriction(g, w) == zpow(oracle_carry(n, word)));
    }
  }
}

TEST_CASE("odometer worked examples") {
  auto zs = odometer_zs();
  Elem a = zpow(1);
  // 2 + 1 = 3: "01" -> "11", no carry.
  CHECK(zs->act(a, Elem::word("01")) == Elem::word("11"));
  CHECK(zs->restriction(a, Elem::word("01")) == zpow(0));
  // 3 + 1 = 4 = 0 mod 4, carry out.
  CHECK(zs->act(a, Elem::word("11")) == Elem::word("00"));
  CHECK(zs->restriction(a, Elem::word("11")) == zpow(1));
  // a^2 . "1" = "1" with restriction a.
  CHECK(zs->act(zpow(2), Elem::word("1")) == Elem::word("1"));
  CHECK(zs->restriction(zpow(2), Elem::word("1")) == zpow(1));
}

TEST_CASE("odometer passes the axiom sweep on the acceptance window") {
  auto zs = odometer_zs();
  ViolationReport report =
      zs_axiom_check(*zs, zs->P().ball(4), zs->G().ball(3));
  CHECK(report.ok());
  CHECK(report.checked() > 0);
  CHECK(report.skipped() > 0);  // word products leaving radius 4
}

TEST_CASE("trivial data satisfies all eight axioms") {
  auto zs = ZSData::trivial(make_nk_semigroup(2), make_cyclic_group(3));
  CHECK(zs_axiom_check(*zs, zs->P().ball(3), zs->G().ball(1)).ok());
}

TEST_CASE("orbit of a length-n word under the odometer has size 2^n") {
  auto zs = odometer_zs();
  Elem a = zpow(1);
  for (int n = 1; n <= 4; ++n) {
    Elem w = Elem::word(std::string(static_cast<std::size_t>(n), '0'));
    Elem cur = w;
    int count = 0;
    do {
      cur = zs->act(a, cur);
      ++count;
    } while (cur != w);
    CHECK(count == (1 << n));
  }
}

TEST_CASE("product semigroup multiplication") {
  auto zs = odometer_zs();
  Elem e_p = zs->P().identity();
  Elem e_g = zs->G().identity();
  Elem a = zpow(1);

  // (e,a)("0",e) = ("1", e): a . "0" = "1" with trivial carry.
  CHECK(zs_multiply(*zs, Elem::pair(e_p, a), Elem::pair(Elem::word("0"), e_g)) ==
        Elem::pair(Elem::word("1"), e_g));
  // (e,a)("11",e) = ("00", a): full carry.
  CHECK(zs_multiply(*zs, Elem::pair(e_p, a), Elem::pair(Elem::word("11"), e_g)) ==
        Elem::pair(Elem::word("00"), a));
  // Plain products at trivial group components.
  CHECK(zs_multiply(*zs, Elem::pair(Elem::word("0"), e_g),
                    Elem::pair(Elem::word("1"), e_g)) ==
        Elem::pair(Elem::word("01"), e_g));

  auto bowtie = make_bowtie_semigroup(zs);
  Elem id = bowtie->identity();
  Ball ball = bowtie_ball(zs->P().ball(2), zs->G().ball(1));
  for (const Elem& x : ball.elems) {
    CHECK(bowtie->multiply(id, x) == x);
    CHECK(bowtie->multiply(x, id) == x);
  }
  // Associativity on a window (consequence of ZS1-ZS8).
  for (const Elem& x : ball.elems) {
    for (const Elem& y : ball.elems) {
      for (const Elem& z : ball.elems) {
        CHECK(bowtie->multiply(bowtie->multiply(x, y), z) ==
              bowtie->multiply(x, bowtie->multiply(y, z)));
      }
    }
  }
}

TEST_CASE("windowed multiplication reports overflow") {
  auto zs = odometer_zs();
  Ball window = zs->P().ball(1);
  Elem e_g = zs->G().identity();
  CHECK_THROWS_AS(zs_multiply_windowed(*zs, Elem::pair(Elem::word("1"), e_g),
                                       Elem::pair(Elem::word("1"), e_g), window),
                  WindowOverflowError);
}

TEST_CASE("product lcm takes the canonical unit component") {
  auto trivial = ZSData::trivial(make_nk_semigroup(2), make_cyclic_group(2));
  Elem g = Elem::index(1);
  Elem e_g = Elem::index(0);
  auto r = zs_lcm(*trivial, Elem::pair(Elem::vec({1, 0}), g),
                  Elem::pair(Elem::vec({0, 1}), g));
  REQUIRE(r.has_value());
  CHECK(*r == Elem::pair(Elem::vec({1, 1}), e_g));

  auto odo = odometer_zs();
  CHECK_FALSE(zs_lcm(*odo, Elem::pair(Elem::word("0"), zpow(1)),
                     Elem::pair(Elem::word("1"), zpow(0)))
                  .has_value());
  // lcm(x, x) = (p, e).
  auto self = zs_lcm(*odo, Elem::pair(Elem::word("01"), zpow(1)),
                     Elem::pair(Elem::word("01"), zpow(1)));
  REQUIRE(self.has_value());
  CHECK(*self == Elem::pair(Elem::word("01"), zpow(0)));
}

TEST_CASE("product lcm generates the ideal intersection on windows") {
  // (r,e) is a common right multiple of x and y, and every common multiple
  // in the window lies in (r,e)(P |><| G).
  auto zs = odometer_zs();
  auto bowtie = make_bowtie_semigroup(zs);
  Ball ball = bowtie_ball(zs->P().ball(2), zs->G().ball(1));
  Ball window = bowtie_ball(zs->P().ball(4), zs->G().ball(2));
  auto divides = [&bowtie](const Elem& x, const Elem& m) {
    return bowtie->left_quotient(x, m).has_value();
  };
  for (const Elem& x : ball.elems) {
    for (const Elem& y : ball.elems) {
      auto r = zs_lcm(*zs, x, y);
      if (!r.has_value()) {
        for (const Elem& m : window.elems) {
          CHECK_FALSE((divides(x, m) && divides(y, m)));
        }
        continue;
      }
      CHECK(divides(x, *r));
      CHECK(divides(y, *r));
      for (const Elem& m : window.elems) {
        if (divides(x, m) && divides(y, m)) {
          CHECK(divides(*r, m));
        }
      }
    }
  }
}

TEST_CASE("bowtie left quotients invert multiplication") {
  auto zs = odometer_zs();
  auto bowtie = make_bowtie_semigroup(zs);
  Ball ball = bowtie_ball(zs->P().ball(2), zs->G().ball(1));
  for (const Elem& x : ball.elems) {
    for (const Elem& y : ball.elems) {
      Elem xy = bowtie->multiply(x, y);
      auto q = bowtie->left_quotient(x, xy);
      REQUIRE(q.has_value());
      CHECK(*q == y);
    }
  }
}

TEST_CASE("single-entry restriction tampering is detected") {
  auto zs = odometer_zs();
  Elem a = zpow(1);
  auto tampered =
      zs->with_overrides({}, {{a, Elem::word("1"), zpow(0)}});
  ViolationReport report =
      zs_axiom_check(*tampered, zs->P().ball(4), zs->G().ball(3));
  CHECK_FALSE(report.ok());
  CHECK(report.count_of("ZS5") > 0);
  CHECK(report.count_of("ZS8") > 0);
  CHECK(report.count_of("ZS6") > 0);  // the carry chain rule breaks too
}

TEST_CASE("every single-entry restriction tamper in the window is caught") {
  auto zs = odometer_zs();
  Elem a = zpow(1);
  Ball words = zs->P().ball(3);
  for (const Elem& w : words.elems) {
    Elem truth = zs->restriction(a, w);
    Elem wrong = truth == zpow(0) ? zpow(1) : zpow(0);
    auto tampered = zs->with_overrides({}, {{a, w, wrong}});
    ViolationReport r = zs_axiom_check(*tampered, words, zs->G().ball(2));
    CHECK_FALSE(r.ok());
  }
}

TEST_CASE("inconsistent generator data is refused") {
  // The adding-machine rules do not factor through Z/2: (g g)|_1 would have
  // to be trivial but the carries compose to g.
  auto fm = make_free_monoid("01");
  auto z2 = make_cyclic_group(2);
  Elem g = Elem::index(1);
  Elem e = Elem::index(0);
  std::vector<LetterRule> rules = {{g, '0', '1', e}, {g, '1', '0', g}};
  CHECK_THROWS_AS(extend_action_from_generators(fm, z2, rules, 3, 1),
                  ExtensionError);

  // Non-permutation letter data cannot define a group action.
  auto z = make_free_abelian_group(1);
  std::vector<LetterRule> collapse = {{zpow(1), '0', '0', zpow(0)},
                                      {zpow(1), '1', '0', zpow(0)}};
  CHECK_THROWS_AS(extend_action_from_generators(fm, z, collapse, 2, 1),
                  ExtensionError);
}

TEST_CASE("first-letter flip extends consistently on Z/2") {
  // g flips the first letter only (trivial restriction everywhere).
  auto fm = make_free_monoid("01");
  auto z2 = make_cyclic_group(2);
  Elem g = Elem::index(1);
  Elem e = Elem::index(0);
  std::vector<LetterRule> rules = {{g, '0', '1', e}, {g, '1', '0', e}};
  auto zs = extend_action_from_generators(fm, z2, rules, 3, 1);
  CHECK(zs->act(g, Elem::word("00")) == Elem::word("10"));
  CHECK(zs->act(g, Elem::word("10")) == Elem::word("00"));
  CHECK(zs_axiom_check(*zs, fm->ball(3), z2->ball(1)).ok());
}

TEST_CASE("coordinate swap datum on N^2 passes the axioms") {
  auto zs = coordinate_swap_zs();
  CHECK(zs_axiom_check(*zs, zs->P().ball(3), zs->G().ball(1)).ok());
  Elem g = Elem::index(1);
  CHECK(zs->act(g, Elem::vec({2, 1})) == Elem::vec({1, 2}));
  CHECK(zs->restriction(g, Elem::vec({2, 1})) == g);
}
