#include "zslab/semigroup.hpp"

#include <algorithm>
#include <sstream>

#include "zslab/errors.hpp"

namespace zslab {

Ball Ball::of(std::vector<Elem> elems, int radius, bool saturated) {
  Ball b;
  b.elems = std::move(elems);
  b.radius = radius;
  b.saturated = saturated;
  b.members.insert(b.elems.begin(), b.elems.end());
  return b;
}

std::optional<Elem> Semigroup::lcm(const Elem&, const Elem&) const {
  throw UnsupportedStructureError(describe() +
                                  ": right LCM structure not available");
}

namespace {

class NkSemigroup final : public Semigroup {
 public:
  explicit NkSemigroup(int k) : k_(k) {
    if (k < 1) throw ConstructionError("N^k requires k >= 1");
  }

  Elem identity() const override {
    return Elem::vec(Elem::IntVec(static_cast<std::size_t>(k_), 0));
  }

  Elem multiply(const Elem& p, const Elem& q) const override {
    const auto& a = check(p);
    const auto& b = check(q);
    Elem::IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return Elem::vec(std::move(out));
  }

  int length(const Elem& p) const override {
    const auto& a = check(p);
    std::int64_t s = 0;
    for (auto v : a) s += v;
    return static_cast<int>(s);
  }

  Ball ball(int radius) const override {
    std::vector<Elem> out;
    Elem::IntVec cur(static_cast<std::size_t>(k_), 0);
    for (int deg = 0; deg <= radius; ++deg) enumerate(0, deg, cur, out);
    return Ball::of(std::move(out), radius);
  }

  bool right_lcm_available() const override { return true; }

  std::optional<Elem> lcm(const Elem& p, const Elem& q) const override {
    const auto& a = check(p);
    const auto& b = check(q);
    Elem::IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
    return Elem::vec(std::move(out));
  }

  std::optional<Elem> left_quotient(const Elem& p,
                                    const Elem& r) const override {
    const auto& a = check(p);
    const auto& b = check(r);
    Elem::IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (b[i] < a[i]) return std::nullopt;
      out[i] = b[i] - a[i];
    }
    return Elem::vec(std::move(out));
  }

  std::string describe() const override {
    return "N^" + std::to_string(k_);
  }

 private:
  const Elem::IntVec& check(const Elem& e) const {
    const auto& v = e.as_vec();
    if (static_cast<int>(v.size()) != k_) {
      throw DomainError("tuple rank mismatch in " + describe());
    }
    for (auto x : v) {
      if (x < 0) throw DomainError("negative entry in N^k element");
    }
    return v;
  }

  // Degree-graded, then lexicographic.
  void enumerate(int pos, int remaining, Elem::IntVec& cur,
                 std::vector<Elem>& out) const {
    if (pos == k_ - 1) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(Elem::vec(cur));
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      enumerate(pos + 1, remaining - v, cur, out);
    }
  }

  int k_;
};

class FreeMonoid final : public Semigroup {
 public:
  explicit FreeMonoid(std::string alphabet) : alphabet_(std::move(alphabet)) {
    if (alphabet_.empty()) throw ConstructionError("empty alphabet");
    std::string sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw ConstructionError("alphabet has repeated letters");
    }
  }

  Elem identity() const override { return Elem::word(""); }

  Elem multiply(const Elem& p, const Elem& q) const override {
    return Elem::word(check(p) + check(q));
  }

  int length(const Elem& p) const override {
    return static_cast<int>(check(p).size());
  }

  Ball ball(int radius) const override {
    std::vector<Elem> out;
    std::vector<std::string> level = {""};
    out.push_back(Elem::word(""));
    for (int len = 1; len <= radius; ++len) {
      std::vector<std::string> next;
      for (const auto& w : level) {
        for (char c : alphabet_) {
          next.push_back(w + c);
        }
      }
      for (const auto& w : next) out.push_back(Elem::word(w));
      level = std::move(next);
    }
    return Ball::of(std::move(out), radius);
  }

  bool right_lcm_available() const override { return true; }

  // pP cap qP is nonempty iff one word is a prefix of the other, in which
  // case the longer word generates the intersection.
  std::optional<Elem> lcm(const Elem& p, const Elem& q) const override {
    const auto& a = check(p);
    const auto& b = check(q);
    const auto& shorter = a.size() <= b.size() ? a : b;
    const auto& longer = a.size() <= b.size() ? b : a;
    if (longer.compare(0, shorter.size(), shorter) != 0) return std::nullopt;
    return Elem::word(longer);
  }

  std::optional<Elem> left_quotient(const Elem& p,
                                    const Elem& r) const override {
    const auto& a = check(p);
    const auto& b = check(r);
    if (b.size() < a.size() || b.compare(0, a.size(), a) != 0) {
      return std::nullopt;
    }
    return Elem::word(b.substr(a.size()));
  }

  std::string describe() const override {
    return "FreeMonoid{" + alphabet_ + "}";
  }

 private:
  const std::string& check(const Elem& e) const {
    const auto& w = e.as_word();
    for (char c : w) {
      if (alphabet_.find(c) == std::string::npos) {
        throw DomainError(std::string("letter '") + c + "' not in alphabet");
      }
    }
    return w;
  }

  std::string alphabet_;
};

class TableSemigroup final : public Semigroup {
 public:
  TableSemigroup(std::vector<std::vector<int>> table, int identity,
                 std::vector<std::string> names)
      : table_(std::move(table)), id_(identity), names_(std::move(names)) {
    const int n = static_cast<int>(table_.size());
    if (n == 0) throw ConstructionError("empty multiplication table");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n) {
        throw ConstructionError("multiplication table is not square");
      }
      for (int v : row) {
        if (v < 0 || v >= n) {
          throw ConstructionError("table entry out of range");
        }
      }
    }
    if (id_ < 0 || id_ >= n) throw ConstructionError("identity index invalid");
    for (int i = 0; i < n; ++i) {
      if (table_[static_cast<std::size_t>(id_)][static_cast<std::size_t>(i)] != i ||
          table_[static_cast<std::size_t>(i)][static_cast<std::size_t>(id_)] != i) {
        throw ConstructionError("designated identity is not two-sided");
      }
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          if (at(at(a, b), c) != at(a, at(b, c))) {
            throw ConstructionError("table is not associative at (" +
                                    name(a) + "," + name(b) + "," + name(c) +
                                    ")");
          }
        }
      }
    }
    if (!names_.empty() && static_cast<int>(names_.size()) != n) {
      throw ConstructionError("name list size mismatch");
    }
  }

  Elem identity() const override { return Elem::index(id_); }

  Elem multiply(const Elem& p, const Elem& q) const override {
    return Elem::index(at(check(p), check(q)));
  }

  int length(const Elem& p) const override { return check(p) == id_ ? 0 : 1; }

  Ball ball(int radius) const override {
    std::vector<Elem> out;
    out.push_back(Elem::index(id_));
    if (radius >= 1) {
      for (int i = 0; i < size(); ++i) {
        if (i != id_) out.push_back(Elem::index(i));
      }
    }
    return Ball::of(std::move(out), radius, /*saturated=*/radius >= 1);
  }

  bool right_lcm_available() const override { return true; }

  // Exhaustive over the finite table; canonical representative is the
  // lowest-index generator of the intersection ideal.
  std::optional<Elem> lcm(const Elem& p, const Elem& q) const override {
    std::set<int> inter;
    for (int a = 0; a < size(); ++a) {
      for (int b = 0; b < size(); ++b) {
        if (at(check(p), a) == at(check(q), b)) inter.insert(at(check(p), a));
      }
    }
    if (inter.empty()) return std::nullopt;
    for (int r : inter) {
      std::set<int> rP;
      for (int a = 0; a < size(); ++a) rP.insert(at(r, a));
      if (rP == inter) return Elem::index(r);
    }
    throw UnsupportedStructureError(
        describe() + ": intersection " + name(check(p)) + "P cap " +
        name(check(q)) + "P is not a principal right ideal");
  }

  std::optional<Elem> left_quotient(const Elem& p,
                                    const Elem& r) const override {
    for (int q = 0; q < size(); ++q) {
      if (at(check(p), q) == check(r)) return Elem::index(q);
    }
    return std::nullopt;
  }

  std::string describe() const override {
    return "Table[" + std::to_string(size()) + "]";
  }

 private:
  int size() const { return static_cast<int>(table_.size()); }
  int at(int a, int b) const {
    return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  int check(const Elem& e) const {
    int i = e.as_index();
    if (i < 0 || i >= size()) {
      throw DomainError("index outside multiplication table");
    }
    return i;
  }
  std::string name(int i) const {
    return names_.empty() ? "#" + std::to_string(i)
                          : names_[static_cast<std::size_t>(i)];
  }

  std::vector<std::vector<int>> table_;
  int id_;
  std::vector<std::string> names_;
};

}  // namespace

std::shared_ptr<const Semigroup> make_nk_semigroup(int k) {
  return std::make_shared<NkSemigroup>(k);
}

std::shared_ptr<const Semigroup> make_free_monoid(std::string alphabet) {
  return std::make_shared<FreeMonoid>(std::move(alphabet));
}

std::shared_ptr<const Semigroup> make_table_semigroup(
    std::vector<std::vector<int>> table, int identity,
    std::vector<std::string> names) {
  return std::make_shared<TableSemigroup>(std::move(table), identity,
                                          std::move(names));
}

ViolationReport check_right_lcm(const Semigroup& s, const Ball& ball) {
  ViolationReport report("right-lcm");
  // Left cancellation: xa = xb forces a = b.
  for (const Elem& x : ball.elems) {
    for (std::size_t i = 0; i < ball.elems.size(); ++i) {
      for (std::size_t j = i + 1; j < ball.elems.size(); ++j) {
        report.add_checked();
        if (s.multiply(x, ball.elems[i]) == s.multiply(x, ball.elems[j])) {
          report.add_violation(
              "left-cancellation",
              x.to_string() + "*" + ball.elems[i].to_string() + " = " +
                  x.to_string() + "*" + ball.elems[j].to_string(),
              1.0);
        }
      }
    }
  }

  // lcm agreement against brute-forced principal ideal intersections in the
  // doubled window.
  Ball window = s.ball(2 * ball.radius);
  auto divides = [&s](const Elem& p, const Elem& m) {
    auto q = s.left_quotient(p, m);
    return q.has_value() && s.multiply(p, *q) == m;
  };
  for (const Elem& p : ball.elems) {
    for (const Elem& q : ball.elems) {
      report.add_checked();
      std::vector<Elem> common;
      for (const Elem& m : window.elems) {
        if (divides(p, m) && divides(q, m)) common.push_back(m);
      }
      std::optional<Elem> claimed;
      try {
        claimed = s.lcm(p, q);
      } catch (const UnsupportedStructureError& e) {
        report.add_violation("right-lcm", e.what(), 1.0);
        continue;
      }
      const std::string tuple =
          "(" + p.to_string() + "," + q.to_string() + ")";
      if (!claimed.has_value()) {
        if (!common.empty()) {
          report.add_violation("right-lcm",
                               tuple + ": lcm absent but " +
                                   common.front().to_string() +
                                   " is a common multiple",
                               1.0);
        }
        continue;
      }
      if (!divides(p, *claimed) || !divides(q, *claimed)) {
        report.add_violation(
            "right-lcm", tuple + ": claimed lcm " + claimed->to_string() +
                             " is not a common multiple",
            1.0);
        continue;
      }
      for (const Elem& m : common) {
        if (!divides(*claimed, m)) {
          report.add_violation(
              "right-lcm", tuple + ": common multiple " + m.to_string() +
                               " outside " + claimed->to_string() + "P",
              1.0);
          break;
        }
      }
    }
  }
  return report;
}

}  // namespace zslab
