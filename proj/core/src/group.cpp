#include "zslab/group.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>

#include "zslab/errors.hpp"

namespace zslab {

std::vector<Elem> Group::elements() const {
  throw UnsupportedStructureError(describe() + " is infinite");
}

namespace {

class FreeAbelianGroup final : public Group {
 public:
  explicit FreeAbelianGroup(int k) : k_(k) {
    if (k < 0) throw ConstructionError("Z^k requires k >= 0");
  }

  Elem identity() const override {
    return Elem::vec(Elem::IntVec(static_cast<std::size_t>(k_), 0));
  }

  Elem multiply(const Elem& g, const Elem& h) const override {
    const auto& a = check(g);
    const auto& b = check(h);
    Elem::IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return Elem::vec(std::move(out));
  }

  Elem inverse(const Elem& g) const override {
    const auto& a = check(g);
    Elem::IntVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return Elem::vec(std::move(out));
  }

  int length(const Elem& g) const override {
    const auto& a = check(g);
    std::int64_t s = 0;
    for (auto v : a) s += std::llabs(v);
    return static_cast<int>(s);
  }

  Ball ball(int radius) const override {
    std::vector<Elem> out;
    Elem::IntVec cur(static_cast<std::size_t>(k_), 0);
    for (int len = 0; len <= radius; ++len) {
      std::vector<Elem::IntVec> level;
      enumerate(0, len, cur, level);
      // Positive entries first within each length class (so Z gives
      // 0, 1, -1, 2, -2, ...).
      std::sort(level.begin(), level.end(),
                [](const Elem::IntVec& a, const Elem::IntVec& b) {
                  return a > b;
                });
      for (auto& v : level) out.push_back(Elem::vec(std::move(v)));
      if (k_ == 0) break;
    }
    return Ball::of(std::move(out), radius, /*saturated=*/k_ == 0);
  }

  bool finite() const override { return k_ == 0; }

  std::vector<Elem> elements() const override {
    if (k_ != 0) return Group::elements();
    return {identity()};
  }

  std::optional<std::vector<GenStep>> decompose(
      const Elem& g, const std::vector<Elem>& generators) const override {
    // Supported generating set: the standard basis vectors, in any order.
    std::vector<int> axis(generators.size(), -1);
    std::vector<bool> seen(static_cast<std::size_t>(k_), false);
    for (std::size_t i = 0; i < generators.size(); ++i) {
      const auto& v = check(generators[i]);
      int nz = -1;
      for (int j = 0; j < k_; ++j) {
        if (v[static_cast<std::size_t>(j)] != 0) {
          if (nz >= 0 || v[static_cast<std::size_t>(j)] != 1) return std::nullopt;
          nz = j;
        }
      }
      if (nz < 0 || seen[static_cast<std::size_t>(nz)]) return std::nullopt;
      seen[static_cast<std::size_t>(nz)] = true;
      axis[i] = nz;
    }
    const auto& target = check(g);
    std::vector<GenStep> steps;
    for (std::size_t i = 0; i < generators.size(); ++i) {
      std::int64_t n = target[static_cast<std::size_t>(axis[i])];
      for (std::int64_t c = 0; c < std::llabs(n); ++c) {
        steps.push_back({generators[i], n < 0});
      }
    }
    // Any axis not covered by a generator must be zero in g.
    for (int j = 0; j < k_; ++j) {
      if (!seen[static_cast<std::size_t>(j)] &&
          target[static_cast<std::size_t>(j)] != 0) {
        return std::nullopt;
      }
    }
    return steps;
  }

  std::string describe() const override { return "Z^" + std::to_string(k_); }

 private:
  const Elem::IntVec& check(const Elem& e) const {
    const auto& v = e.as_vec();
    if (static_cast<int>(v.size()) != k_) {
      throw DomainError("vector rank mismatch in " + describe());
    }
    return v;
  }

  void enumerate(int pos, int remaining, Elem::IntVec& cur,
                 std::vector<Elem::IntVec>& out) const {
    if (k_ == 0) {
      if (remaining == 0) out.push_back(cur);
      return;
    }
    if (pos == k_ - 1) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(cur);
      if (remaining != 0) {
        cur[static_cast<std::size_t>(pos)] = -remaining;
        out.push_back(cur);
      }
      cur[static_cast<std::size_t>(pos)] = 0;
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      cur[static_cast<std::size_t>(pos)] = v;
      enumerate(pos + 1, remaining - v, cur, out);
      if (v != 0) {
        cur[static_cast<std::size_t>(pos)] = -v;
        enumerate(pos + 1, remaining - v, cur, out);
      }
    }
    cur[static_cast<std::size_t>(pos)] = 0;
  }

  int k_;
};

class TableGroup final : public Group {
 public:
  TableGroup(std::vector<std::vector<int>> table, int identity,
             std::vector<std::string> names)
      : table_(std::move(table)), id_(identity), names_(std::move(names)) {
    const int n = size();
    if (n == 0) throw ConstructionError("empty group table");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n) {
        throw ConstructionError("group table is not square");
      }
      for (int v : row) {
        if (v < 0 || v >= n) throw ConstructionError("table entry out of range");
      }
    }
    if (id_ < 0 || id_ >= n) throw ConstructionError("identity index invalid");
    for (int i = 0; i < n; ++i) {
      if (at(id_, i) != i || at(i, id_) != i) {
        throw ConstructionError("designated identity is not two-sided");
      }
    }
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        for (int c = 0; c < n; ++c) {
          if (at(at(a, b), c) != at(a, at(b, c))) {
            throw ConstructionError("group table is not associative");
          }
        }
      }
    }
    inv_.assign(static_cast<std::size_t>(n), -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        if (at(a, b) == id_ && at(b, a) == id_) inv_[static_cast<std::size_t>(a)] = b;
      }
      if (inv_[static_cast<std::size_t>(a)] < 0) {
        throw ConstructionError("element " + name(a) + " has no inverse");
      }
    }
    if (!names_.empty() && static_cast<int>(names_.size()) != n) {
      throw ConstructionError("name list size mismatch");
    }
  }

  Elem identity() const override { return Elem::index(id_); }

  Elem multiply(const Elem& g, const Elem& h) const override {
    return Elem::index(at(check(g), check(h)));
  }

  Elem inverse(const Elem& g) const override {
    return Elem::index(inv_[static_cast<std::size_t>(check(g))]);
  }

  int length(const Elem& g) const override { return check(g) == id_ ? 0 : 1; }

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

  bool finite() const override { return true; }

  std::vector<Elem> elements() const override {
    std::vector<Elem> out;
    out.push_back(Elem::index(id_));
    for (int i = 0; i < size(); ++i) {
      if (i != id_) out.push_back(Elem::index(i));
    }
    return out;
  }

  std::optional<std::vector<GenStep>> decompose(
      const Elem& g, const std::vector<Elem>& generators) const override {
    // BFS over generator steps from the identity.
    std::map<int, std::vector<GenStep>> words;
    words[id_] = {};
    std::deque<int> frontier = {id_};
    while (!frontier.empty()) {
      int cur = frontier.front();
      frontier.pop_front();
      if (cur == check(g)) return words[cur];
      for (const Elem& s : generators) {
        for (bool inv : {false, true}) {
          int step = inv ? inv_[static_cast<std::size_t>(check(s))] : check(s);
          int next = at(cur, step);
          if (words.count(next)) continue;
          auto w = words[cur];
          w.push_back({s, inv});
          words[next] = std::move(w);
          frontier.push_back(next);
        }
      }
    }
    auto it = words.find(check(g));
    if (it == words.end()) return std::nullopt;
    return it->second;
  }

  std::string describe() const override {
    return "Group[" + std::to_string(size()) + "]";
  }

 private:
  int size() const { return static_cast<int>(table_.size()); }
  int at(int a, int b) const {
    return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  }
  int check(const Elem& e) const {
    int i = e.as_index();
    if (i < 0 || i >= size()) throw DomainError("index outside group table");
    return i;
  }
  std::string name(int i) const {
    return names_.empty() ? "#" + std::to_string(i)
                          : names_[static_cast<std::size_t>(i)];
  }

  std::vector<std::vector<int>> table_;
  int id_;
  std::vector<std::string> names_;
  std::vector<int> inv_;
};

}  // namespace

std::shared_ptr<const Group> make_free_abelian_group(int k) {
  return std::make_shared<FreeAbelianGroup>(k);
}

std::shared_ptr<const Group> make_table_group(
    std::vector<std::vector<int>> table, int identity,
    std::vector<std::string> names) {
  return std::make_shared<TableGroup>(std::move(table), identity,
                                      std::move(names));
}

std::shared_ptr<const Group> make_trivial_group() {
  return make_table_group({{0}}, 0, {"e"});
}

std::shared_ptr<const Group> make_cyclic_group(int n) {
  if (n < 1) throw ConstructionError("cyclic group order must be positive");
  std::vector<std::vector<int>> table(static_cast<std::size_t>(n),
                                      std::vector<int>(static_cast<std::size_t>(n)));
  std::vector<std::string> names;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    }
    names.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a)));
  }
  return make_table_group(std::move(table), 0, std::move(names));
}

}  // namespace zslab
