#include "zslab/zs_data.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "zslab/errors.hpp"

namespace zslab {

ZSData::ZSData(std::shared_ptr<const Semigroup> p,
               std::shared_ptr<const Group> g, Map action, Map restriction,
               std::string provenance)
    : p_(std::move(p)),
      g_(std::move(g)),
      action_(std::move(action)),
      restriction_(std::move(restriction)),
      provenance_(std::move(provenance)) {}

Elem ZSData::act(const Elem& g, const Elem& p) const {
  auto key = std::make_pair(g, p);
  auto it = act_memo_.find(key);
  if (it != act_memo_.end()) return it->second;
  Elem out = action_(g, p);
  act_memo_.emplace(std::move(key), out);
  return out;
}

Elem ZSData::restriction(const Elem& g, const Elem& p) const {
  auto key = std::make_pair(g, p);
  auto it = res_memo_.find(key);
  if (it != res_memo_.end()) return it->second;
  Elem out = restriction_(g, p);
  res_memo_.emplace(std::move(key), out);
  return out;
}

std::shared_ptr<const ZSData> ZSData::with_overrides(
    std::vector<std::tuple<Elem, Elem, Elem>> action_overrides,
    std::vector<std::tuple<Elem, Elem, Elem>> restriction_overrides) const {
  std::map<std::pair<Elem, Elem>, Elem> act_over, res_over;
  for (auto& [g, p, v] : action_overrides) act_over[{g, p}] = v;
  for (auto& [g, p, v] : restriction_overrides) res_over[{g, p}] = v;
  Map base_act = action_;
  Map base_res = restriction_;
  Map act = [act_over, base_act](const Elem& g, const Elem& p) {
    auto it = act_over.find({g, p});
    return it != act_over.end() ? it->second : base_act(g, p);
  };
  Map res = [res_over, base_res](const Elem& g, const Elem& p) {
    auto it = res_over.find({g, p});
    return it != res_over.end() ? it->second : base_res(g, p);
  };
  return std::make_shared<ZSData>(p_, g_, std::move(act), std::move(res),
                                  provenance_ + "+overrides");
}

std::shared_ptr<const ZSData> ZSData::trivial(
    std::shared_ptr<const Semigroup> p, std::shared_ptr<const Group> g) {
  return std::make_shared<ZSData>(
      p, g, [](const Elem&, const Elem& q) { return q; },
      [](const Elem& h, const Elem&) { return h; }, "builtin(trivial)");
}

namespace {

std::string tuple_str(std::initializer_list<Elem> elems) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& e : elems) {
    if (!first) os << ", ";
    os << e.to_string();
    first = false;
  }
  os << ")";
  return os.str();
}

}  // namespace

ViolationReport zs_axiom_check(const ZSData& d, const Ball& pball,
                               const Ball& gball) {
  ViolationReport report("zs-axioms");
  const Semigroup& P = d.P();
  const Group& G = d.G();
  const Elem ep = P.identity();
  const Elem eg = G.identity();

  auto expect = [&report](bool ok, const char* tag, const std::string& witness) {
    report.add_checked();
    if (!ok) report.add_violation(tag, witness, 1.0);
  };

  // ZS1: e.p = p and ZS7: e|_p = e.
  for (const Elem& p : pball.elems) {
    expect(d.act(eg, p) == p, "ZS1", tuple_str({p}));
    expect(d.restriction(eg, p) == eg, "ZS7", tuple_str({p}));
  }
  // ZS3: g.e = e and ZS4: g|_e = g.
  for (const Elem& g : gball.elems) {
    expect(d.act(g, ep) == ep, "ZS3", tuple_str({g}));
    expect(d.restriction(g, ep) == g, "ZS4", tuple_str({g}));
  }
  // ZS2: (gh).p = g.(h.p) and ZS8: (gh)|_p = g|_(h.p) h|_p.
  for (const Elem& g : gball.elems) {
    for (const Elem& h : gball.elems) {
      Elem gh = G.multiply(g, h);
      for (const Elem& p : pball.elems) {
        Elem hp = d.act(h, p);
        if (!pball.contains(hp)) {
          report.add_skipped(2);
          continue;
        }
        expect(d.act(gh, p) == d.act(g, hp), "ZS2", tuple_str({g, h, p}));
        expect(d.restriction(gh, p) ==
                   G.multiply(d.restriction(g, hp), d.restriction(h, p)),
               "ZS8", tuple_str({g, h, p}));
      }
    }
  }
  // ZS5: g.(pq) = (g.p)(g|_p . q) and ZS6: g|_(pq) = (g|_p)|_q.
  for (const Elem& g : gball.elems) {
    for (const Elem& p : pball.elems) {
      Elem gp = d.act(g, p);
      Elem g_at_p = d.restriction(g, p);
      for (const Elem& q : pball.elems) {
        Elem pq = P.multiply(p, q);
        if (!pball.contains(pq)) {
          report.add_skipped(2);
          continue;
        }
        expect(d.act(g, pq) == P.multiply(gp, d.act(g_at_p, q)), "ZS5",
               tuple_str({g, p, q}));
        expect(d.restriction(g, pq) == d.restriction(g_at_p, q), "ZS6",
               tuple_str({g, p, q}));
      }
    }
  }
  return report;
}

Elem zs_multiply(const ZSData& d, const Elem& x, const Elem& y) {
  const Elem& p = x.first();
  const Elem& g = x.second();
  const Elem& q = y.first();
  const Elem& h = y.second();
  return Elem::pair(d.P().multiply(p, d.act(g, q)),
                    d.G().multiply(d.restriction(g, q), h));
}

Elem zs_multiply_windowed(const ZSData& d, const Elem& x, const Elem& y,
                          const Ball& pwindow) {
  Elem out = zs_multiply(d, x, y);
  if (!pwindow.contains(out.first())) {
    throw WindowOverflowError("product " + out.to_string() +
                              " leaves the configured P window (radius " +
                              std::to_string(pwindow.radius) + ")");
  }
  return out;
}

std::optional<Elem> zs_lcm(const ZSData& d, const Elem& x, const Elem& y) {
  if (!d.P().right_lcm_available()) {
    throw UnsupportedStructureError(d.P().describe() +
                                    ": right LCM structure not available");
  }
  auto r = d.P().lcm(x.first(), y.first());
  if (!r.has_value()) return std::nullopt;
  return Elem::pair(*r, d.G().identity());
}

namespace {

class BowtieSemigroup final : public Semigroup {
 public:
  explicit BowtieSemigroup(std::shared_ptr<const ZSData> d) : d_(std::move(d)) {}

  Elem identity() const override {
    return Elem::pair(d_->P().identity(), d_->G().identity());
  }

  Elem multiply(const Elem& x, const Elem& y) const override {
    return zs_multiply(*d_, x, y);
  }

  int length(const Elem& x) const override {
    return std::max(d_->P().length(x.first()), d_->G().length(x.second()));
  }

  Ball ball(int radius) const override {
    return bowtie_ball(d_->P().ball(radius), d_->G().ball(radius));
  }

  bool right_lcm_available() const override {
    return d_->P().right_lcm_available();
  }

  std::optional<Elem> lcm(const Elem& x, const Elem& y) const override {
    return zs_lcm(*d_, x, y);
  }

  std::optional<Elem> left_quotient(const Elem& x,
                                    const Elem& r) const override {
    // Solve (p,g)(q,h) = r: g.q = p \ r_P forces q, then h is forced by the
    // group component.
    auto t = d_->P().left_quotient(x.first(), r.first());
    if (!t.has_value()) return std::nullopt;
    Elem q = d_->act(d_->G().inverse(x.second()), *t);
    Elem h = d_->G().multiply(
        d_->G().inverse(d_->restriction(x.second(), q)), r.second());
    Elem candidate = Elem::pair(q, h);
    if (multiply(x, candidate) != r) return std::nullopt;
    return candidate;
  }

  std::string describe() const override {
    return d_->P().describe() + " |><| " + d_->G().describe();
  }

 private:
  std::shared_ptr<const ZSData> d_;
};

}  // namespace

std::shared_ptr<const Semigroup> make_bowtie_semigroup(
    std::shared_ptr<const ZSData> d) {
  return std::make_shared<BowtieSemigroup>(std::move(d));
}

Ball bowtie_ball(const Ball& pball, const Ball& gball) {
  std::vector<Elem> out;
  out.reserve(pball.size() * gball.size());
  for (const Elem& p : pball.elems) {
    for (const Elem& g : gball.elems) {
      out.push_back(Elem::pair(p, g));
    }
  }
  return Ball::of(std::move(out), std::max(pball.radius, gball.radius),
                  pball.saturated && gball.saturated);
}

namespace {

// Word-recursion backend shared by the action and restriction closures
// produced from letter rules.
class LetterExtension {
 public:
  LetterExtension(std::shared_ptr<const Semigroup> p,
                  std::shared_ptr<const Group> g,
                  const std::vector<LetterRule>& rules)
      : p_(std::move(p)), g_(std::move(g)) {
    for (const auto& r : rules) {
      if (gen_index(r.g) < 0) generators_.push_back(r.g);
      auto& per = letter_[r.g];
      if (per.count(r.letter)) {
        throw ExtensionError(std::string("duplicate rule for generator ") +
                             r.g.to_string() + " at letter '" + r.letter + "'");
      }
      per[r.letter] = {r.image, r.restriction};
    }
    // Each generator's letter action must be a total permutation of the
    // alphabet, otherwise the group cannot act invertibly.
    Ball letters = p_->ball(1);
    for (const Elem& gen : generators_) {
      std::set<char> images;
      for (std::size_t i = 1; i < letters.elems.size(); ++i) {
        char c = letters.elems[i].as_word()[0];
        auto it = letter_.at(gen).find(c);
        if (it == letter_.at(gen).end()) {
          throw ExtensionError(std::string("no rule for generator ") +
                               gen.to_string() + " at letter '" + c + "'");
        }
        images.insert(it->second.first);
      }
      if (images.size() + 1 != letters.elems.size()) {
        throw ExtensionError("letter action of generator " + gen.to_string() +
                             " is not a permutation of the alphabet");
      }
    }
  }

  std::pair<Elem, Elem> eval(const Elem& g, const Elem& w) const {
    auto key = std::make_pair(g, w);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    std::pair<Elem, Elem> out = compute(g, w);
    memo_.emplace(std::move(key), out);
    return out;
  }

 private:
  int gen_index(const Elem& g) const {
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (generators_[i] == g) return static_cast<int>(i);
    }
    return -1;
  }

  // Single generator (or inverse) applied to the first letter.
  std::pair<char, Elem> letter_step(const GenStep& s, char x) const {
    const auto& per = letter_.at(s.gen);
    if (!s.inverse) {
      auto it = per.find(x);
      return {it->second.first, it->second.second};
    }
    // a^{-1}.x is the letter y with a.y = x, and a^{-1}|_x = (a|_y)^{-1}.
    for (const auto& [y, img] : per) {
      if (img.first == x) {
        return {y, g_->inverse(img.second)};
      }
    }
    throw ExtensionError("letter action not invertible");  // unreachable
  }

  std::pair<Elem, Elem> compute(const Elem& g, const Elem& w) const {
    if (g == g_->identity()) return {w, g};
    const std::string& word = w.as_word();
    if (word.empty()) return {w, g};
    auto steps = g_->decompose(g, generators_);
    if (!steps.has_value()) {
      throw ExtensionError("group element " + g.to_string() +
                           " is not a product of the rule generators");
    }
    if (steps->size() == 1) {
      auto [img, res] = letter_step((*steps)[0], word[0]);
      auto rest = eval(res, Elem::word(word.substr(1)));
      return {Elem::word(std::string(1, img) + rest.first.as_word()),
              rest.second};
    }
    // g = s * g2: chain through ZS2/ZS8.
    GenStep s = steps->front();
    Elem s_elem = s.inverse ? g_->inverse(s.gen) : s.gen;
    Elem g2 = g_->multiply(g_->inverse(s_elem), g);
    auto inner = eval(g2, w);
    auto outer = eval(s_elem, inner.first);
    return {outer.first, g_->multiply(outer.second, inner.second)};
  }

  std::shared_ptr<const Semigroup> p_;
  std::shared_ptr<const Group> g_;
  std::vector<Elem> generators_;
  std::map<Elem, std::map<char, std::pair<char, Elem>>> letter_;
  mutable std::map<std::pair<Elem, Elem>, std::pair<Elem, Elem>> memo_;
};

}  // namespace

std::shared_ptr<const ZSData> extend_action_from_generators(
    std::shared_ptr<const Semigroup> p, std::shared_ptr<const Group> g,
    const std::vector<LetterRule>& rules, int check_radius_p,
    int check_radius_g) {
  if (!p->identity().is_word()) {
    throw ConstructionError("generator extension requires a free monoid");
  }
  auto backend = std::make_shared<LetterExtension>(p, g, rules);
  auto act = [backend](const Elem& h, const Elem& w) {
    return backend->eval(h, w).first;
  };
  auto res = [backend](const Elem& h, const Elem& w) {
    return backend->eval(h, w).second;
  };
  auto data = std::make_shared<ZSData>(p, g, act, res, "generator-extended");
  ViolationReport check =
      zs_axiom_check(*data, p->ball(check_radius_p), g->ball(check_radius_g));
  if (!check.ok()) {
    const auto& v = check.witnesses().front();
    throw ExtensionError("generator data does not extend consistently: [" +
                         v.tag + "] at " + v.witness);
  }
  return data;
}

}  // namespace zslab
