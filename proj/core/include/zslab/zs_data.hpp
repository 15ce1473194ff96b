#ifndef ZSLAB_ZS_DATA_HPP_
#define ZSLAB_ZS_DATA_HPP_

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zslab/element.hpp"
#include "zslab/group.hpp"
#include "zslab/report.hpp"
#include "zslab/semigroup.hpp"

namespace zslab {

/// A left G-action on P together with a P-restriction of G. Evaluation is
/// memoized; the compatibility axioms ZS1-ZS8 are *checked* on finite
/// windows by zs_axiom_check, never assumed.
///
/// The memo tables make evaluation single-writer: either keep use on one
/// thread or pre-populate the window before sharing a const reference.
class ZSData {
 public:
  using Map = std::function<Elem(const Elem& g, const Elem& p)>;

  ZSData(std::shared_ptr<const Semigroup> p, std::shared_ptr<const Group> g,
         Map action, Map restriction, std::string provenance);

  const Semigroup& P() const { return *p_; }
  const Group& G() const { return *g_; }
  std::shared_ptr<const Semigroup> P_ptr() const { return p_; }
  std::shared_ptr<const Group> G_ptr() const { return g_; }

  /// g . p
  Elem act(const Elem& g, const Elem& p) const;
  /// g|_p
  Elem restriction(const Elem& g, const Elem& p) const;

  const std::string& provenance() const { return provenance_; }

  /// Same data with single entries of the evaluated maps replaced; the
  /// fault-injection hook behind tamper detection tests.
  std::shared_ptr<const ZSData> with_overrides(
      std::vector<std::tuple<Elem, Elem, Elem>> action_overrides,
      std::vector<std::tuple<Elem, Elem, Elem>> restriction_overrides) const;

  /// g . p = p, g|_p = g.
  static std::shared_ptr<const ZSData> trivial(
      std::shared_ptr<const Semigroup> p, std::shared_ptr<const Group> g);

 private:
  std::shared_ptr<const Semigroup> p_;
  std::shared_ptr<const Group> g_;
  Map action_;
  Map restriction_;
  std::string provenance_;
  mutable std::map<std::pair<Elem, Elem>, Elem> act_memo_;
  mutable std::map<std::pair<Elem, Elem>, Elem> res_memo_;
};

/// Exhaustive ZS1-ZS8 sweep over the given windows. Tuples whose
/// intermediate products leave the windows are counted as skipped.
ViolationReport zs_axiom_check(const ZSData& d, const Ball& pball,
                               const Ball& gball);

/// (p,g)(q,h) = (p(g.q), g|_q h).
Elem zs_multiply(const ZSData& d, const Elem& x, const Elem& y);
/// Same, but throws WindowOverflowError when the P component of the product
/// leaves `pwindow`.
Elem zs_multiply_windowed(const ZSData& d, const Elem& x, const Elem& y,
                          const Ball& pwindow);

/// Canonical right LCM of P |><| G: (r, e) with r = lcm_P(p, q), or absent
/// when pP cap qP is empty. The unit component is canonically e since (e,k)
/// is invertible.
std::optional<Elem> zs_lcm(const ZSData& d, const Elem& x, const Elem& y);

/// The product semigroup P |><| G on pair elements.
std::shared_ptr<const Semigroup> make_bowtie_semigroup(
    std::shared_ptr<const ZSData> d);

/// Cartesian window {(p,g) : p in pball, g in gball}, p-major order.
Ball bowtie_ball(const Ball& pball, const Ball& gball);

/// Letter-level generator data for a self-similar action on a free monoid:
/// g.(xw) = (g.x)((g|_x).w) and g|_(xw) = (g|_x)|_w extend the rules to all
/// words, and the group laws extend them to all of G.
struct LetterRule {
  Elem g;            // a generator of G
  char letter;       // alphabet letter x
  char image;        // g . x (single letter; the action is length-preserving)
  Elem restriction;  // g|_x
};

/// Builds the extension and runs zs_axiom_check on the given radii; throws
/// ExtensionError carrying the first violating tuple if the rules are
/// inconsistent.
std::shared_ptr<const ZSData> extend_action_from_generators(
    std::shared_ptr<const Semigroup> p, std::shared_ptr<const Group> g,
    const std::vector<LetterRule>& rules, int check_radius_p,
    int check_radius_g);

}  // namespace zslab

#endif  // ZSLAB_ZS_DATA_HPP_
