#ifndef ZSLAB_SEMIGROUP_HPP_
#define ZSLAB_SEMIGROUP_HPP_

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "zslab/element.hpp"
#include "zslab/report.hpp"

namespace zslab {

/// Finite enumeration window of a semigroup or group: all elements of
/// length/degree <= radius, identity first, deterministic order. `saturated`
/// is set when the structure was exhausted before the radius was (finite
/// tables), so larger radii add nothing.
struct Ball {
  std::vector<Elem> elems;
  int radius = 0;
  bool saturated = false;

  bool contains(const Elem& e) const { return members.count(e) != 0; }
  std::size_t size() const { return elems.size(); }

  /// Populated by the enumerators; kept alongside elems for O(log n) lookup.
  std::set<Elem> members;

  static Ball of(std::vector<Elem> elems, int radius, bool saturated = false);
};

/// A discrete semigroup with identity. Concrete kinds: N^k under addition,
/// a free monoid over a finite alphabet, an explicit finite multiplication
/// table, and the Zappa-Szep product built in zs_data.hpp.
class Semigroup {
 public:
  virtual ~Semigroup() = default;

  virtual Elem identity() const = 0;
  virtual Elem multiply(const Elem& p, const Elem& q) const = 0;

  /// Grading used for ball enumeration (degree sum, word length, 0/1).
  virtual int length(const Elem& p) const = 0;
  virtual Ball ball(int radius) const = 0;

  /// Whether lcm() is supported; right LCM structure is still *checked*
  /// (check_right_lcm), never assumed.
  virtual bool right_lcm_available() const { return false; }

  /// Canonical r with pP cap qP = rP, or nullopt when the intersection is
  /// empty. Throws UnsupportedStructureError when not available.
  virtual std::optional<Elem> lcm(const Elem& p, const Elem& q) const;

  /// The unique q with p*q = r, if it exists (left cancellativity makes it
  /// unique when it does).
  virtual std::optional<Elem> left_quotient(const Elem& p,
                                            const Elem& r) const = 0;

  virtual std::string describe() const = 0;
};

std::shared_ptr<const Semigroup> make_nk_semigroup(int k);
std::shared_ptr<const Semigroup> make_free_monoid(std::string alphabet);
/// table[i][j] = index of element i*j; element 0 need not be the identity,
/// `identity` names it. Validation (associativity, two-sided identity) runs
/// at construction and throws ConstructionError on failure.
std::shared_ptr<const Semigroup> make_table_semigroup(
    std::vector<std::vector<int>> table, int identity,
    std::vector<std::string> names = {});

/// Brute-force audit of the right LCM property on a ball: for every pair
/// (p,q), compare lcm(p,q) against the principal right ideals enumerated in
/// the doubled window, and scan for left-cancellation failures.
ViolationReport check_right_lcm(const Semigroup& s, const Ball& ball);

}  // namespace zslab

#endif  // ZSLAB_SEMIGROUP_HPP_
