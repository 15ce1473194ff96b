#ifndef ZSLAB_GROUP_HPP_
#define ZSLAB_GROUP_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zslab/element.hpp"
#include "zslab/semigroup.hpp"

namespace zslab {

/// One factor of a generator decomposition: `gen` or its inverse.
struct GenStep {
  Elem gen;
  bool inverse = false;
};

/// A discrete group. Kinds: finite multiplication table (validated at
/// construction) and free abelian Z^k with vector normal forms.
class Group {
 public:
  virtual ~Group() = default;

  virtual Elem identity() const = 0;
  virtual Elem multiply(const Elem& g, const Elem& h) const = 0;
  virtual Elem inverse(const Elem& g) const = 0;

  virtual int length(const Elem& g) const = 0;
  virtual Ball ball(int radius) const = 0;

  virtual bool finite() const = 0;
  /// All elements; throws UnsupportedStructureError for infinite groups.
  virtual std::vector<Elem> elements() const;

  /// Writes g as a product of the given generators and their inverses
  /// (product in left-to-right order). nullopt if g is not reachable.
  virtual std::optional<std::vector<GenStep>> decompose(
      const Elem& g, const std::vector<Elem>& generators) const = 0;

  virtual std::string describe() const = 0;
};

std::shared_ptr<const Group> make_free_abelian_group(int k);
std::shared_ptr<const Group> make_table_group(
    std::vector<std::vector<int>> table, int identity,
    std::vector<std::string> names = {});
std::shared_ptr<const Group> make_trivial_group();
std::shared_ptr<const Group> make_cyclic_group(int n);

}  // namespace zslab

#endif  // ZSLAB_GROUP_HPP_
