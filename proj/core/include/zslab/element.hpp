#ifndef ZSLAB_ELEMENT_HPP_
#define ZSLAB_ELEMENT_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace zslab {

/// Normal form of a semigroup or group element. Equality of elements is
/// equality of normal forms. The payload is one of
///   - a vector of integers (N^k tuples, Z^k vectors),
///   - a word over a finite alphabet (free monoids),
///   - an index into a multiplication table, or
///   - a pair (elements of a Zappa-Szep product P |><| G).
class Elem {
 public:
  using IntVec = std::vector<std::int64_t>;

  Elem() : v_(std::string{}) {}

  static Elem vec(IntVec v) { return Elem(Payload(std::move(v))); }
  static Elem word(std::string w) { return Elem(Payload(std::move(w))); }
  static Elem index(int i) { return Elem(Payload(i)); }
  static Elem pair(Elem first, Elem second);

  bool is_vec() const { return std::holds_alternative<IntVec>(v_); }
  bool is_word() const { return std::holds_alternative<std::string>(v_); }
  bool is_index() const { return std::holds_alternative<int>(v_); }
  bool is_pair() const { return std::holds_alternative<PairPtr>(v_); }

  const IntVec& as_vec() const;
  const std::string& as_word() const;
  int as_index() const;
  const Elem& first() const;
  const Elem& second() const;

  bool operator==(const Elem& o) const;
  bool operator!=(const Elem& o) const { return !(*this == o); }
  /// Total order: by payload kind first, then value; gives deterministic
  /// iteration and report ordering.
  bool operator<(const Elem& o) const;

  std::string to_string() const;

 private:
  using PairPtr = std::shared_ptr<const std::pair<Elem, Elem>>;
  using Payload = std::variant<IntVec, std::string, int, PairPtr>;
  explicit Elem(Payload p) : v_(std::move(p)) {}
  Payload v_;
};

}  // namespace zslab

#endif  // ZSLAB_ELEMENT_HPP_
