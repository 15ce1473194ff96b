#ifndef ZSLAB_REPORT_HPP_
#define ZSLAB_REPORT_HPP_

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace zslab {

/// One failed check: which axiom/identity, at which tuple, how badly.
struct Violation {
  std::string tag;      // e.g. "ZS5", "A6", "unitarity"
  std::string witness;  // human-readable tuple description
  double residual = 0.0;
};

/// Result of an exhaustive window check. Violations are capped at
/// `witness_cap` entries but `violations` always counts all of them;
/// checked + skipped equals the number of enumerated tuples.
class ViolationReport {
 public:
  explicit ViolationReport(std::string label, std::size_t witness_cap = 10)
      : label_(std::move(label)), witness_cap_(witness_cap) {}

  void add_checked(std::size_t n = 1) { checked_ += n; }
  void add_skipped(std::size_t n = 1) { skipped_ += n; }
  void add_violation(const std::string& tag, const std::string& witness,
                     double residual);
  void merge(const ViolationReport& other);

  bool ok() const { return violations_ == 0; }
  std::size_t checked() const { return checked_; }
  std::size_t skipped() const { return skipped_; }
  std::size_t violations() const { return violations_; }
  double worst_residual() const { return worst_residual_; }
  const std::string& label() const { return label_; }
  const std::vector<Violation>& witnesses() const { return witnesses_; }
  /// Exact violation counts per tag (witnesses are capped, these are not).
  const std::map<std::string, std::size_t>& tag_counts() const {
    return tag_counts_;
  }
  std::size_t count_of(const std::string& tag) const;

  /// One-line summary, e.g. "zs-axioms: ok (960 checked, 14 skipped)".
  std::string summary() const;

 private:
  std::string label_;
  std::size_t witness_cap_;
  std::size_t checked_ = 0;
  std::size_t skipped_ = 0;
  std::size_t violations_ = 0;
  double worst_residual_ = 0.0;
  std::vector<Violation> witnesses_;
  std::map<std::string, std::size_t> tag_counts_;
};

}  // namespace zslab

#endif  // ZSLAB_REPORT_HPP_
