#ifndef ZSLAB_SUITES_HPP_
#define ZSLAB_SUITES_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "zslab/config.hpp"
#include "zslab/report.hpp"

namespace zslab {

/// Outcome of one verification suite. Skipped suites (inapplicable
/// structure, e.g. the homogeneous product on a non-homogeneous action, or
/// preconditions already reported failing) do not fail a run.
struct SuiteResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "skip"
  std::string note;    // skip reason or failure headline
  std::uint64_t checked = 0;
  std::uint64_t skipped = 0;
  std::uint64_t violations = 0;
  double worst_residual = 0.0;
  std::map<std::string, std::uint64_t> violation_tags;
  std::vector<Violation> witnesses;
};

struct VerificationReport {
  int schema_version = 1;
  std::string config_hash;
  double tolerance = 1e-9;
  int radius_p = 0;
  int radius_g = 0;
  int fock_ball = 0;
  std::vector<SuiteResult> suites;
  bool all_pass = true;
  std::int64_t wall_ms = 0;

  std::string to_json() const;
  static VerificationReport from_json(const std::string& text);
  /// Human-readable rendering, one line per suite.
  std::string render_text() const;
};

/// Builds every object the configuration describes and runs the requested
/// suites. Construction/config failures throw; axiom violations are
/// reported, never thrown.
VerificationReport run_suites(const RunConfig& cfg);

}  // namespace zslab

#endif  // ZSLAB_SUITES_HPP_
