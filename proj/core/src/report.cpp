#include "zslab/report.hpp"

#include <algorithm>
#include <sstream>

namespace zslab {

void ViolationReport::add_violation(const std::string& tag,
                                    const std::string& witness,
                                    double residual) {
  ++violations_;
  ++tag_counts_[tag];
  worst_residual_ = std::max(worst_residual_, residual);
  if (witnesses_.size() < witness_cap_) {
    witnesses_.push_back({tag, witness, residual});
  }
}

void ViolationReport::merge(const ViolationReport& other) {
  checked_ += other.checked_;
  skipped_ += other.skipped_;
  violations_ += other.violations_;
  worst_residual_ = std::max(worst_residual_, other.worst_residual_);
  for (const auto& [tag, count] : other.tag_counts_) {
    tag_counts_[tag] += count;
  }
  for (const auto& v : other.witnesses_) {
    if (witnesses_.size() >= witness_cap_) break;
    witnesses_.push_back(v);
  }
}

std::size_t ViolationReport::count_of(const std::string& tag) const {
  auto it = tag_counts_.find(tag);
  return it == tag_counts_.end() ? 0 : it->second;
}

std::string ViolationReport::summary() const {
  std::ostringstream os;
  os << label_ << ": " << (ok() ? "ok" : "FAIL") << " (" << checked_
     << " checked, " << skipped_ << " skipped";
  if (!ok()) {
    os << ", " << violations_ << " violated, worst residual " << worst_residual_;
  }
  os << ")";
  if (!witnesses_.empty()) {
    os << " first: [" << witnesses_[0].tag << "] " << witnesses_[0].witness;
  }
  return os.str();
}

}  // namespace zslab
