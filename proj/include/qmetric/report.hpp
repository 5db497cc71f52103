#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace qmetric {

/// One verified statement. `id` names the statement ("prop2.iv", "qsm.b", ...),
/// `residual` is the worst violation observed (<= 0 or within tolerance when it holds).
struct Check {
  std::string id;
  bool passed = true;
  double residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  std::string note;
  /// Advisory checks are reported but do not affect Report::passed().
  bool advisory = false;
};

class Report {
 public:
  explicit Report(std::string subject = {}) : subject_(std::move(subject)) {}

  /// Adds a check whose pass condition is residual <= tolerance.
  Check& add(std::string id, double residual, double tolerance, std::size_t samples = 1,
             std::string note = {});
  /// Adds a check with an explicit verdict.
  Check& add_flag(std::string id, bool passed, std::string note = {});
  /// Records an observation that is not a pass/fail condition.
  Check& add_advisory(std::string id, bool holds, std::string note = {});

  /// Folds `other` into this report, merging checks with equal ids (worst residual wins).
  void merge(const Report& other);

  const std::string& subject() const { return subject_; }
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& id) const;
  Check* find(const std::string& id);
  bool passed() const;

 private:
  std::string subject_;
  std::vector<Check> checks_;
};

}  // namespace qmetric
