#include "qmetric/report.hpp"

#include <algorithm>
#include <cmath>

namespace qmetric {

Check& Report::add(std::string id, double residual, double tolerance, std::size_t samples,
                   std::string note) {
  Check c;
  c.id = std::move(id);
  c.residual = residual;
  c.tolerance = tolerance;
  c.samples = samples;
  c.passed = !std::isnan(residual) && residual <= tolerance;
  c.note = std::move(note);
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& Report::add_flag(std::string id, bool passed, std::string note) {
  Check c;
  c.id = std::move(id);
  c.passed = passed;
  c.samples = 1;
  c.note = std::move(note);
  checks_.push_back(std::move(c));
  return checks_.back();
}

Check& Report::add_advisory(std::string id, bool holds, std::string note) {
  Check& c = add_flag(std::move(id), holds, std::move(note));
  c.advisory = true;
  return c;
}

void Report::merge(const Report& other) {
  for (const auto& c : other.checks()) {
    auto it = std::find_if(checks_.begin(), checks_.end(),
                           [&](const Check& mine) { return mine.id == c.id; });
    if (it == checks_.end()) {
      checks_.push_back(c);
      continue;
    }
    it->passed = it->passed && c.passed;
    it->residual = std::max(it->residual, c.residual);
    it->tolerance = std::max(it->tolerance, c.tolerance);
    it->samples += c.samples;
    if (it->note.empty()) it->note = c.note;
  }
}

const Check* Report::find(const std::string& id) const {
  for (const auto& c : checks_) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

Check* Report::find(const std::string& id) {
  return const_cast<Check*>(static_cast<const Report&>(*this).find(id));
}

bool Report::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const Check& c) { return c.advisory || c.passed; });
}

}  // namespace qmetric
