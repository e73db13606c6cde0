#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace turan {

struct CriterionResult {
  std::string id;  // "1" .. "12"; criterion 4 reports as "4a" and "4b"
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Criterion ids to run ("4" selects both halves); empty runs everything.
  std::set<std::string> only;
};

/// Runs the acceptance table in order. on_row is called as each row
/// finishes. A criterion that throws is reported as failed with the message.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {},
                                            const std::function<void(const CriterionResult&)>& on_row = {});

std::string format_row(const CriterionResult& row);

}  // namespace turan
