// Acceptance table: one line per criterion, exit status 0 only if all pass.
// Arguments restrict the run to the given criterion ids.

#include "turan/acceptance.hpp"

#include <iostream>

int main(int argc, char** argv) {
  turan::AcceptanceOptions options;
  for (int i = 1; i < argc; ++i) options.only.insert(argv[i]);
  const auto rows = turan::run_acceptance(options, [](const turan::CriterionResult& row) {
    std::cout << turan::format_row(row) << std::endl;
  });
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.passed ? 0 : 1;
  std::cout << rows.size() - failed << "/" << rows.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
