// Command-line driver: solve a problem file, or run the acceptance table.

#include "turan/acceptance.hpp"
#include "turan/io.hpp"
#include "turan/lp.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitSpec = 2;
constexpr int kExitResource = 3;

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  return static_cast<bool>(out);
}

int selftest(const std::string& criteria) {
  turan::AcceptanceOptions options;
  std::stringstream ss(criteria);
  for (std::string id; std::getline(ss, id, ',');) {
    if (!id.empty()) options.only.insert(id);
  }
  const auto start = std::chrono::steady_clock::now();
  const auto rows = turan::run_acceptance(options, [&](const turan::CriterionResult& row) {
    std::cout << turan::format_row(row) << std::endl;
  });
  std::size_t passed = 0;
  for (const auto& r : rows) passed += r.passed ? 1 : 0;
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << "selftest: " << passed << "/" << rows.size() << " passed in " << seconds << " s" << std::endl;
  return passed == rows.size() && !rows.empty() ? kExitOk : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointwise Turan problem solver"};
  std::string spec_path, out_path, csv_path, arithmetic, criteria;
  bool run_selftest = false, verbose = false;
  app.add_option("--spec", spec_path, "Problem file (JSON)");
  app.add_option("--out", out_path, "Report path (default: outputs.report_path, else stdout)");
  app.add_option("--csv", csv_path, "CSV path (default: outputs.csv_path)");
  app.add_option("--arithmetic", arithmetic, "LP arithmetic for discrete problems")
      ->check(CLI::IsMember({"float", "rational"}));
  app.add_flag("--selftest", run_selftest, "Run the acceptance table");
  app.add_option("--criteria", criteria, "Comma-separated acceptance rows for --selftest (e.g. 3,4a)");
  app.add_flag("--verbose", verbose, "Log progress to stderr");
  CLI11_PARSE(app, argc, argv);

  if (run_selftest) return selftest(criteria);
  if (spec_path.empty()) {
    std::cerr << "error: --spec FILE or --selftest is required\n";
    return kExitSpec;
  }

  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "error: cannot read " << spec_path << "\n";
    return kExitSpec;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  try {
    turan::ProblemSpec spec = turan::parse_spec(buffer.str());
    if (arithmetic == "float") spec.solver.arithmetic = turan::lp::Arithmetic::Float;
    if (arithmetic == "rational") spec.solver.arithmetic = turan::lp::Arithmetic::Rational;
    if (verbose) std::cerr << "mode " << turan::to_string(spec.mode) << "\n";

    const auto start = std::chrono::steady_clock::now();
    turan::RunOutput result = turan::run_spec(spec);
    if (verbose) {
      std::cerr << "solved in " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                << " s\n";
    }
    result.report["timestamp"] = turan::utc_timestamp();
    const std::string text = result.report.dump(2) + "\n";

    const std::string report_to = !out_path.empty() ? out_path : spec.report_path.value_or("");
    if (report_to.empty()) {
      std::cout << text;
    } else if (!write_file(report_to, text)) {
      std::cerr << "error: cannot write " << report_to << "\n";
      return kExitFailure;
    }
    const std::string csv_to = !csv_path.empty() ? csv_path : spec.csv_path.value_or("");
    if (!csv_to.empty() && !write_file(csv_to, result.csv)) {
      std::cerr << "error: cannot write " << csv_to << "\n";
      return kExitFailure;
    }
    for (const auto& w : result.report["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    return kExitOk;
  } catch (const turan::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const turan::lp::ResourceLimitError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kExitResource;
  } catch (const std::invalid_argument& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const std::domain_error& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kExitSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
