#pragma once

#include "turan/construct.hpp"
#include "turan/geometry.hpp"
#include "turan/index_set.hpp"
#include "turan/solver.hpp"
#include "turan/trig_poly.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace turan {

using Json = nlohmann::ordered_json;

/// Invalid problem file: malformed JSON, unknown or missing fields, values out
/// of range. `where` is a JSON pointer or "line L, column C".
class SpecError : public std::runtime_error {
 public:
  SpecError(const std::string& where, const std::string& what)
      : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

// Rationals are written as "p/q" strings; numbers and decimal strings are
// accepted on input.
Json to_json(const Rational& q);
Rational rational_from_json(const Json& j, const std::string& path = "");

Json to_json(const IndexSet& h);
IndexSet index_set_from_json(const Json& j, const std::string& path = "");

Json to_json(const Point& p);
Point point_from_json(const Json& j, const std::string& path = "");

Json to_json(const Domain& d);
Domain domain_from_json(const Json& j, const std::string& path = "");

Json to_json(const CosinePolynomial& phi);
CosinePolynomial polynomial_from_json(const Json& j, const std::string& path = "");

Json to_json(const Enclosure& e);

enum class Mode { Space, Torus, SolveH, Construct, Delta, LimitScan };
std::string to_string(Mode mode);

struct Section {
  std::vector<double> from, to;
  std::size_t count = 201;
};

struct ProblemSpec {
  Mode mode = Mode::Space;
  std::optional<Domain> domain;
  std::optional<Point> point;
  std::optional<IndexSet> index_set;
  SolverConfig solver;

  // Mode-specific parameters.
  std::optional<std::int64_t> m;             // solve-h: grid size
  std::optional<IndexSet> structure;         // torus: full H for infinite orbits
  std::optional<CosinePolynomial> phi;       // construct
  std::optional<double> epsilon;             // construct
  std::optional<Section> section;            // construct
  int n = 1;                                 // delta
  std::int64_t k_max = 8;                    // delta
  std::vector<std::int64_t> n_list;          // limit-scan

  std::optional<std::string> report_path, csv_path;
};

/// Parses and validates a problem file; throws SpecError.
ProblemSpec parse_spec(const std::string& text);

struct RunOutput {
  Json report;
  /// CSV text (header plus rows) for the mode.
  std::string csv;
};

/// Solves the problem. The report carries no timestamp; callers add one.
RunOutput run_spec(const ProblemSpec& spec);

/// ISO 8601 UTC time, e.g. "2026-10-18T07:04:21Z".
std::string utc_timestamp();

}  // namespace turan
