#pragma once

#include "turan/rational.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace turan::lp {

enum class Relation { LessEqual, Equal, GreaterEqual };

enum class Arithmetic { Float, Rational };

struct Constraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

/// Unset bounds mean -inf / +inf.
struct VariableBound {
  std::optional<Rational> lower = Rational(0);
  std::optional<Rational> upper;

  static VariableBound free() { return {std::nullopt, std::nullopt}; }
  static VariableBound nonnegative() { return {}; }
};

/// maximize objective . x  subject to the constraints and variable bounds.
struct LinearProgram {
  std::size_t num_vars = 0;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;
  std::vector<VariableBound> bounds;  // empty means every variable >= 0

  explicit LinearProgram(std::size_t n = 0) : num_vars(n), objective(n) {}

  void add(std::vector<Rational> coeffs, Relation relation, Rational rhs) {
    constraints.push_back({std::move(coeffs), relation, std::move(rhs)});
  }
};

enum class Status { Optimal, Unbounded, Infeasible };

std::string to_string(Status status);

struct Solution {
  Status status = Status::Infeasible;
  Arithmetic arithmetic = Arithmetic::Float;
  std::vector<Rational> x;
  Rational value;
  /// Multipliers of the constraints (not of the bounds), in the sign
  /// convention of the original rows.
  std::vector<Rational> duals;
  /// Dual objective of the standard-form program, including bound rows.
  Rational dual_value;
  /// Largest violation of dual feasibility (0 in exact mode at optimality).
  Rational dual_infeasibility;
  std::size_t pivots = 0;

  double value_d() const { return value.get_d(); }
  std::vector<double> x_d() const;
};

struct Options {
  /// Rational mode only: abort once a tableau entry exceeds this many bits.
  std::size_t max_bits = 1u << 16;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  std::size_t degenerate_switch = 50;
  std::size_t max_pivots = 200000;
  /// Float mode only: constraints expected to be tight at the optimum (for
  /// example the active rows of a previous, smaller solve). Free variables
  /// are pivoted into these rows first and dual simplex repairs the rest;
  /// when that basis is unusable the solve restarts cold.
  std::vector<std::size_t> warm_rows;
};

/// Reads TURAN_MAX_BITS; falls back to Options{}.max_bits.
Options default_options();

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense two-phase simplex. Deterministic: ties break towards the lowest
/// column / basis index. Float mode works in double with tolerance 1e-9;
/// rational mode is exact over the given data.
Solution solve(const LinearProgram& program, Arithmetic arithmetic, const Options& options = default_options());

}  // namespace turan::lp
