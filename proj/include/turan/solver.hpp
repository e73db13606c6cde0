#pragma once

#include "turan/closed_form.hpp"
#include "turan/geometry.hpp"
#include "turan/index_set.hpp"
#include "turan/lp.hpp"
#include "turan/rational.hpp"
#include "turan/trig_poly.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace turan {

/// Largest grid solved in exact arithmetic when no mode is requested.
inline constexpr std::int64_t kRationalGridLimit = 64;
/// Largest grid accepted at all.
inline constexpr std::int64_t kMaxGrid = 100'000;

enum class EnclosureStatus { Exact, Bracket, Unbounded, TrivialZero, TrivialOne };
std::string to_string(EnclosureStatus status);

struct UpperCertificate {
  enum class Kind {
    None,
    /// Nonnegativity imposed only on the grid j/m plus extra_points further
    /// nodes: a relaxation, hence an upper bound.
    GridRelaxation,
    /// The discretized value itself (torus with a finite orbit).
    DiscreteValue,
    /// 2 / lower bound of the complement truncated at n.
    Duality,
    ClosedForm,
    /// M(H) <= 2.
    Universal,
    Trivial,
  };
  Kind kind = Kind::None;
  std::int64_t m = 0;
  std::int64_t n = 0;
  std::size_t extra_points = 0;
  std::string name;

  std::string describe() const;
};

struct Enclosure {
  double lower = 0.0;
  double upper = 0.0;
  /// Feasible for the continuous problem after shift-normalization; empty
  /// (constant 1) for trivial outcomes.
  CosinePolynomial lower_witness;
  UpperCertificate upper_certificate;
  EnclosureStatus status = EnclosureStatus::Bracket;
  std::vector<std::string> warnings;

  double width() const { return upper - lower; }
  double midpoint() const { return 0.5 * (lower + upper); }
  bool contains(double v, double slack = 0.0) const { return lower - slack <= v && v <= upper + slack; }
};

// --- discrete problem -------------------------------------------------------

struct DiscreteResult {
  bool unbounded = false;
  /// Residue that made the reduction degenerate (when unbounded).
  std::int64_t degenerate_residue = -1;
  std::vector<std::int64_t> reduced;  // H(m)
  lp::Arithmetic arithmetic = lp::Arithmetic::Float;
  Rational value;  // exact in rational mode
  CosinePolynomial witness;

  double value_d() const { return value.get_d(); }
};

/// Default arithmetic for a grid of size m.
lp::Arithmetic default_arithmetic(std::int64_t m);

/// M_m(H): LP over lambda and c_k (k in H(m)), constraints phi(j/m) >= 0 for
/// j = 0..m/2.
DiscreteResult solve_discrete(const IndexSet& h, std::int64_t m, std::optional<lp::Arithmetic> mode = std::nullopt);

/// Same value computed over the grid values v_j >= 0 with unit mean and the
/// coefficients outside H(m) forced to vanish.
DiscreteResult solve_discrete_value_space(const IndexSet& h, std::int64_t m,
                                          std::optional<lp::Arithmetic> mode = std::nullopt);

// --- continuous problem -------------------------------------------------------

struct BracketConfig {
  std::int64_t n_trunc = 64;
  /// 0 selects 4 * n_trunc + 3.
  std::int64_t m_grid = 0;
  std::int64_t n_samples = 1 << 14;
  /// Also bound from above through the complement.
  bool use_duality = true;
  /// Exchange rounds adding the negative local minima of the current
  /// optimum as extra nodes.
  int max_rounds = 40;
  /// Stop refining once lambda * delta falls below this.
  double target_gap = 1e-10;

  std::int64_t grid() const { return m_grid > 0 ? m_grid : 4 * n_trunc + 3; }
};

/// Certified lower bound for a finite spectrum, plus the relaxation value of
/// the final node set.
struct LowerBound {
  double lower = 0.0;
  double relaxation = 0.0;
  CosinePolynomial witness;
  double delta = 0.0;
  std::size_t extra_points = 0;
  int rounds = 0;
};
LowerBound lower_bound_finite(const std::vector<std::int64_t>& spectrum, const BracketConfig& cfg);

/// Two-sided certified enclosure of M(H).
Enclosure bracket_M(const IndexSet& h, const BracketConfig& cfg = {});

// --- pointwise problems ------------------------------------------------------

struct SolverConfig {
  BracketConfig bracket;
  /// Arithmetic for discrete torus problems; unset picks rational up to
  /// kRationalGridLimit.
  std::optional<lp::Arithmetic> arithmetic;
};

struct PointwiseResult {
  Enclosure enclosure;
  /// H(Omega, z) (space) or H_m / its truncation (torus); empty when trivial.
  std::vector<std::int64_t> h;
  std::optional<OrbitInfo> orbit;
  std::optional<ClosedForm> closed;
};

/// M(Omega, z) in R^d.
PointwiseResult pointwise_space(const Domain& omega, const Point& z, const SolverConfig& cfg = {});

/// M*(Omega, z) on T^d. For an infinite orbit, `structure` may describe the
/// full index set H(Omega, z); it must agree with the computed truncation and
/// then supplies the upper bound. Without it only the lower bound is
/// certified and the upper bound is 1.
PointwiseResult pointwise_torus(const Domain& omega, const Point& z, const SolverConfig& cfg = {},
                                const std::optional<IndexSet>& structure = std::nullopt);

// --- sweeps -------------------------------------------------------------------

struct DeltaCandidate {
  std::vector<std::int64_t> h;
  Enclosure enclosure;  // of M(H) / 2
};

struct DeltaResult {
  std::vector<std::int64_t> best_h;
  Enclosure enclosure;  // of M(best_h) / 2
  bool envelope_ok = false;
  double envelope_upper = 0.0;  // 1 - 0.5 / (n+1)^2
  double envelope_lower = 0.0;  // 1 - 5 / (n+1)^2
  std::vector<DeltaCandidate> candidates;
};

/// Exhaustive search over H in [2, K] with |H| = n (n <= 4, K <= 16).
DeltaResult delta_search(int n, std::int64_t k_max, const BracketConfig& cfg = {});

struct LimitRow {
  std::int64_t n = 0;
  Rational alpha;
  std::int64_t m = 0;
  PointwiseResult result;
};

struct LimitScan {
  std::vector<LimitRow> rows;
  PointwiseResult space;
};

/// M*(Omega/N, z/N) for each N, alongside M(Omega, z).
LimitScan limit_scan(const Domain& omega, const Point& z, const std::vector<std::int64_t>& n_list,
                     const SolverConfig& cfg = {});

}  // namespace turan
