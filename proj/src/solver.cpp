#include "turan/solver.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <future>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

namespace turan {

namespace {

constexpr double kExactWidth = 1e-9;
// Exchange rounds without a better lower bound before giving up; float
// round-off eventually dominates the gains.
constexpr int kStallRounds = 4;

std::vector<Rational> cosine_table(std::int64_t m) {
  std::vector<Rational> c(static_cast<std::size_t>(m));
  for (std::int64_t r = 0; r < m; ++r) c[r] = exact_from_double(cos_two_pi_fraction(r, m));
  return c;
}

void check_grid(std::int64_t m) {
  if (m < 2) throw std::invalid_argument("grid size m must be >= 2");
  if (m > kMaxGrid) throw lp::ResourceLimitError("grid size " + std::to_string(m) + " exceeds " + std::to_string(kMaxGrid));
}

// Shared front end of both discrete formulations.
bool reduce(const IndexSet& h, std::int64_t m, DiscreteResult& out) {
  ModReduction red = reduce_mod(h, m);
  if (const auto* d = std::get_if<DegenerateReduction>(&red)) {
    out.unbounded = true;
    out.degenerate_residue = d->witness_residue;
    return false;
  }
  out.reduced = std::get<ReducedIndices>(red).indices;
  return true;
}

Enclosure trivial(EnclosureStatus status, double value, std::string why) {
  Enclosure e;
  e.lower = e.upper = value;
  e.status = status;
  e.upper_certificate.kind = UpperCertificate::Kind::Trivial;
  e.upper_certificate.name = why;
  return e;
}

Enclosure halve(Enclosure e) {
  e.lower *= 0.5;
  e.upper *= 0.5;
  return e;
}

// Replace a numerical bracket by the closed form when the bracket confirms it.
void apply_closed_form(Enclosure& e, const std::optional<ClosedForm>& cf) {
  if (!cf) return;
  const double v = cf->value.value();
  if (!e.contains(v, kExactWidth)) {
    e.warnings.push_back("closed form " + cf->source + " = " + std::to_string(v) + " lies outside the numerical bracket");
    return;
  }
  e.lower = e.upper = v;
  e.status = EnclosureStatus::Exact;
  e.upper_certificate = {};
  e.upper_certificate.kind = UpperCertificate::Kind::ClosedForm;
  e.upper_certificate.name = cf->source + " = " + cf->value.expression();
}

CosinePolynomial polynomial_from(const std::vector<double>& x, const std::vector<std::int64_t>& spectrum) {
  CosinePolynomial phi(1.0);
  phi.set_coeff(1, x[0]);
  for (std::size_t i = 0; i < spectrum.size(); ++i) phi.set_coeff(spectrum[i], x[i + 1]);
  return phi;
}

std::vector<Rational> node_row(double t, const std::vector<std::int64_t>& spectrum) {
  std::vector<Rational> row(spectrum.size() + 1);
  row[0] = exact_from_double(std::cos(2.0 * std::numbers::pi * t));
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double kt = reduce_mod_one(static_cast<double>(spectrum[i]) * t);
    row[i + 1] = exact_from_double(std::cos(2.0 * std::numbers::pi * kt));
  }
  return row;
}

// Upper bound on M(spectrum) from the multipliers u <= 0 of the rows
// phi(t_i) >= 0 alone, so it stays valid however inaccurate the float solve
// was: lambda <= sum |u_i| + 2 sum |residual|, because |a_k| <= 2 for every
// nonnegative phi with constant term 1. The multipliers of the active rows
// are first refined in extended precision.
double dual_upper_bound(const lp::LinearProgram& program, const lp::Solution& sol) {
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Eigen::Index n = static_cast<Eigen::Index>(program.num_vars);
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < program.constraints.size(); ++i) {
    if (sgn(sol.duals[i]) < 0) active.push_back(i);
  }
  if (active.empty()) return 2.0;
  Mat at(n, static_cast<Eigen::Index>(active.size()));
  Vec u(static_cast<Eigen::Index>(active.size()));
  for (std::size_t s = 0; s < active.size(); ++s) {
    const auto& row = program.constraints[active[s]].coeffs;
    for (Eigen::Index c = 0; c < n; ++c) at(c, static_cast<Eigen::Index>(s)) = row[c].get_d();
    u(static_cast<Eigen::Index>(s)) = sol.duals[active[s]].get_d();
  }
  Vec target = Vec::Zero(n);
  target(0) = 1.0L;
  Eigen::ColPivHouseholderQR<Mat> qr(at);
  for (int it = 0; it < 4; ++it) {
    Vec r = at * u - target;
    if (r.cwiseAbs().sum() < 1e-17L) break;
    u -= qr.solve(r);
  }
  u = u.cwiseMin(0.0L);
  const Vec r = at * u - target;
  const long double bound = -u.sum() + 2.0L * r.cwiseAbs().sum();
  return static_cast<double>(bound) * (1.0 + 1e-15);
}

}  // namespace

std::string to_string(EnclosureStatus status) {
  switch (status) {
    case EnclosureStatus::Exact:
      return "exact";
    case EnclosureStatus::Bracket:
      return "bracket";
    case EnclosureStatus::Unbounded:
      return "unbounded";
    case EnclosureStatus::TrivialZero:
      return "trivial_zero";
    case EnclosureStatus::TrivialOne:
      return "trivial_one";
  }
  return "?";
}

std::string UpperCertificate::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::None:
      os << "none";
      break;
    case Kind::GridRelaxation:
      os << "grid_relaxation(m=" << m << ", extra_points=" << extra_points << ")";
      break;
    case Kind::DiscreteValue:
      os << "discrete_value(m=" << m << ")";
      break;
    case Kind::Duality:
      os << "duality(complement truncated at " << n << ")";
      break;
    case Kind::ClosedForm:
      os << "closed_form(" << name << ")";
      break;
    case Kind::Universal:
      os << "universal(M <= 2)";
      break;
    case Kind::Trivial:
      os << "trivial(" << name << ")";
      break;
  }
  return os.str();
}

lp::Arithmetic default_arithmetic(std::int64_t m) {
  return m <= kRationalGridLimit ? lp::Arithmetic::Rational : lp::Arithmetic::Float;
}

DiscreteResult solve_discrete(const IndexSet& h, std::int64_t m, std::optional<lp::Arithmetic> mode) {
  check_grid(m);
  DiscreteResult out;
  out.arithmetic = mode.value_or(default_arithmetic(m));
  if (!reduce(h, m, out)) return out;

  const auto cos_q = cosine_table(m);
  const std::size_t n = out.reduced.size() + 1;
  lp::LinearProgram program(n);
  program.bounds.assign(n, lp::VariableBound::free());
  program.objective[0] = 1;
  // phi(j/m) = phi((m-j)/m), so half the grid suffices.
  for (std::int64_t j = 0; j <= m / 2; ++j) {
    std::vector<Rational> row(n);
    row[0] = cos_q[j % m];
    for (std::size_t i = 0; i < out.reduced.size(); ++i) row[i + 1] = cos_q[(j * out.reduced[i]) % m];
    program.add(std::move(row), lp::Relation::GreaterEqual, Rational(-1));
  }
  lp::Solution sol = lp::solve(program, out.arithmetic);
  if (sol.status == lp::Status::Unbounded) {
    out.unbounded = true;
    return out;
  }
  if (sol.status != lp::Status::Optimal) throw std::logic_error("discrete problem reported infeasible");
  out.value = sol.value;
  out.witness = polynomial_from(sol.x_d(), out.reduced);
  return out;
}

DiscreteResult solve_discrete_value_space(const IndexSet& h, std::int64_t m, std::optional<lp::Arithmetic> mode) {
  check_grid(m);
  DiscreteResult out;
  out.arithmetic = mode.value_or(default_arithmetic(m));
  if (!reduce(h, m, out)) return out;

  const auto cos_q = cosine_table(m);
  const std::size_t n = static_cast<std::size_t>(m);
  lp::LinearProgram program(n);
  program.add(std::vector<Rational>(n, Rational(1)), lp::Relation::Equal, Rational(m));
  std::set<std::int64_t> kept(out.reduced.begin(), out.reduced.end());
  for (std::int64_t k = 2; k <= m / 2; ++k) {
    if (kept.count(k)) continue;
    std::vector<Rational> row(n);
    for (std::int64_t j = 0; j < m; ++j) row[j] = cos_q[(j * k) % m];
    program.add(std::move(row), lp::Relation::Equal, Rational(0));
  }
  // a_1 = (2/m) sum v_j cos(2 pi j/m), or (1/m) sum v_j (-1)^j when 1 = m/2.
  const Rational weight = m == 2 ? ratio(1, m) : ratio(2, m);
  for (std::int64_t j = 0; j < m; ++j) program.objective[j] = weight * cos_q[j];

  lp::Solution sol = lp::solve(program, out.arithmetic);
  if (sol.status == lp::Status::Unbounded) {
    out.unbounded = true;
    return out;
  }
  if (sol.status != lp::Status::Optimal) throw std::logic_error("value-space problem reported infeasible");
  out.value = sol.value;
  const auto v = sol.x_d();
  CosinePolynomial phi(grid_coefficient(v, 0));
  phi.set_coeff(1, grid_coefficient(v, 1));
  for (std::int64_t k : out.reduced) phi.set_coeff(k, grid_coefficient(v, k));
  out.witness = phi;
  return out;
}

LowerBound lower_bound_finite(const std::vector<std::int64_t>& spectrum, const BracketConfig& cfg) {
  const std::int64_t m = cfg.grid();
  const std::int64_t top = spectrum.empty() ? 1 : spectrum.back();
  if (m <= 2 * top + 2) {
    throw std::invalid_argument("grid m=" + std::to_string(m) + " aliases frequency " + std::to_string(top) +
                                "; need m > 2 * max + 2");
  }
  check_grid(m);
  const auto cos_q = cosine_table(m);
  const std::size_t n = spectrum.size() + 1;
  const std::int64_t samples = std::max<std::int64_t>(cfg.n_samples, 4 * top);

  // Grid rows stay in place; extra nodes are appended after them each round.
  lp::LinearProgram program(n);
  program.bounds.assign(n, lp::VariableBound::free());
  program.objective[0] = 1;
  for (std::int64_t j = 0; j <= m / 2; ++j) {
    std::vector<Rational> row(n);
    row[0] = cos_q[j % m];
    for (std::size_t i = 0; i < spectrum.size(); ++i) row[i + 1] = cos_q[(j * spectrum[i]) % m];
    program.add(std::move(row), lp::Relation::GreaterEqual, Rational(-1));
  }
  const std::size_t grid_count = program.constraints.size();

  // Extra nodes; a new minimum replaces an old node closer than `merge`, which
  // keeps nearly parallel rows out of the float solve.
  const double merge = 1e-9;
  const double grid_gap = 1e-7;
  std::vector<double> nodes;
  std::vector<std::size_t> warm;

  LowerBound out;
  out.relaxation = 2.0;
  out.witness = CosinePolynomial(1.0);
  int stalled = 0;
  for (int round = 0; round < std::max(cfg.max_rounds, 1); ++round) {
    out.rounds = round + 1;
    program.constraints.resize(grid_count);
    for (double t : nodes) program.add(node_row(t, spectrum), lp::Relation::GreaterEqual, Rational(-1));

    lp::Options options = lp::default_options();
    options.warm_rows = warm;
    lp::Solution sol = lp::solve(program, lp::Arithmetic::Float, options);
    if (sol.status != lp::Status::Optimal) throw std::logic_error("grid relaxation is not bounded");

    out.relaxation = std::min(out.relaxation, dual_upper_bound(program, sol));

    const double lambda = sol.value_d();
    const CosinePolynomial phi = polynomial_from(sol.x_d(), spectrum);
    const double tol = cfg.target_gap / (4.0 * std::max(1.0, lambda));
    MinBound mb = certified_min(phi, samples, tol);
    const double delta = std::max(0.0, -mb.certified_lower);
    const double lower = lambda / (1.0 + delta);
    if (lower > out.lower) {
      out.lower = lower;
      out.delta = delta;
      out.witness = phi.shifted_normalized(delta);
      stalled = 0;
    } else if (++stalled >= kStallRounds) {
      break;
    }
    if (out.relaxation - out.lower <= cfg.target_gap) break;

    // Keep only the extra nodes that carry a multiplier; the others are
    // regenerated if they become relevant again.
    // The surviving active rows seed the next solve.
    {
      warm.clear();
      for (std::size_t i = 0; i < grid_count; ++i) {
        if (sgn(sol.duals[i]) != 0) warm.push_back(i);
      }
      std::vector<double> kept;
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (sgn(sol.duals[grid_count + i]) != 0) {
          warm.push_back(grid_count + kept.size());
          kept.push_back(nodes[i]);
        }
      }
      nodes.swap(kept);
    }
    std::size_t changed = 0;
    for (double t : negative_local_minima(phi, samples, 0.0, static_cast<std::size_t>(top) + 2)) {
      const double on_grid = std::abs(t * static_cast<double>(m) - std::round(t * static_cast<double>(m)));
      if (on_grid < grid_gap * static_cast<double>(m)) continue;
      auto near = std::find_if(nodes.begin(), nodes.end(), [&](double s) { return std::abs(s - t) < merge; });
      if (near == nodes.end()) {
        nodes.push_back(t);
      } else if (*near != t) {
        *near = t;
      } else {
        continue;
      }
      ++changed;
    }
    if (changed == 0) break;
  }
  out.extra_points = nodes.size();
  return out;
}

Enclosure bracket_M(const IndexSet& h, const BracketConfig& cfg) {
  const std::vector<std::int64_t> trunc = h.truncate(cfg.n_trunc);
  // The complement side is independent; run it alongside.
  std::future<LowerBound> dual_side;
  if (cfg.use_duality) {
    dual_side = std::async(std::launch::async, [&h, &cfg] {
      return lower_bound_finite(h.complement().truncate(cfg.n_trunc), cfg);
    });
  }
  LowerBound low = lower_bound_finite(trunc, cfg);

  Enclosure e;
  e.lower = low.lower;
  e.lower_witness = low.witness;
  e.upper = 2.0;
  e.upper_certificate.kind = UpperCertificate::Kind::Universal;

  if (h.is_finite() && h.max_element() <= cfg.n_trunc) {
    const double u = low.relaxation;
    if (u < e.upper) {
      e.upper = u;
      e.upper_certificate = {UpperCertificate::Kind::GridRelaxation, cfg.grid(), 0, low.extra_points, ""};
    }
  }
  if (cfg.use_duality) {
    LowerBound dual = dual_side.get();
    const double u = 2.0 / dual.lower * (1.0 + 1e-14);
    if (u < e.upper) {
      e.upper = u;
      e.upper_certificate = {UpperCertificate::Kind::Duality, 0, cfg.n_trunc, 0, ""};
    }
  }
  if (e.lower > e.upper) {
    if (e.lower > e.upper + kExactWidth) {
      throw std::logic_error("enclosure inverted for " + h.describe() + ": lower " + std::to_string(e.lower) +
                             " > upper " + std::to_string(e.upper));
    }
    e.upper = e.lower;
  }
  e.status = e.width() <= kExactWidth ? EnclosureStatus::Exact : EnclosureStatus::Bracket;
  return e;
}

PointwiseResult pointwise_space(const Domain& omega, const Point& z, const SolverConfig& cfg) {
  if (omega.is_torus()) throw std::invalid_argument("pointwise_space needs a Euclidean domain");
  PointwiseResult out;
  const Point origin = Point::rational(std::vector<Rational>(omega.dim(), Rational(0)));
  if (!omega.contains(origin)) {
    out.enclosure = trivial(EnclosureStatus::TrivialZero, 0.0, "0 is not in the domain");
    return out;
  }
  if (z.is_zero()) {
    out.enclosure = trivial(EnclosureStatus::TrivialOne, 1.0, "z = 0");
    return out;
  }
  Membership zp = omega.membership(z);
  Membership zm = omega.membership(z.negated());
  if (!zp.inside || !zm.inside) {
    out.enclosure = trivial(EnclosureStatus::TrivialZero, 0.0, "z is not in the symmetric part of the domain");
    return out;
  }
  SpaceIndices si = compute_H_space(omega.symmetrize(), z);
  out.h = si.indices;
  const IndexSet h = IndexSet::finite(std::set<std::int64_t>(si.indices.begin(), si.indices.end()));
  Enclosure b = bracket_M(h, cfg.bracket);
  out.closed = closed_form(h);
  apply_closed_form(b, out.closed);
  out.enclosure = halve(std::move(b));
  if (si.boundary_ambiguous || zp.boundary_ambiguous || zm.boundary_ambiguous) {
    out.enclosure.warnings.push_back("BoundaryAmbiguous: a multiple of z lies within 1e-12 of the boundary");
  }
  return out;
}

PointwiseResult pointwise_torus(const Domain& omega, const Point& z, const SolverConfig& cfg,
                                const std::optional<IndexSet>& structure) {
  if (!omega.is_torus()) throw std::invalid_argument("pointwise_torus needs a torus domain");
  PointwiseResult out;
  const Point origin = Point::rational(std::vector<Rational>(omega.dim(), Rational(0)));
  if (!omega.contains(origin)) {
    out.enclosure = trivial(EnclosureStatus::TrivialZero, 0.0, "0 is not in the domain");
    return out;
  }
  TorusHResult res = compute_H_torus(omega, z, cfg.bracket.n_trunc);
  if (const auto* tz = std::get_if<TrivialZero>(&res)) {
    out.enclosure = trivial(EnclosureStatus::TrivialZero, 0.0, tz->reason);
    return out;
  }
  const auto& ti = std::get<TorusIndices>(res);
  out.orbit = ti.orbit;
  out.h = ti.indices;
  const IndexSet h = IndexSet::finite(std::set<std::int64_t>(ti.indices.begin(), ti.indices.end()));

  if (const auto* fin = std::get_if<FiniteOrbit>(&ti.orbit)) {
    if (fin->m == 1) {
      out.enclosure = trivial(EnclosureStatus::TrivialOne, 1.0, "z = 0 on the torus");
      return out;
    }
    DiscreteResult d = solve_discrete(h, fin->m, cfg.arithmetic);
    if (d.unbounded) throw std::logic_error("torus grid problem cannot be degenerate");
    Enclosure e;
    e.lower = e.upper = 0.5 * d.value_d();
    e.lower_witness = d.witness;
    e.status = EnclosureStatus::Exact;
    e.upper_certificate = {UpperCertificate::Kind::DiscreteValue, fin->m, 0, 0, ""};
    out.enclosure = std::move(e);
  } else if (structure) {
    if (structure->truncate(cfg.bracket.n_trunc) != ti.indices) {
      throw std::invalid_argument("index-set structure " + structure->describe() +
                                  " disagrees with the computed indices up to " + std::to_string(cfg.bracket.n_trunc));
    }
    Enclosure b = bracket_M(*structure, cfg.bracket);
    out.closed = closed_form(*structure);
    apply_closed_form(b, out.closed);
    out.enclosure = halve(std::move(b));
    out.enclosure.warnings.push_back("infinite orbit: upper bound relies on the supplied index-set structure");
  } else {
    LowerBound low = lower_bound_finite(ti.indices, cfg.bracket);
    Enclosure e;
    e.lower = 0.5 * low.lower;
    e.upper = 1.0;
    e.lower_witness = low.witness;
    e.status = e.width() <= kExactWidth ? EnclosureStatus::Exact : EnclosureStatus::Bracket;
    e.upper_certificate.kind = UpperCertificate::Kind::Universal;
    e.warnings.push_back("infinite orbit: indices truncated at " + std::to_string(ti.truncated_at) +
                         "; only the lower bound is certified");
    out.enclosure = std::move(e);
  }
  if (ti.boundary_ambiguous) {
    out.enclosure.warnings.push_back("BoundaryAmbiguous: a multiple of z lies within 1e-12 of the boundary");
  }
  return out;
}

DeltaResult delta_search(int n, std::int64_t k_max, const BracketConfig& cfg) {
  if (n < 1 || n > 4) throw std::invalid_argument("delta_search supports 1 <= n <= 4");
  if (k_max > 16) throw std::invalid_argument("delta_search supports K <= 16");
  if (k_max - 1 < n) throw std::invalid_argument("[2, K] has fewer than n elements");

  BracketConfig c = cfg;
  c.use_duality = false;
  c.n_trunc = std::max(c.n_trunc, k_max);

  DeltaResult out;
  const double n1 = static_cast<double>(n + 1);
  out.envelope_upper = 1.0 - 0.5 / (n1 * n1);
  out.envelope_lower = 1.0 - 5.0 / (n1 * n1);

  // Lexicographic enumeration of n-subsets of [2, K].
  std::vector<std::int64_t> pick(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pick[i] = 2 + i;
  bool have_best = false;
  while (true) {
    DeltaCandidate cand;
    cand.h = pick;
    cand.enclosure = halve(bracket_M(IndexSet::finite(std::set<std::int64_t>(pick.begin(), pick.end())), c));
    if (!have_best || cand.enclosure.lower > out.enclosure.lower) {
      out.best_h = cand.h;
      out.enclosure = cand.enclosure;
      have_best = true;
    }
    out.candidates.push_back(std::move(cand));

    int i = n - 1;
    while (i >= 0 && pick[i] == k_max - (n - 1 - i)) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < n; ++j) pick[j] = pick[j - 1] + 1;
  }
  out.envelope_ok = out.enclosure.lower <= out.envelope_upper;
  return out;
}

LimitScan limit_scan(const Domain& omega, const Point& z, const std::vector<std::int64_t>& n_list,
                     const SolverConfig& cfg) {
  if (omega.is_torus()) throw std::invalid_argument("limit_scan needs a Euclidean domain");
  if (!z.is_exact()) throw std::invalid_argument("limit_scan needs a rational z");
  BoundingBox box = omega.bounding_box();
  double extent = 0.0;
  for (std::size_t i = 0; i < omega.dim(); ++i) extent = std::max({extent, std::abs(box.lo[i]), std::abs(box.hi[i])});
  if (!std::isfinite(extent)) throw std::domain_error("domain is unbounded");

  LimitScan out;
  for (std::int64_t n : n_list) {
    if (n < 1) throw std::invalid_argument("dilation denominators must be positive");
    if (extent / static_cast<double>(n) >= 0.5) {
      throw std::domain_error("alpha = 1/" + std::to_string(n) + " is too large: the scaled domain leaves the torus cube");
    }
    LimitRow row;
    row.n = n;
    row.alpha = Rational(1, n);
    Domain scaled = omega.scaled(row.alpha, SpaceKind::Torus);
    row.result = pointwise_torus(scaled, z.scaled(row.alpha), cfg);
    if (row.result.orbit) {
      if (const auto* fin = std::get_if<FiniteOrbit>(&*row.result.orbit)) row.m = fin->m;
    }
    out.rows.push_back(std::move(row));
  }
  out.space = pointwise_space(omega, z, cfg);
  return out;
}

}  // namespace turan
