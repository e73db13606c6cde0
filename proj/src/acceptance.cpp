#include "turan/acceptance.hpp"

#include "turan/closed_form.hpp"
#include "turan/construct.hpp"
#include "turan/geometry.hpp"
#include "turan/index_set.hpp"
#include "turan/solver.hpp"
#include "turan/trig_poly.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace turan {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::uint64_t kSeed = 20030101;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Collects failures; the first few go into the detail line.
struct Tally {
  int checks = 0;
  int failures = 0;
  std::vector<std::string> notes;
  std::string summary;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 4) notes.push_back(what);
  }
  CriterionResult finish(std::string id, std::string title) const {
    CriterionResult r;
    r.id = std::move(id);
    r.title = std::move(title);
    r.passed = failures == 0 && checks > 0;
    std::ostringstream os;
    os << (checks - failures) << "/" << checks << " checks";
    if (!summary.empty()) os << "; " << summary;
    for (const auto& n : notes) os << "; " << n;
    r.detail = os.str();
    return r;
  }
};

std::string set_name(const IndexSet& h) { return h.describe(); }

Domain interval(const Rational& half, SpaceKind space) { return Domain(space, 1, make_box({half})); }

CriterionResult fejer_values() {
  Tally t;
  const auto start = std::chrono::steady_clock::now();
  double widest = 0.0;
  for (int n = 1; n <= 10; ++n) {
    const Enclosure e = bracket_M(IndexSet::range(2, n));
    const double target = 2.0 * std::cos(kPi / (n + 2));
    widest = std::max(widest, e.width());
    t.expect(e.contains(target), "[2," + std::to_string(n) + "] misses " + fmt("%.12f", target));
    t.expect(e.width() <= 1e-4, "[2," + std::to_string(n) + "] width " + fmt("%.3g", e.width()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  t.expect(secs <= 30.0, "took " + fmt("%.1f s", secs));
  t.summary = "widest " + fmt("%.2e", widest) + ", " + fmt("%.1f s", secs);
  return t.finish("1", "Fejer values M([2,n]) = 2cos(pi/(n+2)), n = 1..10");
}

CriterionResult single_frequency_families() {
  Tally t;
  double widest = 0.0;
  const SymbolicValue two{Rational(2), {}, 0};
  for (int n = 2; n <= 6; ++n) {
    const double c = std::cos(kPi / (2 * n));
    const std::vector<std::pair<IndexSet, double>> cases = {
        {IndexSet::singleton(n), 1.0 / c},
        {IndexSet::all_but(n), 2.0 * c},
        {IndexSet::above(n), 1.0 / std::cos(kPi / (n + 2))},
    };
    for (const auto& [h, target] : cases) {
      const Enclosure e = bracket_M(h);
      widest = std::max(widest, e.width());
      t.expect(e.contains(target), set_name(h) + " misses " + fmt("%.10f", target));
      t.expect(e.width() <= 1e-2, set_name(h) + " width " + fmt("%.3g", e.width()));
    }
    // Duality of the closed forms, checked symbolically.
    for (const IndexSet& h : {IndexSet::singleton(n), IndexSet::range(2, n)}) {
      auto a = closed_form(h);
      auto b = closed_form(h.complement());
      t.expect(a && b && (a->value * b->value) == two, "closed forms of " + set_name(h) + " and complement: product != 2");
    }
  }
  t.summary = "widest " + fmt("%.2e", widest);
  return t.finish("2", "M({n}), M(N2\\{n}), M((n,inf)) for n = 2..6 and duality of closed forms");
}

CriterionResult parity_sets() {
  Tally t;
  std::vector<double> odd_w, even_w;
  for (std::int64_t n : {16, 32, 64}) {
    BracketConfig cfg;
    cfg.n_trunc = n;
    const Enclosure o = bracket_M(IndexSet::odd(), cfg);
    const Enclosure e = bracket_M(IndexSet::even(), cfg);
    t.expect(o.contains(4.0 / kPi), "odd at N=" + std::to_string(n) + " misses 4/pi");
    t.expect(e.contains(kPi / 2.0), "even at N=" + std::to_string(n) + " misses pi/2");
    odd_w.push_back(o.width());
    even_w.push_back(e.width());
  }
  for (std::size_t i = 1; i < odd_w.size(); ++i) {
    t.expect(odd_w[i] < odd_w[i - 1], "odd widths not strictly decreasing");
    t.expect(even_w[i] < even_w[i - 1], "even widths not strictly decreasing");
  }
  auto a = closed_form(IndexSet::odd());
  auto b = closed_form(IndexSet::even());
  t.expect(a && b && (a->value * b->value) == SymbolicValue{Rational(2), {}, 0},
           "closed forms of odd and even: product != 2");
  std::ostringstream os;
  os << "odd widths " << fmt("%.2e", odd_w[0]) << " > " << fmt("%.2e", odd_w[1]) << " > " << fmt("%.2e", odd_w[2])
     << ", even widths " << fmt("%.2e", even_w[0]) << " > " << fmt("%.2e", even_w[1]) << " > "
     << fmt("%.2e", even_w[2]);
  t.summary = os.str();
  return t.finish("3", "M(odd) = 4/pi, M(even) = pi/2 with narrowing brackets (N = 16, 32, 64)");
}

std::vector<CriterionResult> even_grid() {
  Tally value, pattern;
  double worst_value = 0.0, worst_pattern = 0.0;
  for (std::int64_t m = 4; m <= 64; m += 2) {
    const DiscreteResult d = solve_discrete(IndexSet::range(2, m / 2 - 1), m);
    const double target = 1.0 + std::cos(2.0 * kPi / static_cast<double>(m));
    const double err = d.unbounded ? INFINITY : std::abs(d.value_d() - target);
    worst_value = std::max(worst_value, err);
    value.expect(err <= 1e-9, "m=" + std::to_string(m) + " off by " + fmt("%.2e", err));
    if (d.unbounded) {
      pattern.expect(false, "m=" + std::to_string(m) + " unbounded");
      continue;
    }
    // The stated pattern: m at j = 0, m/2 at j = +-1, 0 elsewhere.
    const auto v = grid_values(d.witness, m);
    double dev = 0.0;
    for (std::int64_t j = 0; j < m; ++j) {
      const double want = j == 0 ? static_cast<double>(m) : (j == 1 || j == m - 1) ? 0.5 * static_cast<double>(m) : 0.0;
      dev = std::max(dev, std::abs(v[static_cast<std::size_t>(j)] - want));
    }
    worst_pattern = std::max(worst_pattern, dev);
    pattern.expect(dev <= 1e-9, "m=" + std::to_string(m) + " grid deviates by " + fmt("%.3g", dev));
  }
  value.summary = "worst error " + fmt("%.2e", worst_value);
  pattern.summary = "worst deviation " + fmt("%.3g", worst_pattern) +
                    " (a witness with constant term 1 has grid mean 1, so its values cannot be m, m/2, 0)";
  return {value.finish("4a", "M_m([2, m/2-1]) = 1 + cos(2pi/m), even m = 4..64"),
          pattern.finish("4b", "witness grid values follow the pattern m, m/2, 0")};
}

CriterionResult full_grid() {
  Tally t;
  double worst = 0.0;
  for (std::int64_t m = 3; m <= 40; ++m) {
    const DiscreteResult d = solve_discrete(IndexSet::range(2, m / 2), m);
    const double err = d.unbounded ? INFINITY : std::abs(d.value_d() - 2.0);
    worst = std::max(worst, err);
    t.expect(err <= 1e-9, "m=" + std::to_string(m) + " off by " + fmt("%.2e", err));
  }
  t.summary = "worst error " + fmt("%.2e", worst);
  return t.finish("5", "M_m([2, m/2]) = 2, m = 3..40");
}

CriterionResult torus_line() {
  Tally t;
  const Domain omega = interval(Rational(1, 2), SpaceKind::Torus);
  double worst = 0.0;
  for (std::int64_t q : {3, 4, 5, 6, 7, 8, 9, 10, 12}) {
    const double target = q % 2 == 0 ? 0.5 * (1.0 + std::cos(2.0 * kPi / static_cast<double>(q))) : 1.0;
    for (std::int64_t p = 1; p < q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      const PointwiseResult r = pointwise_torus(omega, Point::rational({Rational(p, q)}));
      const double err = std::max(std::abs(r.enclosure.lower - target), std::abs(r.enclosure.upper - target));
      worst = std::max(worst, err);
      t.expect(err <= 1e-9, "z=" + std::to_string(p) + "/" + std::to_string(q) + " off by " + fmt("%.2e", err));
    }
  }
  t.summary = "worst error " + fmt("%.2e", worst);
  return t.finish("6", "M*((-1/2,1/2), p/q): (1+cos(2pi/q))/2 for even q, 1 for odd q");
}

CriterionResult torus_plane() {
  Tally t;
  const Domain omega(SpaceKind::Torus, 2, make_box({Rational(1, 2), Rational(1, 2)}));
  const std::vector<std::pair<std::vector<Rational>, double>> cases = {
      {{Rational(1, 4), Rational(1, 4)}, 0.5},
      {{Rational(1, 8), Rational(3, 8)}, 0.5 * (1.0 + std::cos(kPi / 4.0))},
      {{Rational(1, 2), Rational(1, 3)}, 1.0},
      {{Rational(1, 3), Rational(1, 5)}, 1.0},
  };
  double worst = 0.0;
  for (const auto& [z, target] : cases) {
    const Point p = Point::rational(z);
    const PointwiseResult r = pointwise_torus(omega, p);
    const double err = std::max(std::abs(r.enclosure.lower - target), std::abs(r.enclosure.upper - target));
    worst = std::max(worst, err);
    std::string why;
    if (r.enclosure.status == EnclosureStatus::TrivialZero) why = " (" + r.enclosure.upper_certificate.name + ")";
    t.expect(err <= 1e-9, "z=" + p.describe() + " off by " + fmt("%.2e", err) + why);
  }
  t.summary = "worst error " + fmt("%.2e", worst);
  return t.finish("7", "two-dimensional torus values");
}

struct RandomInstance {
  IndexSet h;
  std::int64_t m;
};

std::vector<RandomInstance> random_instances(std::size_t count) {
  std::mt19937_64 rng(kSeed);
  std::uniform_int_distribution<std::int64_t> pick_m(2, 32);
  std::bernoulli_distribution keep(0.5);
  std::vector<RandomInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t m = pick_m(rng);
    std::set<std::int64_t> s;
    for (std::int64_t k = 2; k <= m / 2; ++k) {
      if (keep(rng)) s.insert(k);
    }
    out.push_back({IndexSet::finite(s), m});
  }
  return out;
}

CriterionResult oracle_equivalence() {
  Tally t;
  const auto cases = random_instances(50);
  double worst = 0.0;
  for (const auto& c : cases) {
    const auto a = solve_discrete(c.h, c.m, lp::Arithmetic::Float);
    const auto b = solve_discrete_value_space(c.h, c.m, lp::Arithmetic::Float);
    const std::string name = set_name(c.h) + " m=" + std::to_string(c.m);
    if (a.unbounded || b.unbounded) {
      t.expect(a.unbounded == b.unbounded, name + ": only one side unbounded");
      continue;
    }
    const double err = std::abs(a.value_d() - b.value_d());
    worst = std::max(worst, err);
    t.expect(err <= 1e-8, name + " float values differ by " + fmt("%.2e", err));
  }
  int exact = 0, compared = 0;
  Rational largest_gap = 0;
  for (const auto& c : cases) {
    if (compared == 10) break;
    const auto a = solve_discrete(c.h, c.m, lp::Arithmetic::Rational);
    if (a.unbounded) continue;
    const auto b = solve_discrete_value_space(c.h, c.m, lp::Arithmetic::Rational);
    ++compared;
    const Rational gap = abs(a.value - b.value);
    if (gap > largest_gap) largest_gap = gap;
    if (gap == 0) ++exact;
    t.expect(gap == 0, set_name(c.h) + " m=" + std::to_string(c.m) + " rational values differ by " +
                           fmt("%.2e", gap.get_d()));
  }
  t.summary = "float worst " + fmt("%.2e", worst) + ", rational exact on " + std::to_string(exact) + "/" +
              std::to_string(compared) + " (largest gap " + fmt("%.2e", largest_gap.get_d()) + ")";
  return t.finish("8", "coefficient-space and value-space LPs agree (50 seeded instances)");
}

// |z| for l1 and linf, |z|^2 for l2 (kept rational).
Rational norm_measure(const NormP& p, const std::vector<Rational>& z) {
  Rational s = 0;
  for (const auto& v : z) {
    if (p.kind == NormP::Kind::Inf) {
      s = std::max(s, Rational(abs(v)));
    } else if (p.kind == NormP::Kind::One) {
      s += abs(v);
    } else {
      s += v * v;
    }
  }
  return s;
}

CriterionResult geometry_iff() {
  Tally t;
  std::mt19937_64 rng(kSeed + 9);
  std::uniform_int_distribution<std::int64_t> den(2, 60);
  std::uniform_int_distribution<std::int64_t> small(1, 8);
  const std::vector<std::pair<NormP, std::string>> norms = {
      {NormP::inf(), "linf"}, {NormP::one(), "l1"}, {NormP::two(), "l2"}};
  int tested = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& [p, pname] = norms[static_cast<std::size_t>(i % 3)];
    const Domain omega(SpaceKind::Euclidean, 2, make_ball(p, Rational(1), {Rational(0), Rational(0)}));
    std::vector<Rational> z;
    if (i % 4 == 3) {
      // Norm exactly 1/n: the boundary case of the equivalence.
      const std::int64_t n = small(rng);
      switch (p.kind) {
        case NormP::Kind::Inf:
          z = {ratio(1, n), ratio(-1, 2 * n)};
          break;
        case NormP::Kind::One:
          z = {ratio(1, 3 * n), ratio(2, 3 * n)};
          break;
        default:
          z = {ratio(3, 5 * n), ratio(-4, 5 * n)};
      }
    } else {
      while (true) {
        z.clear();
        for (int c = 0; c < 2; ++c) {
          const std::int64_t q = den(rng);
          std::uniform_int_distribution<std::int64_t> num(-q, q);
          z.push_back(Rational(num(rng), q));
        }
        const Rational s = norm_measure(p, z);
        const Rational lo = p.kind == NormP::Kind::Two ? Rational(1, 81) : Rational(1, 9);
        if (s >= lo && s < 1) break;
      }
    }
    // n with 1/(n+1) <= |z| < 1/n, from exact arithmetic (squared for l2).
    const Rational s = norm_measure(p, z);
    std::int64_t n = 1;
    auto below = [&](std::int64_t k) {
      return p.kind == NormP::Kind::Two ? Rational(k * k) * s < 1 : Rational(k) * s < 1;
    };
    while (below(n + 1)) ++n;
    const Point zp = Point::rational(z);
    const SpaceIndices si = compute_H_space(omega, zp);
    std::vector<std::int64_t> want;
    for (std::int64_t k = 2; k <= n; ++k) want.push_back(k);
    ++tested;
    t.expect(si.indices == want, pname + " z=" + zp.describe() + " gives a different H");
  }
  t.summary = std::to_string(tested) + " points";
  return t.finish("9", "H(ball, z) = [2, n] exactly when 1/(n+1) <= |z| < 1/n");
}

CriterionResult bounds_and_orderings() {
  Tally t;
  auto universal_m = [&](const Enclosure& e, const std::string& what) {
    t.expect(e.lower >= 0.0 && e.lower <= e.upper && e.upper <= 2.0, what + " violates 0 <= lower <= upper <= 2");
  };
  auto universal_pointwise = [&](const Enclosure& e, const std::string& what) {
    t.expect(e.lower >= 0.0 && e.lower <= e.upper && e.upper <= 1.0, what + " violates 0 <= lower <= upper <= 1");
  };

  // Monotonicity in H and relaxation ordering on nested random pairs.
  std::mt19937_64 rng(kSeed + 10);
  std::uniform_int_distribution<std::int64_t> pick_m(6, 32);
  std::bernoulli_distribution keep(0.5);
  BracketConfig small;
  small.n_trunc = 16;
  for (int i = 0; i < 30; ++i) {
    const std::int64_t m = pick_m(rng);
    std::set<std::int64_t> big, sub;
    for (std::int64_t k = 2; k <= m / 2; ++k) {
      if (keep(rng)) {
        big.insert(k);
        if (keep(rng)) sub.insert(k);
      }
    }
    const IndexSet h1 = IndexSet::finite(sub), h2 = IndexSet::finite(big);
    const std::string name = set_name(h1) + " in " + set_name(h2) + " m=" + std::to_string(m);
    const DiscreteResult d1 = solve_discrete(h1, m), d2 = solve_discrete(h2, m);
    for (const auto* d : {&d1, &d2}) {
      if (!d->unbounded) t.expect(d->value >= 0 && d->value <= 2, name + ": M_m outside [0, 2]");
    }
    if (!d2.unbounded) t.expect(!d1.unbounded && d1.value <= d2.value, name + ": M_m not monotone");
    const Enclosure b1 = bracket_M(h1, small), b2 = bracket_M(h2, small);
    universal_m(b1, set_name(h1));
    universal_m(b2, set_name(h2));
    t.expect(b1.lower <= b2.upper, name + ": bracket lower bounds not ordered");
    if (!d2.unbounded) t.expect(d2.value_d() >= b2.lower - 1e-9, name + ": M_m below the certified lower bound");
  }

  // M(Omega, z) <= M*(Omega, z) for domains inside the torus cube.
  std::uniform_int_distribution<std::int64_t> pick_q(3, 24);
  const std::vector<Rational> halves = {Rational(1, 2), Rational(2, 5), Rational(1, 3), Rational(3, 10)};
  for (int i = 0; i < 10; ++i) {
    const Rational a = halves[static_cast<std::size_t>(i) % halves.size()];
    std::int64_t q = pick_q(rng);
    std::uniform_int_distribution<std::int64_t> pick_p(1, q - 1);
    Rational z(pick_p(rng), q);
    while (z >= a) z /= 2;
    const Domain space = interval(a, SpaceKind::Euclidean);
    const Domain torus = interval(a, SpaceKind::Torus);
    const Point zp = Point::rational({z});
    const PointwiseResult s = pointwise_space(space, zp);
    const PointwiseResult r = pointwise_torus(torus, zp);
    const std::string name = "a=" + to_string(a) + " z=" + to_string(z);
    universal_pointwise(s.enclosure, name + " (space)");
    universal_pointwise(r.enclosure, name + " (torus)");
    t.expect(s.enclosure.lower <= r.enclosure.upper + 1e-9, name + ": M exceeds M*");
  }
  return t.finish("10", "universal bounds, H-monotonicity, M_m >= lower bound, M <= M*");
}

CriterionResult limit_relation() {
  Tally t;
  const Domain omega = interval(Rational(1), SpaceKind::Euclidean);
  const Point z = Point::rational({Rational(3, 10)});
  const LimitScan scan = limit_scan(omega, z, {4, 8, 16, 64});
  const double target = std::cos(kPi / 5.0);
  std::ostringstream os;
  for (std::size_t i = 0; i < scan.rows.size(); ++i) {
    const auto& row = scan.rows[i];
    os << (i ? ", " : "rows ") << "N=" << row.n << ": " << fmt("%.6f", row.result.enclosure.upper);
    t.expect(row.result.enclosure.lower >= scan.space.enclosure.lower - 1e-9,
             "N=" + std::to_string(row.n) + " below M(Omega, z)");
    if (i > 0) {
      t.expect(row.result.enclosure.lower <= scan.rows[i - 1].result.enclosure.upper + 1e-12,
               "N=" + std::to_string(row.n) + " exceeds the previous row");
    }
  }
  const double last = scan.rows.back().result.enclosure.midpoint();
  t.expect(std::abs(last - target) <= 0.01, "N=64 row " + fmt("%.6f", last) + " not within 0.01 of cos(pi/5)");
  t.summary = os.str();
  return t.finish("11", "limit of M*(Omega/N, z/N) towards M((-1,1), 3/10) = cos(pi/5)");
}

CriterionResult constructions() {
  Tally t;
  const Domain line = interval(Rational(1), SpaceKind::Euclidean);
  const Domain circle = interval(Rational(1, 2), SpaceKind::Torus);
  const Enclosure fejer = bracket_M(IndexSet::range(2, 3));
  CosinePolynomial two_atoms(1.0);
  two_atoms.set_coeff(1, 1.0);
  struct Case {
    std::string name;
    const Domain* omega;
    Point z;
    CosinePolynomial phi;
    double value;
  };
  const std::vector<Case> cases = {
      {"(-1,1), z=3/10", &line, Point::rational({Rational(3, 10)}), fejer.lower_witness, std::cos(kPi / 5.0)},
      {"(-1,1), z=3/5", &line, Point::rational({Rational(3, 5)}), two_atoms, 0.5},
      {"torus, z=1/5", &circle, Point::rational({Rational(1, 5)}), witness_zinomega(5), 1.0},
  };
  bool control_failed = false;
  for (const auto& c : cases) {
    const Construction built = build_extremal_function(*c.omega, c.z, c.phi);
    const double half_lambda = 0.5 * built.f.phi().lambda();
    const auto xi = default_frequencies(built.f);
    const VerifyReport r = verify_function(built.f, *c.omega, c.z, half_lambda, xi);
    t.expect(r.value_at_zero.passed, c.name + ": check (a)");
    t.expect(r.value_at_z.passed, c.name + ": check (b)");
    t.expect(r.support.passed, c.name + ": check (c)");
    t.expect(r.positive_definite.passed, c.name + ": check (d)");
    t.expect(std::abs(built.f(c.z.approx()) - c.value) <= 1e-8, c.name + ": f(z) far from the extremal value");
    if (&c == &cases.front()) {
      const ExtremalFunction bad = built.f.perturbed(built.f.atom_at(1), 0.1);
      control_failed = !verify_function(bad, *c.omega, c.z, half_lambda, xi).positive_definite.passed;
    }
  }
  t.expect(control_failed, "perturbed atom weight was not caught by check (d)");
  t.summary = control_failed ? "negative control rejected by (d)" : "negative control accepted";
  return t.finish("12", "constructed functions pass checks (a)-(d); perturbed control fails (d)");
}

}  // namespace

std::string format_row(const CriterionResult& row) {
  char head[32];
  std::snprintf(head, sizeof head, "[%s] %-3s ", row.passed ? "PASS" : "FAIL", row.id.c_str());
  std::ostringstream os;
  os << head << row.title << " (" << fmt("%.1f s", row.seconds) << ")\n         " << row.detail;
  return os.str();
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_row) {
  using Runner = std::function<std::vector<CriterionResult>()>;
  auto one = [](CriterionResult (*f)()) { return Runner([f] { return std::vector<CriterionResult>{f()}; }); };
  const std::vector<std::pair<std::string, Runner>> table = {
      {"1", one(fejer_values)},         {"2", one(single_frequency_families)},
      {"3", one(parity_sets)},          {"4", Runner(even_grid)},
      {"5", one(full_grid)},            {"6", one(torus_line)},
      {"7", one(torus_plane)},          {"8", one(oracle_equivalence)},
      {"9", one(geometry_iff)},         {"10", one(bounds_and_orderings)},
      {"11", one(limit_relation)},      {"12", one(constructions)},
  };
  std::vector<CriterionResult> out;
  for (const auto& [id, run] : table) {
    auto wanted = [&](const std::string& row_id) {
      return options.only.empty() || options.only.count(row_id) || options.only.count(id);
    };
    if (!options.only.empty() && !options.only.count(id) && !options.only.count(id + "a") &&
        !options.only.count(id + "b")) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    std::vector<CriterionResult> rows;
    try {
      rows = run();
    } catch (const std::exception& e) {
      CriterionResult r;
      r.id = id;
      r.title = "criterion " + id;
      r.detail = std::string("error: ") + e.what();
      rows = {r};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : rows) {
      if (!wanted(r.id)) continue;
      r.seconds = secs / static_cast<double>(rows.size());
      if (on_row) on_row(r);
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace turan
