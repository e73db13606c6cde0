#include "turan/lp.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <cstdlib>
#include <limits>
#include <type_traits>

namespace turan::lp {

namespace {

template <class T>
struct Num;

template <>
struct Num<double> {
  static constexpr double kEps = 1e-9;
  static constexpr double kFlush = 1e-13;
  static bool negative(double v) { return v < -kEps; }
  static bool positive(double v) { return v > kEps; }
  static bool nonzero(double v) { return std::abs(v) > kEps; }
  static bool exactly_zero(double v) { return v == 0.0; }
  static double from(const Rational& r) { return r.get_d(); }
  static Rational to(double v) { return Rational(v); }
  static void tidy(double& v) {
    if (std::abs(v) < kFlush) v = 0.0;
  }
  static void check_size(const double&, std::size_t) {}
  // Strictly smaller beyond round-off; near-equal ratios count as ties.
  static bool before(double a, double b) { return a < b - 1e-12 * (1.0 + std::abs(b)); }
};

template <>
struct Num<Rational> {
  static bool negative(const Rational& v) { return sgn(v) < 0; }
  static bool positive(const Rational& v) { return sgn(v) > 0; }
  static bool nonzero(const Rational& v) { return sgn(v) != 0; }
  static bool exactly_zero(const Rational& v) { return sgn(v) == 0; }
  static Rational from(const Rational& r) { return r; }
  static Rational to(const Rational& v) { return v; }
  static void tidy(Rational&) {}
  static bool before(const Rational& a, const Rational& b) { return a < b; }
  static void check_size(const Rational& v, std::size_t max_bits) {
    if (bit_size(v) > max_bits) {
      throw ResourceLimitError("rational simplex exceeded " + std::to_string(max_bits) +
                               " bits; raise TURAN_MAX_BITS or use float arithmetic");
    }
  }
};

enum class ColumnKind { Structural, Slack, Surplus, Artificial };

template <class T>
class Simplex {
 public:
  Simplex(const LinearProgram& program, const Options& options) : options_(options) { build(program); }

  Solution run(Arithmetic arithmetic) {
    Solution sol;
    sol.arithmetic = arithmetic;

    if constexpr (std::is_same_v<T, double>) {
      if (!options_.warm_rows.empty() && !has_artificials_) {
        Simplex warm(*this);
        if (auto st = warm.warm_start(options_.warm_rows)) {
          sol.pivots = warm.pivots_;
          sol.status = *st;
          if (*st == Status::Optimal) warm.extract(sol);
          return sol;
        }
        pivots_ = warm.pivots_;
      }
    }

    if (has_artificials_) {
      std::vector<T> phase1(cols_, T(0));
      for (std::size_t j = 0; j < cols_; ++j) {
        if (kind_[j] == ColumnKind::Artificial) phase1[j] = T(-1);
      }
      price(phase1);
      Status st = iterate(false);
      (void)st;  // phase 1 is bounded by construction
      if (Num<T>::negative(cost_[cols_])) {
        sol.status = Status::Infeasible;
        sol.pivots = pivots_;
        return sol;
      }
      drive_out_artificials();
    }

    price(objective_);
    Status st = iterate(true);
    sol.pivots = pivots_;
    if (st != Status::Optimal) {
      sol.status = st;
      return sol;
    }
    sol.status = Status::Optimal;
    extract(sol);
    return sol;
  }

 private:
  void build(const LinearProgram& p) {
    n_orig_ = p.num_vars;
    if (p.objective.size() != n_orig_) throw std::invalid_argument("objective length differs from num_vars");
    if (!p.bounds.empty() && p.bounds.size() != n_orig_) {
      throw std::invalid_argument("bounds length differs from num_vars");
    }

    // x_j = offset_j + scale_j * y_j with y_j >= 0 (or free).
    offset_.assign(n_orig_, Rational(0));
    scale_.assign(n_orig_, 1);
    std::vector<bool> free_var(n_orig_, false);
    struct Row {
      std::vector<T> a;
      Relation rel;
      T b;
    };
    std::vector<Row> bound_rows;
    for (std::size_t j = 0; j < n_orig_; ++j) {
      VariableBound vb = p.bounds.empty() ? VariableBound::nonnegative() : p.bounds[j];
      if (vb.lower) {
        offset_[j] = *vb.lower;
        if (vb.upper) {
          std::vector<T> a(n_orig_, T(0));
          a[j] = T(1);
          bound_rows.push_back({std::move(a), Relation::LessEqual, Num<T>::from(Rational(*vb.upper - *vb.lower))});
        }
      } else if (vb.upper) {
        offset_[j] = *vb.upper;
        scale_[j] = -1;
      } else {
        free_var[j] = true;
      }
    }
    std::vector<std::size_t> shifted;
    for (std::size_t j = 0; j < n_orig_; ++j) {
      if (sgn(offset_[j]) != 0) shifted.push_back(j);
    }

    const_term_ = 0;
    for (std::size_t j : shifted) const_term_ += p.objective[j] * offset_[j];

    std::vector<Row> all;
    all.reserve(p.constraints.size() + bound_rows.size());
    for (const auto& con : p.constraints) {
      if (con.coeffs.size() != n_orig_) throw std::invalid_argument("constraint row length differs from num_vars");
      Row r{std::vector<T>(n_orig_), con.relation, T(0)};
      Rational b = con.rhs;
      for (std::size_t j : shifted) b -= con.coeffs[j] * offset_[j];
      r.b = Num<T>::from(b);
      for (std::size_t j = 0; j < n_orig_; ++j) {
        r.a[j] = Num<T>::from(con.coeffs[j]);
        if (scale_[j] < 0) r.a[j] = -r.a[j];
      }
      all.push_back(std::move(r));
    }
    num_constraints_ = all.size();
    for (auto& r : bound_rows) all.push_back(std::move(r));

    rows_ = all.size();
    row_sign_.assign(rows_, 1);
    std::size_t extra = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (all[i].b < T(0)) {
        row_sign_[i] = -1;
        for (auto& v : all[i].a) v = -v;
        all[i].b = -all[i].b;
        if (all[i].rel == Relation::LessEqual) {
          all[i].rel = Relation::GreaterEqual;
        } else if (all[i].rel == Relation::GreaterEqual) {
          all[i].rel = Relation::LessEqual;
        }
      }
      extra += all[i].rel == Relation::GreaterEqual ? 2 : 1;
    }

    cols_ = n_orig_ + extra;
    tab_.assign(rows_, std::vector<T>(cols_ + 1, T(0)));
    kind_.assign(cols_, ColumnKind::Structural);
    free_.assign(cols_, false);
    sign_.assign(cols_, 1);
    basis_.assign(rows_, 0);
    active_.assign(rows_, true);
    unit_col_.assign(rows_, 0);
    nz_.reserve(cols_ + 1);
    for (std::size_t j = 0; j < n_orig_; ++j) free_[j] = free_var[j];

    std::size_t next = n_orig_;
    for (std::size_t i = 0; i < rows_; ++i) {
      std::copy(all[i].a.begin(), all[i].a.end(), tab_[i].begin());
      tab_[i][cols_] = all[i].b;
      switch (all[i].rel) {
        case Relation::LessEqual:
          kind_[next] = ColumnKind::Slack;
          tab_[i][next] = T(1);
          basis_[i] = unit_col_[i] = next++;
          break;
        case Relation::GreaterEqual:
          kind_[next] = ColumnKind::Surplus;
          tab_[i][next++] = T(-1);
          [[fallthrough]];
        case Relation::Equal:
          kind_[next] = ColumnKind::Artificial;
          tab_[i][next] = T(1);
          basis_[i] = unit_col_[i] = next++;
          has_artificials_ = true;
          break;
      }
    }
    initial_ = tab_;

    objective_.assign(cols_, T(0));
    for (std::size_t j = 0; j < n_orig_; ++j) {
      objective_[j] = Num<T>::from(p.objective[j]);
      if (scale_[j] < 0) objective_[j] = -objective_[j];
    }
  }

  // Reduced costs d_j = c_B B^-1 A_j - c_j; cost_[cols_] = c_B x_B.
  void price(const std::vector<T>& c) {
    cost_.assign(cols_ + 1, T(0));
    for (std::size_t j = 0; j < cols_; ++j) cost_[j] = -c[j] * T(sign_[j]);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i]) continue;
      const T cb = c[basis_[i]] * T(sign_[basis_[i]]);
      if (Num<T>::exactly_zero(cb)) continue;
      for (std::size_t j = 0; j <= cols_; ++j) {
        if (Num<T>::nonzero(tab_[i][j])) cost_[j] += cb * tab_[i][j];
      }
    }
    for (auto& v : cost_) Num<T>::tidy(v);
  }

  Status iterate(bool block_artificials) {
    std::vector<bool> is_basic(cols_, false);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (active_[i]) is_basic[basis_[i]] = true;
    }
    std::size_t degenerate_run = 0;
    bool bland = false;
    while (true) {
      if (pivots_ >= options_.max_pivots) throw ResourceLimitError("simplex pivot limit reached");

      std::size_t enter = cols_;
      bool flip = false;
      T best(0);
      for (std::size_t j = 0; j < cols_; ++j) {
        if (is_basic[j]) continue;
        if (block_artificials && kind_[j] == ColumnKind::Artificial) continue;
        const T& d = cost_[j];
        bool up = Num<T>::negative(d);
        bool down = free_[j] && Num<T>::positive(d);
        if (!up && !down) continue;
        T score = up ? T(d) : T(-d);
        if (enter == cols_ || score < best) {
          enter = j;
          best = score;
          flip = down;
          if (bland) break;
        }
      }
      if (enter == cols_) return Status::Optimal;

      if (flip) {
        sign_[enter] = -sign_[enter];
        for (std::size_t i = 0; i < rows_; ++i) tab_[i][enter] = -tab_[i][enter];
        cost_[enter] = -cost_[enter];
      }

      std::size_t leave = choose_leaving(enter, bland);
      if (leave == rows_) return Status::Unbounded;

      if (!Num<T>::positive(tab_[leave][cols_])) {
        if (++degenerate_run >= options_.degenerate_switch) bland = true;
      } else {
        degenerate_run = 0;
      }
      is_basic[basis_[leave]] = false;
      is_basic[enter] = true;
      pivot(leave, enter);
    }
  }

  // Exact mode: minimum ratio, ties to the lowest basic index. Float mode
  // (outside Bland's rule): Harris' two-pass test, which allows a tolerance
  // in the ratios and then takes the largest pivot among the near-minimal
  // rows.
  std::size_t choose_leaving(std::size_t enter, bool bland) const {
    std::size_t leave = rows_;
    T best_ratio(0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i] || free_[basis_[i]]) continue;
      if (!Num<T>::positive(tab_[i][enter])) continue;
      T ratio = tab_[i][cols_] / tab_[i][enter];
      if (leave == rows_ || Num<T>::before(ratio, best_ratio) ||
          (!Num<T>::before(best_ratio, ratio) && basis_[i] < basis_[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if constexpr (std::is_same_v<T, double>) {
      if (leave == rows_ || bland) return leave;
      double bound = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!active_[i] || free_[basis_[i]]) continue;
        const double a = tab_[i][enter];
        if (a <= Num<double>::kEps) continue;
        bound = std::min(bound, (std::max(tab_[i][cols_], 0.0) + Num<double>::kEps) / a);
      }
      double best_pivot = 0.0;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!active_[i] || free_[basis_[i]]) continue;
        const double a = tab_[i][enter];
        if (a <= Num<double>::kEps) continue;
        if (std::max(tab_[i][cols_], 0.0) / a <= bound && a > best_pivot) {
          best_pivot = a;
          leave = i;
        }
      }
    }
    return leave;
  }

  void pivot(std::size_t r, std::size_t s) {
    ++pivots_;
    std::vector<T>& prow = tab_[r];
    const T inv = T(1) / prow[s];
    std::vector<std::size_t>& nz = nz_;
    nz.clear();
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (Num<T>::exactly_zero(prow[j])) continue;
      if (j == s) {
        prow[j] = T(1);
      } else {
        prow[j] *= inv;
        Num<T>::tidy(prow[j]);
        Num<T>::check_size(prow[j], options_.max_bits);
      }
      nz.push_back(j);
    }
    auto eliminate = [&](std::vector<T>& row) {
      if (Num<T>::exactly_zero(row[s])) return;
      const T f = row[s];
      for (std::size_t j : nz) {
        row[j] -= f * prow[j];
        Num<T>::tidy(row[j]);
      }
      row[s] = T(0);
    };
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      eliminate(tab_[i]);
      Num<T>::check_size(tab_[i][cols_], options_.max_bits);
    }
    eliminate(cost_);
    basis_[r] = s;
  }

  // Crash basis from the hinted rows followed by dual simplex. Returns
  // nothing when the crash basis is not dual feasible or a pivot breaks down.
  std::optional<Status> warm_start(const std::vector<std::size_t>& hint) {
    std::vector<bool> hinted(rows_, false);
    for (std::size_t r : hint) {
      if (r < num_constraints_) hinted[r] = true;
    }
    std::vector<bool> used(rows_, false);
    price(objective_);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < n_orig_; ++j) {
        if (!free_[j] || std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        std::size_t best = rows_;
        double size = 1e-7;
        for (std::size_t i = 0; i < rows_; ++i) {
          if (used[i] || (pass == 0 && !hinted[i])) continue;
          if (std::abs(tab_[i][j]) > size) {
            size = std::abs(tab_[i][j]);
            best = i;
          }
        }
        if (best == rows_) continue;
        used[best] = true;
        pivot(best, j);
      }
    }
    price(objective_);
    for (std::size_t j = 0; j < cols_; ++j) {
      const bool basic = std::find(basis_.begin(), basis_.end(), j) != basis_.end();
      if (basic) continue;
      if (Num<T>::negative(cost_[j]) || (free_[j] && Num<T>::nonzero(cost_[j]))) return std::nullopt;
    }
    // Dual simplex: restore primal feasibility while keeping d >= 0.
    while (true) {
      if (pivots_ >= options_.max_pivots) return std::nullopt;
      std::size_t leave = rows_;
      T worst(-Num<T>::kEps);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!active_[i] || free_[basis_[i]]) continue;
        if (tab_[i][cols_] < worst) {
          worst = tab_[i][cols_];
          leave = i;
        }
      }
      if (leave == rows_) break;
      std::size_t enter = cols_;
      T best_ratio(0);
      for (std::size_t j = 0; j < cols_; ++j) {
        if (free_[j] || kind_[j] == ColumnKind::Artificial) continue;
        const T a = tab_[leave][j];
        if (a >= -Num<T>::kEps) continue;
        const T ratio = std::max(cost_[j], T(0)) / -a;
        if (enter == cols_ || Num<T>::before(ratio, best_ratio) ||
            (!Num<T>::before(best_ratio, ratio) && -a > -tab_[leave][enter])) {
          enter = j;
          best_ratio = ratio;
        }
      }
      if (enter == cols_) return Status::Infeasible;
      pivot(leave, enter);
    }
    // Clean up any remaining primal improvement.
    Status st = iterate(true);
    return st;
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!active_[i] || kind_[basis_[i]] != ColumnKind::Artificial) continue;
      std::size_t col = cols_;
      for (std::size_t j = 0; j < cols_; ++j) {
        if (kind_[j] != ColumnKind::Artificial && Num<T>::nonzero(tab_[i][j])) {
          col = j;
          break;
        }
      }
      if (col == cols_) {
        active_[i] = false;  // redundant row
      } else {
        pivot(i, col);
      }
    }
  }

  void extract(Solution& sol) {
    std::vector<T> y(cols_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (active_[i]) y[basis_[i]] = tab_[i][cols_] * T(sign_[basis_[i]]);
    }

    sol.x.assign(n_orig_, Rational(0));
    Rational value = const_term_;
    for (std::size_t j = 0; j < n_orig_; ++j) {
      Rational yj = Num<T>::to(y[j]);
      sol.x[j] = offset_[j] + scale_[j] * yj;
      value += Num<T>::to(objective_[j]) * yj;
    }
    sol.value = value;

    // Row duals: the reduced cost of each row's initial unit column.
    std::vector<T> dual(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i) {
      if (active_[i]) dual[i] = cost_[unit_col_[i]];
    }
    Rational dual_value = const_term_;
    for (std::size_t i = 0; i < rows_; ++i) dual_value += Num<T>::to(dual[i]) * Num<T>::to(initial_[i][cols_]);
    sol.dual_value = dual_value;

    sol.duals.assign(num_constraints_, Rational(0));
    for (std::size_t i = 0; i < num_constraints_; ++i) sol.duals[i] = Num<T>::to(dual[i]) * row_sign_[i];

    // Dual feasibility against the standard-form columns.
    T worst(0);
    for (std::size_t j = 0; j < cols_; ++j) {
      if (kind_[j] == ColumnKind::Artificial) continue;
      T r = -objective_[j];
      for (std::size_t i = 0; i < rows_; ++i) {
        if (Num<T>::nonzero(initial_[i][j])) r += dual[i] * initial_[i][j];
      }
      T violation = free_[j] ? (r < T(0) ? T(-r) : r) : (r < T(0) ? T(-r) : T(0));
      if (violation > worst) worst = violation;
    }
    sol.dual_infeasibility = Num<T>::to(worst);
  }

  Options options_;
  std::size_t n_orig_ = 0, rows_ = 0, cols_ = 0, num_constraints_ = 0;
  std::vector<Rational> offset_;
  std::vector<int> scale_;
  Rational const_term_;
  std::vector<std::vector<T>> tab_, initial_;
  std::vector<T> cost_, objective_;
  std::vector<ColumnKind> kind_;
  std::vector<bool> free_, active_;
  std::vector<int> sign_, row_sign_;
  std::vector<std::size_t> basis_, unit_col_, nz_;
  bool has_artificials_ = false;
  std::size_t pivots_ = 0;
};

}  // namespace

std::string to_string(Status status) {
  switch (status) {
    case Status::Optimal:
      return "optimal";
    case Status::Unbounded:
      return "unbounded";
    case Status::Infeasible:
      return "infeasible";
  }
  return "unknown";
}

std::vector<double> Solution::x_d() const {
  std::vector<double> out;
  out.reserve(x.size());
  for (const auto& v : x) out.push_back(v.get_d());
  return out;
}

Options default_options() {
  Options o;
  if (const char* env = std::getenv("TURAN_MAX_BITS")) {
    char* end = nullptr;
    unsigned long long bits = std::strtoull(env, &end, 10);
    if (end != env && bits > 0) o.max_bits = static_cast<std::size_t>(bits);
  }
  return o;
}

Solution solve(const LinearProgram& input, Arithmetic arithmetic, const Options& options) {
  // Callers may hand over mpq values built from (num, den) without reduction.
  LinearProgram program = input;
  for (auto& v : program.objective) v.canonicalize();
  for (auto& c : program.constraints) {
    for (auto& v : c.coeffs) v.canonicalize();
    c.rhs.canonicalize();
  }
  for (auto& b : program.bounds) {
    if (b.lower) b.lower->canonicalize();
    if (b.upper) b.upper->canonicalize();
  }
  if (arithmetic == Arithmetic::Float) {
    for (const auto& c : program.constraints) {
      for (const auto& v : c.coeffs) {
        if (!std::isfinite(v.get_d())) throw std::invalid_argument("non-finite LP coefficient");
      }
    }
    return Simplex<double>(program, options).run(arithmetic);
  }
  return Simplex<Rational>(program, options).run(arithmetic);
}

}  // namespace turan::lp
