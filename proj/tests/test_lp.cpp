#include "turan/lp.hpp"
#include "turan/solver.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace turan;
using lp::Arithmetic;
using lp::Relation;
using lp::Status;

namespace {

lp::LinearProgram single_lambda() {
  lp::LinearProgram p(1);
  p.objective = {1};
  p.bounds = {lp::VariableBound::free()};
  return p;
}

// Dual objective from the row multipliers: sum y_i b_i (bounds all free or
// at zero in these programs).
Rational dual_objective(const lp::LinearProgram& p, const lp::Solution& s) {
  Rational v = 0;
  for (std::size_t i = 0; i < p.constraints.size(); ++i) v += s.duals[i] * p.constraints[i].rhs;
  return v;
}

// Random bounded maximisation: x in a box [0, u], random <= rows.
lp::LinearProgram random_program(std::mt19937_64& rng, std::size_t n, std::size_t rows) {
  std::uniform_int_distribution<int> c(-9, 9);
  lp::LinearProgram p(n);
  for (auto& o : p.objective) o = c(rng);
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<Rational> a(n);
    for (auto& x : a) x = ratio(c(rng), 1 + std::abs(c(rng)));
    p.add(a, Relation::LessEqual, Rational(1 + std::abs(c(rng))));
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> a(n);
    a[j] = 1;
    p.add(a, Relation::LessEqual, 10);
  }
  return p;
}

}  // namespace

TEST(Lp, Optimal) {
  lp::LinearProgram p = single_lambda();
  p.add({1}, Relation::GreaterEqual, -1);  // 1 + lambda >= 0
  p.add({-1}, Relation::GreaterEqual, -1);  // 1 - lambda >= 0
  for (Arithmetic a : {Arithmetic::Float, Arithmetic::Rational}) {
    const auto s = lp::solve(p, a);
    ASSERT_EQ(s.status, Status::Optimal);
    EXPECT_EQ(s.value, 1);
    EXPECT_EQ(s.x[0], 1);
  }
}

TEST(Lp, Unbounded) {
  for (Arithmetic a : {Arithmetic::Float, Arithmetic::Rational}) {
    EXPECT_EQ(lp::solve(single_lambda(), a).status, Status::Unbounded);
  }
}

TEST(Lp, Infeasible) {
  lp::LinearProgram p = single_lambda();
  p.add({1}, Relation::LessEqual, 0);
  p.add({1}, Relation::GreaterEqual, 1);
  for (Arithmetic a : {Arithmetic::Float, Arithmetic::Rational}) {
    EXPECT_EQ(lp::solve(p, a).status, Status::Infeasible);
  }
}

TEST(Lp, EqualityAndShiftedBounds) {
  // max x + y, x + y + z = 4, 1 <= x <= 2, y <= 1, z >= 1/2
  lp::LinearProgram p(3);
  p.objective = {1, 1, 0};
  p.bounds = {{Rational(1), Rational(2)}, {Rational(0), Rational(1)}, {Rational(1, 2), std::nullopt}};
  p.add({1, 1, 1}, Relation::Equal, 4);
  const auto s = lp::solve(p, Arithmetic::Rational);
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_EQ(s.value, 3);
  EXPECT_EQ(s.x[2], 1);
}

TEST(Lp, ResourceLimit) {
  lp::Options tight = lp::default_options();
  tight.max_bits = 4;
  lp::LinearProgram p(2);
  p.objective = {1, 1};
  p.add({Rational(17, 13), Rational(19, 7)}, Relation::LessEqual, Rational(101, 3));
  p.add({Rational(23, 11), Rational(5, 29)}, Relation::LessEqual, Rational(97, 5));
  EXPECT_THROW(lp::solve(p, Arithmetic::Rational, tight), lp::ResourceLimitError);
}

TEST(LpProperty, StrongDualityOnRandomPrograms) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 60; ++i) {
    const auto p = random_program(rng, 2 + rng() % 6, 2 + rng() % 8);
    const auto exact = lp::solve(p, Arithmetic::Rational);
    const auto approx = lp::solve(p, Arithmetic::Float);
    ASSERT_EQ(exact.status, Status::Optimal);
    ASSERT_EQ(approx.status, Status::Optimal);
    EXPECT_EQ(exact.value, exact.dual_value);
    EXPECT_EQ(exact.value, dual_objective(p, exact));
    EXPECT_EQ(exact.dual_infeasibility, 0);
    EXPECT_NEAR(approx.value_d(), approx.dual_value.get_d(), 1e-8);
    EXPECT_NEAR(approx.value_d(), exact.value_d(), 1e-7);
  }
}

TEST(LpProperty, RationalSolvesAreDeterministic) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 10; ++i) {
    const auto p = random_program(rng, 5, 6);
    const auto a = lp::solve(p, Arithmetic::Rational), b = lp::solve(p, Arithmetic::Rational);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.duals, b.duals);
    EXPECT_EQ(a.pivots, b.pivots);
  }
}

// The grid programs of the solver module, in both arithmetics.
TEST(LpProperty, GridProgramsAgreeAcrossArithmetic) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 40; ++i) {
    const std::int64_t m = 5 + static_cast<std::int64_t>(rng() % 60);
    std::set<std::int64_t> e;
    for (std::int64_t k = 2; 2 * k <= m; ++k) {
      if (rng() % 3 == 0) e.insert(k);
    }
    const IndexSet h = IndexSet::finite(e);
    const auto exact = solve_discrete(h, m, Arithmetic::Rational);
    const auto approx = solve_discrete(h, m, Arithmetic::Float);
    ASSERT_EQ(exact.unbounded, approx.unbounded);
    if (!exact.unbounded) EXPECT_NEAR(exact.value_d(), approx.value_d(), 1e-7) << h.describe() << " m=" << m;
  }
}
