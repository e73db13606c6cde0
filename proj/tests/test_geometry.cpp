#include "turan/geometry.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include <random>

using namespace turan;

namespace {

Rational q(const char* s) { return parse_rational(s); }

Point pt(std::initializer_list<const char*> coords) {
  std::vector<Rational> v;
  for (const char* c : coords) v.push_back(q(c));
  return Point::rational(v);
}

Domain box2(const char* hw = "1") { return Domain(SpaceKind::Euclidean, 2, make_box({q(hw), q(hw)})); }
Domain interval(const char* hw, SpaceKind space = SpaceKind::Euclidean) {
  return Domain(space, 1, make_box({q(hw)}));
}

std::vector<std::int64_t> space_h(const Domain& omega, const Point& z) { return compute_H_space(omega, z).indices; }

std::vector<std::int64_t> torus_h(const Domain& omega, const Point& z) {
  const auto r = compute_H_torus(omega, z, 64);
  if (std::holds_alternative<TrivialZero>(r)) return {-1};
  return std::get<TorusIndices>(r).indices;
}

// Random rational in [lo, hi) with denominator up to 997.
Rational random_between(std::mt19937_64& rng, const Rational& lo, const Rational& hi) {
  const std::int64_t den = 2 + static_cast<std::int64_t>(rng() % 996);
  const std::int64_t num = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(den));
  Rational t(num, den);
  t.canonicalize();
  return lo + (hi - lo) * t;
}

bool same_membership(const Domain& a, const Domain& b, double extent) {
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      std::vector<Rational> x{Rational(i - 20, 20) * exact_from_double(extent),
                              Rational(j - 20, 20) * exact_from_double(extent)};
      x.resize(a.dim());
      if (a.contains(Point::rational(x)) != b.contains(Point::rational(x))) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Geometry, OpenBoxMembership) {
  EXPECT_TRUE(box2().contains(pt({"3/5", "0"})));
  EXPECT_FALSE(box2().contains(pt({"1", "0"})));
  EXPECT_FALSE(interval("1/2", SpaceKind::Torus).contains(pt({"1/2"})));
  EXPECT_TRUE(interval("1/2", SpaceKind::Torus).contains(pt({"7/5"})));  // 7/5 = 2/5 mod 1
}

TEST(Geometry, L2BallComparesSquaredNorms) {
  const Domain disc(SpaceKind::Euclidean, 2, make_ball(NormP::two(), 1, {0, 0}));
  EXPECT_FALSE(disc.contains(pt({"3/5", "4/5"})));
  EXPECT_TRUE(disc.contains(pt({"3/5", "799/1000"})));
  EXPECT_FALSE(disc.membership(pt({"3/5", "4/5"})).boundary_ambiguous);
}

TEST(Geometry, GeneralPNormFlagsNearBoundaryPoints) {
  const Domain b3(SpaceKind::Euclidean, 1, make_ball(NormP::general(3.0), 1, {0}));
  EXPECT_TRUE(b3.membership(Point::real({1.0 - 1e-14})).boundary_ambiguous);
  EXPECT_FALSE(b3.membership(Point::real({0.5})).boundary_ambiguous);
  EXPECT_TRUE(b3.contains(Point::real({0.5})));
}

TEST(Geometry, Symmetrize) {
  EXPECT_TRUE(same_membership(box2().symmetrize(), box2(), 1.5));
  const Domain shifted(SpaceKind::Euclidean, 1, make_translate({q("1/2")}, make_box({1})));
  EXPECT_TRUE(same_membership(shifted.symmetrize(), interval("1/2"), 2.0));

  const Domain pair(SpaceKind::Euclidean, 2,
                    make_union({make_ball(NormP::two(), q("1/2"), {1, 0}), make_ball(NormP::two(), q("1/2"), {-1, 0})}));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const Point x = Point::rational({random_between(rng, -2, 2), random_between(rng, -1, 1)});
    ASSERT_EQ(pair.contains(x), pair.contains(x.negated()));
  }
}

TEST(Geometry, SymmetrizeIsIdempotent) {
  const Domain lopsided(SpaceKind::Euclidean, 2,
                        make_union({make_box({1, q("1/2")}, {q("1/3"), 0}), make_ball(NormP::one(), 1, {0, q("1/4")})}));
  const Domain once = lopsided.symmetrize();
  EXPECT_TRUE(same_membership(once.symmetrize(), once, 2.0));
}

TEST(Geometry, MinkowskiNorm) {
  EXPECT_EQ(*minkowski_norm(box2(), pt({"3/10", "0"})).exact, q("3/10"));
  const Domain disc(SpaceKind::Euclidean, 2, make_ball(NormP::two(), 1, {0, 0}));
  EXPECT_NEAR(minkowski_norm(disc, pt({"3/5", "4/5"})).value, 1.0, 1e-15);
  const Domain diamond(SpaceKind::Euclidean, 2, make_polytope({{1, 1}, {1, -1}}, {1, 1}));
  EXPECT_NEAR(minkowski_norm(diamond, pt({"1/2", "0"})).value, 0.5, 1e-15);
  EXPECT_THROW(minkowski_norm(Domain(SpaceKind::Euclidean, 1, make_box({1}, {q("1/2")})), pt({"1/4"})),
               std::invalid_argument);
}

// The diamond norm checked against bisection on membership of t z.
TEST(Geometry, PolytopeNormMatchesBisection) {
  const Domain diamond(SpaceKind::Euclidean, 2, make_polytope({{1, 1}, {1, -1}}, {1, 1}));
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    const Point z = Point::rational({random_between(rng, -1, 1), random_between(rng, -1, 1)});
    if (z.is_zero()) continue;
    double lo = 0.0, hi = 100.0;  // 1/norm lies in [lo, hi)
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (diamond.contains(z.scaled(exact_from_double(mid))) ? lo : hi) = mid;
    }
    EXPECT_NEAR(minkowski_norm(diamond, z).value, 1.0 / lo, 1e-9);
  }
}

TEST(Geometry, Orbit) {
  EXPECT_EQ(std::get<FiniteOrbit>(orbit(pt({"1/4", "3/4"}))).m, 4);
  EXPECT_EQ(std::get<FiniteOrbit>(orbit(pt({"1/2", "1/3"}))).m, 6);
  EXPECT_TRUE(std::holds_alternative<InfiniteOrbit>(orbit(Point::real({0.70710678118654752}, true))));
}

TEST(Geometry, SpaceIndices) {
  EXPECT_EQ(space_h(box2(), pt({"3/10", "0"})), (std::vector<std::int64_t>{2, 3}));
  EXPECT_TRUE(space_h(interval("1"), pt({"3/5"})).empty());
  const Domain ring(SpaceKind::Euclidean, 1,
                    make_union({make_box({q("1/4")}, {q("-3/4")}), make_box({q("1/4")}, {q("3/4")}),
                                make_box({q("1/10")})}));
  EXPECT_TRUE(space_h(ring, pt({"11/20"})).empty());
  EXPECT_EQ(space_h(ring, pt({"3/10"})), (std::vector<std::int64_t>{2, 3}));
  EXPECT_EQ(space_h(ring, pt({"9/40"})), (std::vector<std::int64_t>{3, 4}));
}

TEST(Geometry, TorusIndices) {
  EXPECT_TRUE(torus_h(interval("1/2", SpaceKind::Torus), pt({"1/4"})).empty());
  EXPECT_EQ(torus_h(interval("1/2", SpaceKind::Torus), pt({"1/5"})), (std::vector<std::int64_t>{2}));
  const Domain cube(SpaceKind::Torus, 2, make_box({q("1/2"), q("1/2")}));
  EXPECT_TRUE(torus_h(cube, pt({"1/4", "1/4"})).empty());
  EXPECT_EQ(torus_h(cube, pt({"1/2", "1/3"})), std::vector<std::int64_t>{-1});  // z on the cube boundary
}

TEST(Geometry, InteriorRadius) {
  EXPECT_NEAR(interval("1").interior_radius({0.6}), 0.4, 1e-15);
  EXPECT_LE(interval("1").interior_radius({1.2}), 0.0);
  const Domain disc(SpaceKind::Euclidean, 2, make_ball(NormP::two(), 1, {0, 0}));
  EXPECT_NEAR(disc.interior_radius({0.3, 0.4}), 0.5, 1e-15);
  // Upper bound from the bounding box corner.
  EXPECT_GE(disc.bounding_radius(), 1.0);
  EXPECT_NEAR(disc.bounding_radius(), std::sqrt(2.0), 1e-11);
}

// Symmetric convex bodies: H(Omega, z) = [2, n] exactly when
// 1/(n+1) <= ||z|| < 1/n.
TEST(GeometryProperty, ConvexBodyIndicesAreAnInterval) {
  struct Body {
    Domain omega;
    std::vector<std::pair<Rational, Rational>> unit_directions;  // norm 1
  };
  const std::vector<std::pair<Rational, Rational>> pythagorean{
      {1, 0}, {q("3/5"), q("4/5")}, {q("-5/13"), q("12/13")}, {q("8/17"), q("-15/17")}};
  const std::vector<std::pair<Rational, Rational>> sup_dirs{{1, q("1/3")}, {q("-2/7"), 1}, {1, -1}, {q("1/2"), -1}};
  const std::vector<std::pair<Rational, Rational>> l1_dirs{{q("1/3"), q("2/3")}, {q("-3/4"), q("1/4")}, {1, 0}};
  const std::vector<Body> bodies{
      {Domain(SpaceKind::Euclidean, 2, make_ball(NormP::two(), 1, {0, 0})), pythagorean},
      {box2(), sup_dirs},
      {Domain(SpaceKind::Euclidean, 2, make_ball(NormP::one(), 1, {0, 0})), l1_dirs},
      {Domain(SpaceKind::Euclidean, 2, make_polytope({{1, 1}, {1, -1}}, {1, 1})), l1_dirs},
  };
  std::mt19937_64 rng(7);
  for (const Body& b : bodies) {
    for (int i = 0; i < 50; ++i) {
      const std::int64_t n = 1 + static_cast<std::int64_t>(rng() % 8);
      const Rational t = random_between(rng, Rational(1, n + 1), Rational(1, n));
      const auto& d = b.unit_directions[rng() % b.unit_directions.size()];
      const Point z = Point::rational({d.first * t, d.second * t});
      std::vector<std::int64_t> expect;
      for (std::int64_t k = 2; k <= n; ++k) expect.push_back(k);
      ASSERT_EQ(space_h(b.omega, z), expect) << z.describe() << " n=" << n;
    }
  }
}

TEST(GeometryProperty, IndicesAreDilationInvariant) {
  const Domain omega(SpaceKind::Euclidean, 2,
                     make_union({make_box({1, q("1/3")}), make_ball(NormP::two(), q("2/3"), {0, 0})}));
  std::mt19937_64 rng(8);
  for (const char* a : {"1/3", "2", "7/5"}) {
    const Rational alpha = q(a);
    const Domain scaled = omega.scaled(alpha, SpaceKind::Euclidean);
    for (int i = 0; i < 40; ++i) {
      const Point z = Point::rational({random_between(rng, -1, 1), random_between(rng, -1, 1)});
      if (z.is_zero()) continue;
      ASSERT_EQ(space_h(scaled, z.scaled(alpha)), space_h(omega, z)) << z.describe();
    }
  }
}

TEST(GeometryProperty, IndicesAreMonotoneInTheDomain) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 100; ++i) {
    const Rational r1 = random_between(rng, q("1/4"), 1);
    const Rational r2 = r1 + random_between(rng, 0, 1);
    const Domain small(SpaceKind::Euclidean, 2, make_ball(NormP::two(), r1, {0, 0}));
    const Domain big(SpaceKind::Euclidean, 2, make_ball(NormP::two(), r2, {0, 0}));
    const Point z = Point::rational({random_between(rng, q("-1/3"), q("1/3")), random_between(rng, q("-1/3"), q("1/3"))});
    if (z.is_zero()) continue;
    const auto a = space_h(small, z), b = space_h(big, z);
    ASSERT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}
