#include "turan/construct.hpp"
#include "turan/solver.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace turan;

namespace {

constexpr double kPi = 3.14159265358979323846;

Rational q(const char* s) { return parse_rational(s); }

Domain interval(const char* hw) { return Domain(SpaceKind::Euclidean, 1, make_box({q(hw)})); }

struct Case {
  Domain omega;
  Point z;
  CosinePolynomial phi;
};

Case fejer_case() {
  const Enclosure e = bracket_M(IndexSet::range(2, 3));
  return {interval("1"), Point::rational({q("3/10")}), e.lower_witness};
}

VerifyReport verify(const Construction& c, const Case& k) {
  return verify_function(c.f, k.omega, k.z, 0.5 * c.f.phi().lambda(), default_frequencies(c.f));
}

// Area of the intersection of two discs of radius r at distance s.
double lens_area(double r, double s) {
  if (s >= 2 * r) return 0.0;
  return 2 * r * r * std::acos(s / (2 * r)) - 0.5 * s * std::sqrt(4 * r * r - s * s);
}

}  // namespace

TEST(Bump, Values) {
  const BumpFunction one{1.0, 1};
  EXPECT_NEAR(one.at_distance(0.5), 0.5, 1e-15);
  for (std::size_t d = 1; d <= 4; ++d) {
    const BumpFunction b{0.7, d};
    EXPECT_NEAR(b.at_distance(0.0), 1.0, 1e-14) << d;
    EXPECT_EQ(b.at_distance(0.7), 0.0) << d;
    EXPECT_EQ(b.at_distance(1.5), 0.0) << d;
    EXPECT_GE(b.transform(3.3), 0.0) << d;
  }
  const BumpFunction unit{1.0, 2};
  EXPECT_NEAR(triangle_eval(unit, {0.3, 0.4}), unit.at_distance(0.5), 1e-15);
}

TEST(Bump, PlanarValuesAreNormalisedLensAreas) {
  const double eps = 0.8, r = eps / 2;
  const BumpFunction b{eps, 2};
  for (double s = 0.0; s <= eps; s += 0.01) {
    EXPECT_NEAR(b.at_distance(s), lens_area(r, s) / (kPi * r * r), 1e-12) << s;
  }
}

TEST(Bump, LineTransformIsSquaredSinc) {
  const double eps = 0.3;
  const BumpFunction b{eps, 1};
  EXPECT_NEAR(b.transform(0.0), eps, 1e-14);
  for (double xi = 0.05; xi < 40.0; xi += 0.37) {
    const double u = kPi * eps * xi;
    EXPECT_NEAR(b.transform(xi), eps * std::pow(std::sin(u) / u, 2), 1e-12) << xi;
  }
}

// Transform at 0 is the integral of the bump, checked by quadrature in 2D.
TEST(Bump, TransformAtZeroIsTheIntegral) {
  const BumpFunction b{1.0, 2};
  double integral = 0.0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    const double s = (i + 0.5) / n;
    integral += 2 * kPi * s * b.at_distance(s) / n;
  }
  EXPECT_NEAR(b.transform(0.0), integral, 1e-6);
}

TEST(Construct, FejerCasePassesEveryCheck) {
  const Case k = fejer_case();
  const Construction c = build_extremal_function(k.omega, k.z, k.phi);
  EXPECT_NEAR(c.f({0.0}), 1.0, 1e-12);
  EXPECT_NEAR(c.f({0.3}), std::cos(kPi / 5), 1e-8);
  const VerifyReport r = verify(c, k);
  EXPECT_TRUE(r.value_at_zero.passed);
  EXPECT_TRUE(r.value_at_z.passed);
  EXPECT_TRUE(r.support.passed);
  EXPECT_TRUE(r.positive_definite.passed);
  EXPECT_GE(r.support.samples, 10000u);
}

TEST(Construct, PerturbedAtomFailsPositiveDefiniteness) {
  const Case k = fejer_case();
  const Construction c = build_extremal_function(k.omega, k.z, k.phi);
  const ExtremalFunction bad = c.f.perturbed(c.f.atom_at(1), 0.1);
  const VerifyReport r = verify_function(bad, k.omega, k.z, 0.5 * c.f.phi().lambda(), default_frequencies(bad));
  EXPECT_FALSE(r.positive_definite.passed);
  EXPECT_FALSE(r.positive_definite.violations.empty());
}

TEST(Construct, TwoAtomCase) {
  const Case k{interval("1"), Point::rational({q("3/5")}), CosinePolynomial(1.0, {{1, 1.0}})};
  const Construction c = build_extremal_function(k.omega, k.z, k.phi);
  EXPECT_NEAR(c.f({0.6}), 0.5, 1e-12);
  // eps = 0.9 min(0.3, 0.4): support ends at 0.6 + 0.27.
  EXPECT_NEAR(c.epsilon, 0.27, 1e-12);
  EXPECT_EQ(c.f({0.87}), 0.0);
  EXPECT_EQ(c.f({-0.9}), 0.0);
  EXPECT_GT(c.f({0.86}), 0.0);
  EXPECT_TRUE(verify(c, k).passed());
}

TEST(Construct, TorusOrbitOfFive) {
  const Domain omega(SpaceKind::Torus, 1, make_box({q("1/2")}));
  const Point z = Point::rational({q("1/5")});
  const Construction c = build_extremal_function(omega, z, witness_zinomega(5));
  EXPECT_NEAR(c.f({0.2}), 1.0, 1e-12);
  EXPECT_NEAR(c.f({1.2}), 1.0, 1e-12);
  EXPECT_TRUE(verify(c, {omega, z, witness_zinomega(5)}).passed());
}

TEST(Construct, RejectsBadInputs) {
  const Domain omega = interval("1");
  EXPECT_THROW(build_extremal_function(omega, Point::rational({q("3/5")}), CosinePolynomial(1.0, {{1, 1.0}, {2, 0.5}})),
               std::invalid_argument);  // 2z outside
  EXPECT_THROW(build_extremal_function(omega, Point::rational({q("3/10")}), CosinePolynomial(1.0, {{1, 1.6}})),
               std::invalid_argument);  // phi negative
  EXPECT_THROW(build_extremal_function(omega, Point::rational({q("3/5")}), CosinePolynomial(1.0, {{1, 1.0}}), 0.5),
               std::invalid_argument);  // epsilon too large
}

TEST(ConstructProperty, Symmetric) {
  const Domain omega(SpaceKind::Euclidean, 2, make_box({1, 1}));
  const Point z = Point::rational({q("3/10"), q("1/10")});
  const PointwiseResult w = pointwise_space(omega, z);
  const Construction c = build_extremal_function(omega, z, w.enclosure.lower_witness);
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.2, 1.2);
  for (int i = 0; i < 2000; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    ASSERT_EQ(c.f(x), c.f({-x[0], -x[1]}));
  }
  EXPECT_TRUE(verify(c, {omega, z, w.enclosure.lower_witness}).passed());
}

TEST(ConstructProperty, HalvingEpsilonKeepsEveryCheck) {
  const Case k = fejer_case();
  const Construction full = build_extremal_function(k.omega, k.z, k.phi);
  for (double factor : {0.5, 0.25}) {
    const Construction half = build_extremal_function(k.omega, k.z, k.phi, full.epsilon * factor);
    EXPECT_NEAR(half.epsilon, full.epsilon * factor, 1e-15);
    EXPECT_EQ(half.f({0.3}), full.f({0.3}));
    EXPECT_EQ(half.f({0.0}), 1.0);
    EXPECT_TRUE(verify(half, k).passed());
  }
}

TEST(ConstructProperty, SupportStaysInsideTheDomain) {
  const Domain omega(SpaceKind::Euclidean, 2, make_ball(NormP::two(), 1, {0, 0}));
  const Point z = Point::rational({q("1/5"), q("1/5")});
  const PointwiseResult w = pointwise_space(omega, z);
  const Construction c = build_extremal_function(omega, z, w.enclosure.lower_witness);
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  int outside = 0;
  while (outside < 10000) {
    const std::vector<double> x{u(rng), u(rng)};
    if (x[0] * x[0] + x[1] * x[1] < 1.0) continue;
    ++outside;
    ASSERT_EQ(c.f(x), 0.0);
  }
}

TEST(Construct, Section) {
  const Case k = fejer_case();
  const Construction c = build_extremal_function(k.omega, k.z, k.phi);
  const auto rows = sample_section(c.f, {-1.0}, {1.0}, 201);
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows.front().first, 0.0);
  EXPECT_EQ(rows.back().first, 1.0);
  EXPECT_NEAR(rows[100].second, 1.0, 1e-12);
}
