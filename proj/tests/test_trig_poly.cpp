#include "turan/trig_poly.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using turan::CosinePolynomial;

namespace {

constexpr double kPi = 3.14159265358979323846;

void expect_grid(const CosinePolynomial& phi, std::int64_t m, const std::vector<double>& expected) {
  const auto v = turan::grid_values(phi, m);
  ASSERT_EQ(v.size(), expected.size());
  for (std::size_t j = 0; j < v.size(); ++j) EXPECT_NEAR(v[j], expected[j], 1e-12) << "j=" << j;
}

CosinePolynomial random_poly(std::mt19937_64& rng, std::int64_t max_degree, std::size_t terms) {
  std::uniform_real_distribution<double> coeff(-1.0, 1.0);
  std::uniform_int_distribution<std::int64_t> freq(1, max_degree);
  std::map<std::int64_t, double> c;
  for (std::size_t i = 0; i < terms; ++i) c[freq(rng)] = coeff(rng);
  return CosinePolynomial(1.0 + coeff(rng), c);
}

}  // namespace

TEST(TrigPoly, Evaluate) {
  const CosinePolynomial phi(1.0, {{1, 1.0}});
  EXPECT_NEAR(turan::evaluate(phi, 0.5), 0.0, 1e-15);
  const CosinePolynomial psi(0.5, {{1, 0.25}, {3, -2.0}, {7, 0.125}});
  EXPECT_NEAR(turan::evaluate(psi, 0.0), 0.5 + 0.25 - 2.0 + 0.125, 1e-15);
  EXPECT_EQ(psi.spectrum(), (std::vector<std::int64_t>{3, 7}));
  EXPECT_EQ(psi.full_spectrum(), (std::vector<std::int64_t>{-7, -3, -1, 0, 1, 3, 7}));
  EXPECT_EQ(psi.degree(), 7);
}

TEST(TrigPoly, ExactGridCosines) {
  EXPECT_EQ(turan::cos_two_pi_fraction(0, 7), 1.0);
  EXPECT_EQ(turan::cos_two_pi_fraction(1, 6), 0.5);
  EXPECT_EQ(turan::cos_two_pi_fraction(1, 4), 0.0);
  EXPECT_EQ(turan::cos_two_pi_fraction(2, 6), -0.5);
  EXPECT_EQ(turan::cos_two_pi_fraction(1, 2), -1.0);
  for (std::int64_t m = 3; m < 100; ++m) {
    for (std::int64_t r = 0; r < m; ++r) {
      ASSERT_EQ(turan::cos_two_pi_fraction(r, m), turan::cos_two_pi_fraction(m - r, m));
      ASSERT_NEAR(turan::cos_two_pi_fraction(r, m), std::cos(2 * kPi * r / m), 4e-15);  // the oracle rounds its argument
    }
  }
}

TEST(TrigPoly, GridValues) {
  expect_grid(CosinePolynomial(1.0, {{1, 1.0}}), 4, {2, 1, 0, 1});
  expect_grid(turan::witness_zinomega(5), 5, {5, 0, 0, 0, 0});
}

TEST(TrigPoly, ZinomegaWitness) {
  const CosinePolynomial p5 = turan::witness_zinomega(5);
  EXPECT_DOUBLE_EQ(p5.coeff(1), 2.0);
  EXPECT_DOUBLE_EQ(p5.coeff(2), 2.0);
  EXPECT_NEAR(turan::evaluate(p5, 0.0), 5.0, 1e-12);
  EXPECT_NEAR(turan::evaluate(p5, 0.2), 0.0, 1e-12);
  EXPECT_NEAR(turan::evaluate(p5, 0.4), 0.0, 1e-12);
  const CosinePolynomial p4 = turan::witness_zinomega(4);
  EXPECT_DOUBLE_EQ(p4.coeff(1), 2.0);
  EXPECT_DOUBLE_EQ(p4.coeff(2), 1.0);
  const CosinePolynomial p2 = turan::witness_zinomega(2);
  EXPECT_DOUBLE_EQ(p2.coeff(1), 1.0);
  EXPECT_EQ(p2.degree(), 1);
}

// With constant term 1 the grid values are m/2 at 0, m/4 at +-1/m and 0
// elsewhere (mean 1 over the grid).
TEST(TrigPoly, EvencaseWitness) {
  const CosinePolynomial p6 = turan::witness_evencase(6);
  EXPECT_NEAR(p6.coeff(1), 1.5, 1e-15);
  EXPECT_NEAR(p6.coeff(2), 0.5, 1e-15);
  EXPECT_NEAR(turan::witness_evencase(4).coeff(1), 1.0, 1e-15);
  expect_grid(p6, 6, {3, 1.5, 0, 0, 0, 1.5});
  expect_grid(turan::witness_evencase(4), 4, {2, 1, 0, 1});
  expect_grid(turan::witness_evencase(8), 8, {4, 2, 0, 0, 0, 0, 0, 2});
}

TEST(TrigPoly, WitnessesAreGridNonnegative) {
  for (std::int64_t m = 2; m <= 64; ++m) {
    for (double v : turan::grid_values(turan::witness_zinomega(m), m)) ASSERT_GE(v, -1e-12) << m;
    if (m % 2 == 0 && m >= 4) {
      for (double v : turan::grid_values(turan::witness_evencase(m), m)) ASSERT_GE(v, -1e-12) << m;
    }
  }
}

TEST(TrigPoly, CertifiedMin) {
  const auto a = turan::certified_min(CosinePolynomial(1.0, {{1, 1.0}}), 1024);
  EXPECT_LE(a.certified_lower, 0.0);
  EXPECT_GE(a.sampled_min, 0.0);
  EXPECT_LE(a.sampled_min, 1e-5);

  const auto b = turan::certified_min(CosinePolynomial(1.0), 1024);
  EXPECT_EQ(b.certified_lower, 1.0);
  EXPECT_EQ(b.sampled_min, 1.0);

  const std::int64_t n = 1024;
  const auto c = turan::certified_min(CosinePolynomial(1.0, {{1, 1.6}}), n);
  EXPECT_LE(c.certified_lower, -0.6);
  EXPECT_GE(c.certified_lower, -0.6 - 2 * kPi * 1.6 / (2.0 * n));
}

TEST(TrigPoly, RefinementClosesTheGap) {
  const CosinePolynomial phi(1.0, {{1, 0.9}, {5, -0.3}, {11, 0.2}});
  const auto coarse = turan::certified_min(phi, 256);
  const auto fine = turan::certified_min(phi, 256, 1e-10);
  EXPECT_LE(fine.certified_lower, fine.sampled_min);
  EXPECT_GE(fine.certified_lower, coarse.certified_lower);
  EXPECT_LE(fine.sampled_min - fine.certified_lower, 1e-9);
}

TEST(TrigPoly, NegativeLocalMinima) {
  const CosinePolynomial phi(1.0, {{1, 1.6}});
  const auto minima = turan::negative_local_minima(phi, 512, 0.0, 4);
  ASSERT_EQ(minima.size(), 1u);
  EXPECT_NEAR(minima[0], 0.5, 1e-9);
}

TEST(TrigPolyProperty, EvenAndPeriodic) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const CosinePolynomial phi = random_poly(rng, 40, 6);
    const double x = t(rng);
    ASSERT_NEAR(turan::evaluate(phi, x), turan::evaluate(phi, -x), 1e-12);
    ASSERT_NEAR(turan::evaluate(phi, x), turan::evaluate(phi, x + 1.0), 1e-12);
  }
}

TEST(TrigPolyProperty, GridCoefficientsRoundTrip) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 63);
    const CosinePolynomial phi = random_poly(rng, std::max<std::int64_t>(1, m / 2), 5);
    const auto v = turan::grid_values(phi, m);
    ASSERT_NEAR(turan::grid_coefficient(v, 0), phi.constant(), 1e-10);
    for (std::int64_t k = 1; 2 * k <= m; ++k) {
      ASSERT_NEAR(turan::grid_coefficient(v, k), phi.coeff(k), 1e-10) << "m=" << m << " k=" << k;
    }
  }
}

TEST(TrigPolyProperty, CertifiedMinIsSound) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    const CosinePolynomial phi = random_poly(rng, 128, 8);
    for (double tol : {0.0, 1e-8}) {
      const auto mb = turan::certified_min(phi, 2048, tol);
      ASSERT_LE(mb.certified_lower, mb.sampled_min);
      ASSERT_NEAR(turan::evaluate(phi, mb.argmin), mb.sampled_min, 1e-12);
      for (int s = 0; s < 10000; ++s) ASSERT_LE(mb.certified_lower, turan::evaluate(phi, t(rng)));
    }
  }
}

TEST(TrigPolyProperty, DerivativesMatchDifferences) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> t(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const CosinePolynomial phi = random_poly(rng, 20, 5);
    const double x = t(rng), h = 1e-5;
    const double d1 = (turan::evaluate(phi, x + h) - turan::evaluate(phi, x - h)) / (2 * h);
    const double d2 = (turan::derivative(phi, x + h, 1) - turan::derivative(phi, x - h, 1)) / (2 * h);
    ASSERT_NEAR(turan::derivative(phi, x, 1), d1, 1e-4 * (1 + std::abs(d1)));
    ASSERT_NEAR(turan::derivative(phi, x, 2), d2, 1e-4 * (1 + std::abs(d2)));
  }
}
