#include "turan/index_set.hpp"

#include <gtest/gtest.h>

#include <random>

using turan::IndexSet;

namespace {

std::vector<std::int64_t> reduced(const IndexSet& h, std::int64_t m) {
  const auto r = turan::reduce_mod(h, m);
  const auto* red = std::get_if<turan::ReducedIndices>(&r);
  EXPECT_NE(red, nullptr) << h.describe() << " mod " << m;
  return red ? red->indices : std::vector<std::int64_t>{};
}

bool degenerate(const IndexSet& h, std::int64_t m) {
  return std::holds_alternative<turan::DegenerateReduction>(turan::reduce_mod(h, m));
}

// A random set from every representation family.
IndexSet random_set(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> family(0, 5);
  std::uniform_int_distribution<std::int64_t> small(2, 30);
  switch (family(rng)) {
    case 0: {
      std::set<std::int64_t> e;
      for (int i = 0; i < 5; ++i) e.insert(small(rng));
      return IndexSet::finite(e);
    }
    case 1: return IndexSet::range(small(rng), small(rng));
    case 2: return IndexSet::all_but(small(rng));
    case 3: return IndexSet::above(small(rng));
    case 4: {
      std::uniform_int_distribution<std::int64_t> mod(2, 7);
      const std::int64_t q = mod(rng);
      std::vector<std::int64_t> res;
      for (std::int64_t r = 0; r < q; ++r) {
        if (rng() % 2) res.push_back(r);
      }
      return IndexSet::residues(q, res);
    }
    default:
      return IndexSet::make(IndexSet::BaseKind::Residues, 3, {true, false, true}, {small(rng) * 3 + 1}, {});
  }
}

}  // namespace

TEST(IndexSet, Membership) {
  EXPECT_FALSE(IndexSet::make(IndexSet::BaseKind::Full, 1, {}, {}, {5}).contains(5));
  EXPECT_TRUE(IndexSet::even().contains(4));
  EXPECT_FALSE(IndexSet::odd().contains(2));
  EXPECT_TRUE(IndexSet::odd().contains(3));
  EXPECT_THROW(IndexSet::full().contains(1), std::domain_error);
}

TEST(IndexSet, RejectsBadElements) {
  EXPECT_THROW(IndexSet::finite({1, 3}), std::invalid_argument);
  EXPECT_THROW(IndexSet::make(IndexSet::BaseKind::Empty, 1, {}, {4}, {4}), std::invalid_argument);
}

TEST(IndexSet, Complement) {
  EXPECT_EQ(IndexSet::singleton(5).complement(), IndexSet::all_but(5));
  EXPECT_EQ(IndexSet::even().complement(), IndexSet::odd());
  EXPECT_EQ(IndexSet::empty().complement(), IndexSet::full());
  EXPECT_EQ(IndexSet::range(2, 4).complement(), IndexSet::above(4));
}

TEST(IndexSet, CanonicalFormMakesEqualSetsEqual) {
  EXPECT_EQ(IndexSet::residues(4, {0, 2}), IndexSet::even());
  EXPECT_EQ(IndexSet::range(2, 2), IndexSet::singleton(2));
  EXPECT_EQ(IndexSet::make(IndexSet::BaseKind::Full, 1, {}, {}, {2}), IndexSet::above(2));
  EXPECT_EQ(IndexSet::residues(2, {1}), IndexSet::odd());
}

TEST(IndexSet, Truncate) {
  EXPECT_EQ(IndexSet::odd().truncate(9), (std::vector<std::int64_t>{3, 5, 7, 9}));
  EXPECT_EQ(IndexSet::above(5).truncate(8), (std::vector<std::int64_t>{6, 7, 8}));
  EXPECT_EQ(IndexSet::range(2, 3).truncate(10), (std::vector<std::int64_t>{2, 3}));
}

TEST(IndexSet, ReduceMod) {
  EXPECT_TRUE(degenerate(IndexSet::singleton(3), 4));
  EXPECT_EQ(reduced(IndexSet::singleton(2), 6), (std::vector<std::int64_t>{2}));
  EXPECT_EQ(reduced(IndexSet::singleton(7), 5), (std::vector<std::int64_t>{2}));
  // h = 0 mod m is a free constant on the grid.
  EXPECT_TRUE(degenerate(IndexSet::singleton(6), 6));
  EXPECT_TRUE(degenerate(IndexSet::even(), 4));
  EXPECT_EQ(reduced(IndexSet::empty(), 4), std::vector<std::int64_t>{});
}

TEST(IndexSetProperty, ComplementIsAnInvolution) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const IndexSet h = random_set(rng);
    const IndexSet back = h.complement().complement();
    EXPECT_EQ(back, h);
    for (std::int64_t k = 2; k <= 1000; ++k) {
      ASSERT_EQ(back.contains(k), h.contains(k)) << h.describe() << " k=" << k;
      ASSERT_NE(h.complement().contains(k), h.contains(k));
    }
  }
}

TEST(IndexSetProperty, TruncationIsMonotone) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    const IndexSet h = random_set(rng);
    for (std::int64_t n = 2; n < 60; ++n) {
      const auto a = h.truncate(n), b = h.truncate(n + 1);
      ASSERT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      for (auto k : a) ASSERT_TRUE(h.contains(k));
    }
  }
}

TEST(IndexSetProperty, ReductionStaysInHalfGrid) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const IndexSet h = random_set(rng);
    const std::int64_t m = 2 + static_cast<std::int64_t>(rng() % 40);
    const auto r = turan::reduce_mod(h, m);
    if (const auto* red = std::get_if<turan::ReducedIndices>(&r)) {
      for (auto k : red->indices) {
        ASSERT_GE(k, 2);
        ASSERT_LE(2 * k, m);
      }
    }
  }
}

TEST(IndexSetProperty, ReductionFixesSmallSets) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 300; ++trial) {
    const std::int64_t m = 4 + static_cast<std::int64_t>(rng() % 40);
    std::set<std::int64_t> e;
    for (std::int64_t k = 2; 2 * k <= m; ++k) {
      if (k % m != 0 && k % m != 1 && k % m != m - 1 && rng() % 2) e.insert(k);
    }
    const auto r = reduced(IndexSet::finite(e), m);
    EXPECT_EQ(std::set<std::int64_t>(r.begin(), r.end()), e);
  }
}
