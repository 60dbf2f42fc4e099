#include "freiman/search.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace freiman;

namespace {

RationalSet from_ll(const std::vector<long long>& v) { return RationalSet(std::vector<Rational>(v.begin(), v.end())); }

std::vector<int> as_ints(const RationalSet& s) {
  std::vector<int> out;
  for (const auto& x : s)
    out.push_back(static_cast<int>(numerator(x)));
  return out;
}

// Canonical form by direct definition on element lists.
std::vector<long long> oracle_canonical(std::vector<long long> v) {
  long long lo = v.front();
  long long g = 0;
  for (auto& x : v) {
    x -= lo;
    g = std::gcd(g, x);
  }
  if (g > 1)
    for (auto& x : v)
      x /= g;
  std::vector<long long> r;
  for (auto it = v.rbegin(); it != v.rend(); ++it)
    r.push_back(v.back() - *it);
  return std::min(v, r);
}

int triple_count(const std::vector<long long>& a, int sign) {
  std::set<long long> s;
  for (auto x : a)
    for (auto y : a)
      for (auto z : a)
        s.insert(x + y + sign * z);
  return static_cast<int>(s.size());
}

}  // namespace

TEST(NormalizeAffine, Examples) {
  EXPECT_EQ(normalize_affine(make_set({5, 7, 8, 9, 12, 16, 17, 19})), make_set({0, 2, 3, 4, 7, 11, 12, 14}));
  EXPECT_EQ(normalize_affine(make_set({0, 2, 3, 7, 10, 11, 12, 14})), make_set({0, 2, 3, 4, 7, 11, 12, 14}));
  EXPECT_EQ(normalize_affine(make_set({0, 4, 8})), make_set({0, 1, 2}));
  EXPECT_EQ(normalize_affine(make_set({-3})), make_set({0}));
}

TEST(NormalizeAffine, IdempotentAndClassInvariant) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 300; ++trial) {
    auto v = oracle::random_set(rng, 20, 1 + rng() % 8);
    auto a = from_ll(v);
    auto n = normalize_affine(a);
    EXPECT_EQ(normalize_affine(n), n);
    long long c = static_cast<long long>(rng() % 41) - 20;
    EXPECT_EQ(normalize_affine(translate(a, Rational(c))), n);
    EXPECT_EQ(normalize_affine(affine_image(a, Rational(-1), Rational(0))), n);
    EXPECT_EQ(normalize_affine(affine_image(a, Rational(3), Rational(1))), n);
    auto expected = oracle_canonical(v);
    EXPECT_EQ(n, from_ll(expected));
    // mask version agrees
    Mask m = 0;
    for (auto x : v)
      m |= Mask{1} << x;
    auto cm = canonical_mask(m);
    std::vector<int> ce = cm.elements();
    EXPECT_EQ(ce, as_ints(n));
  }
}

TEST(MaskKernels, ReflectionAndOrder) {
  EXPECT_EQ(reflect(mask_of({0, 2, 3, 4, 7, 11, 12, 14})), mask_of({0, 2, 3, 7, 10, 11, 12, 14}));
  EXPECT_TRUE(lex_less(mask_of({0, 2, 3, 4}), mask_of({0, 2, 4, 5})));
  EXPECT_FALSE(lex_less(mask_of({0, 2, 4, 5}), mask_of({0, 2, 3, 4})));
  EXPECT_FALSE(lex_less(mask_of({0, 1}), mask_of({0, 1})));
  EXPECT_EQ(reverse_bits(1), Mask{1} << 63);
}

TEST(MaskKernels, SumDiffCountsMatchOracleOnRandomSets) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = 1 + rng() % 30;
    auto v = oracle::random_set(rng, n, 1 + rng() % (n + 1));
    Mask m = 0;
    for (auto x : v)
      m |= Mask{1} << x;
    auto c = sum_diff_counts(m);
    auto a = from_ll(v);
    EXPECT_EQ(c.sums, static_cast<int>(form_image(LinearForm{1, 1}, a).size()));
    EXPECT_EQ(c.diffs, static_cast<int>(form_image(LinearForm{1, -1}, a).size()));
  }
}

TEST(MaskKernels, WideSets) {
  Mask full = ~Mask{0};
  auto c = sum_diff_counts(full);
  EXPECT_EQ(c.sums, 127);
  EXPECT_EQ(c.diffs, 127);
  auto t = triple_counts(full);
  EXPECT_EQ(t.plus, 190);
  EXPECT_EQ(t.minus, 190);
}

TEST(MaskKernels, TripleCountsMatchOracle) {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 1 + rng() % 40;
    auto v = oracle::random_set(rng, n, 1 + rng() % std::min(n + 1, 10));
    Mask m = 0;
    for (auto x : v)
      m |= Mask{1} << x;
    auto t = triple_counts(m);
    EXPECT_EQ(t.plus, triple_count(v, 1));
    EXPECT_EQ(t.minus, triple_count(v, -1));
  }
  auto t = triple_counts(mask_of({0, 2, 3, 4, 7, 11, 12, 14}));
  EXPECT_EQ(t.plus, 41);
  EXPECT_EQ(t.minus, 41);
  t = triple_counts(mask_of({0, 1, 2, 3}));
  EXPECT_EQ(t.plus, 10);
  EXPECT_EQ(t.minus, 10);
}

TEST(EnumerateMstd, NoSmallMstdAtDiameter14) {
  SearchConfig cfg;
  cfg.max_diameter = 14;
  auto all = enumerate_mstd(cfg);
  for (const auto& c : all)
    EXPECT_GE(c.size(), 8);
  cfg.size = 8;
  auto eight = enumerate_mstd(cfg);
  ASSERT_EQ(eight.size(), 1u);
  EXPECT_EQ(eight[0].to_set(), make_set({0, 2, 3, 4, 7, 11, 12, 14}));
}

TEST(EnumerateMstd, SmallDiameterIsEmpty) {
  SearchConfig cfg;
  cfg.max_diameter = 4;
  EXPECT_TRUE(enumerate_mstd(cfg).empty());
}

TEST(EnumerateMstd, MatchesNaiveRecount) {
  for (int n = 1; n <= 10; ++n) {
    std::set<std::vector<long long>> expected;
    for (Mask m = 1; m < (Mask{1} << (n + 1)); m += 2) {  // min 0
      auto v = oracle::mask_elements(m);
      if (oracle::sum_count(v) > oracle::diff_count(v))
        expected.insert(oracle_canonical(v));
    }
    SearchConfig cfg;
    cfg.max_diameter = n;
    auto got = enumerate_mstd(cfg);
    std::set<std::vector<long long>> got_set;
    for (const auto& c : got) {
      auto e = c.elements();
      got_set.insert(std::vector<long long>(e.begin(), e.end()));
      EXPECT_TRUE(is_mstd(c.to_set()).is_mstd);
    }
    EXPECT_EQ(got.size(), got_set.size());
    EXPECT_EQ(got_set, expected) << "n=" << n;
  }
}

TEST(EnumerateMstd, EveryEmittedSetRecountsAsMstd) {
  SearchConfig cfg;
  cfg.max_diameter = 17;
  auto all = enumerate_mstd(cfg);
  EXPECT_FALSE(all.empty());
  for (std::size_t i = 0; i < all.size(); ++i) {
    auto e = all[i].elements();
    std::vector<long long> v(e.begin(), e.end());
    EXPECT_GT(oracle::sum_count(v), oracle::diff_count(v));
    EXPECT_EQ(v, oracle_canonical(v));
    if (i) {
      EXPECT_TRUE(all[i - 1] < all[i]);
    }
  }
}

TEST(EnumerateMstd, IndependentOfWorkerCount) {
  SearchConfig cfg;
  cfg.max_diameter = 16;
  auto one = enumerate_mstd(cfg);
  for (unsigned jobs : {2u, 3u, 7u}) {
    cfg.jobs = jobs;
    SearchStats stats;
    EXPECT_EQ(enumerate_mstd(cfg, &stats), one);
    EXPECT_GT(stats.examined, 0u);
  }
}

TEST(EnumerateMstd, EndpointsAndValidation) {
  SearchConfig cfg;
  cfg.max_diameter = 14;
  cfg.require_endpoints = true;
  auto r = enumerate_mstd(cfg);
  for (const auto& c : r)
    EXPECT_EQ(c.diameter(), 14);
  cfg.max_diameter = 0;
  EXPECT_THROW(enumerate_mstd(cfg), PreconditionError);
  cfg.max_diameter = 40;
  EXPECT_THROW(enumerate_mstd(cfg), PreconditionError);  // default budget 2^36
  cfg.max_diameter = 10;
  cfg.size = 12;
  EXPECT_THROW(enumerate_mstd(cfg), PreconditionError);
}

TEST(TripleScan, MatchesNaiveOracle) {
  for (int n = 1; n <= 8; ++n) {
    std::set<std::vector<long long>> expected;
    for (Mask m = 1; m < (Mask{1} << (n + 1)); m += 2) {
      auto v = oracle::mask_elements(m);
      if (triple_count(v, 1) > triple_count(v, -1))
        expected.insert(oracle_canonical(v));
    }
    SearchConfig cfg;
    cfg.max_diameter = n;
    std::set<std::vector<long long>> got;
    for (const auto& r : triple_form_scan(cfg)) {
      auto e = r.set.elements();
      std::vector<long long> v(e.begin(), e.end());
      got.insert(v);
      EXPECT_EQ(r.plus_count, triple_count(v, 1));
      EXPECT_EQ(r.minus_count, triple_count(v, -1));
      EXPECT_FALSE(r.symmetric);
    }
    EXPECT_EQ(got, expected) << "n=" << n;
  }
}

TEST(TripleScan, ReportEqualListsSymmetricSets) {
  SearchConfig cfg;
  cfg.max_diameter = 6;
  cfg.report_equal = true;
  int symmetric = 0;
  for (const auto& r : triple_form_scan(cfg)) {
    if (r.symmetric) {
      ++symmetric;
      EXPECT_EQ(r.plus_count, r.minus_count);
    }
  }
  EXPECT_GT(symmetric, 0);
}

TEST(RandomSymmetricSet, Examples) {
  auto a = random_symmetric_set(1, 7, 4);
  EXPECT_EQ(a.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i)
    EXPECT_EQ(a[i] + a[3 - i], 7);
  EXPECT_EQ(random_symmetric_set(99, 2, 3), make_set({0, 1, 2}));
  EXPECT_EQ(random_symmetric_set(2, 10, 2), make_set({0, 10}));
  EXPECT_EQ(random_symmetric_set(5, 9, 6), random_symmetric_set(5, 9, 6));
  EXPECT_THROW(random_symmetric_set(1, 3, 5), PreconditionError);
  EXPECT_THROW(random_symmetric_set(1, 3, 3), PreconditionError);
}

TEST(RandomSymmetricSet, AlwaysSymmetric) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    int n = 1 + static_cast<int>(seed % 20);
    int k = 1 + static_cast<int>(seed * 7 % (n + 1));
    if (k % 2 == 1 && n % 2 == 1)
      --k;
    if (k == 0)
      k = 2;
    auto a = random_symmetric_set(seed, n, k);
    EXPECT_EQ(a.size(), static_cast<std::size_t>(k));
    auto w = symmetry_center(a);
    EXPECT_TRUE(w.present);
  }
}
