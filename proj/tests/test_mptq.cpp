#include "freiman/form_images.hpp"
#include "freiman/mptq.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace freiman;

namespace {

RationalSet from_ll(const std::vector<long long>& v) { return RationalSet(std::vector<Rational>(v.begin(), v.end())); }

std::pair<std::size_t, std::size_t> oracle_counts(const std::vector<Rational>& b) {
  std::set<Rational> prod, quot;
  for (const auto& x : b)
    for (const auto& y : b) {
      prod.insert(x * y);
      quot.insert(x / y);
    }
  return {prod.size(), quot.size()};
}

}  // namespace

TEST(PositiveSet, RejectsNonpositive) {
  EXPECT_THROW(PositiveSet({0, 1}), PreconditionError);
  EXPECT_THROW(PositiveSet({-2, 3}), PreconditionError);
  EXPECT_EQ(PositiveSet({3, 1, 3}).size(), 2u);
}

TEST(ProductQuotient, Examples) {
  auto c = product_quotient_counts(PositiveSet{1, 2, 4});
  EXPECT_EQ(c.products, 5u);
  EXPECT_EQ(c.quotients, 5u);
  EXPECT_FALSE(c.is_mptq);
  EXPECT_EQ(product_set(PositiveSet{1, 2, 4}), make_set({1, 2, 4, 8, 16}));
  EXPECT_EQ(quotient_set(PositiveSet{1, 2, 4}),
            RationalSet({Rational(1, 4), Rational(1, 2), Rational(1), Rational(2), Rational(4)}));

  c = product_quotient_counts(PositiveSet{1});
  EXPECT_EQ(c.products, 1u);
  EXPECT_EQ(c.quotients, 1u);
  EXPECT_FALSE(c.is_mptq);

  c = product_quotient_counts(exp_transport(astar(), 2));
  EXPECT_EQ(c.products, 26u);
  EXPECT_EQ(c.quotients, 25u);
  EXPECT_TRUE(c.is_mptq);
}

TEST(Transport, Examples) {
  EXPECT_EQ(exp_transport(astar(), 2).set(), make_set({1, 4, 8, 16, 128, 2048, 4096, 16384}));
  EXPECT_EQ(exp_transport(make_set({0}), 3).set(), make_set({1}));
  EXPECT_EQ(exp_transport(make_set({0, 1, 2}), 10).set(), make_set({1, 10, 100}));
  EXPECT_EQ(exp_transport(make_set({-2, 1}), 3).set(), RationalSet({Rational(1, 9), Rational(3)}));
  EXPECT_THROW(exp_transport(make_set({1}), 1), PreconditionError);
  EXPECT_THROW(exp_transport(RationalSet({Rational(1, 2)}), 2), PreconditionError);

  EXPECT_EQ(log_transport(PositiveSet{1, 4, 8, 16, 128, 2048, 4096, 16384}, 2), astar());
  EXPECT_EQ(log_transport(PositiveSet{1}, 7), make_set({0}));
  EXPECT_EQ(log_transport(PositiveSet{9, 27}, 3), make_set({2, 3}));
  EXPECT_THROW(log_transport(PositiveSet{9, 12}, 3), PreconditionError);
  EXPECT_THROW(log_transport(PositiveSet(RationalSet({Rational(2, 9)})), 3), PreconditionError);
}

TEST(Transport, MstdIffMptqOnRandomSets) {
  std::mt19937_64 rng(71);
  const long long bases[] = {2, 3, 10};
  int mstd_seen = 0;
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<long long> v;
    if (trial % 10 == 0) {
      // affine images of A* keep the MSTD property
      long long lambda = 1 + rng() % 3, mu = static_cast<long long>(rng() % 11) - 5;
      for (long long x : {0, 2, 3, 4, 7, 11, 12, 14})
        v.push_back(lambda * x + mu);
    } else {
      v = oracle::random_set(rng, 20, 1 + rng() % 12);
      long long shift = static_cast<long long>(rng() % 11) - 5;
      for (auto& x : v)
        x += shift;
    }
    auto a = from_ll(v);
    long long c = bases[trial % 3];
    auto m = is_mstd(a);
    auto b = exp_transport(a, c);
    auto p = product_quotient_counts(b);
    EXPECT_EQ(m.is_mstd, p.is_mptq);
    EXPECT_EQ(m.sum_count, p.products);
    EXPECT_EQ(m.diff_count, p.quotients);
    auto [op, oq] = oracle_counts(b.set().elements());
    EXPECT_EQ(p.products, op);
    EXPECT_EQ(p.quotients, oq);
    EXPECT_EQ(p.quotients % 2, 1u);
    EXPECT_EQ(log_transport(b, c), a);
    mstd_seen += m.is_mstd;
  }
  EXPECT_GE(mstd_seen, 20);
}

TEST(Transport, QuotientSetSizeIsOdd) {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Rational> v;
    int k = 1 + rng() % 8;
    for (int i = 0; i < k; ++i)
      v.emplace_back(1 + static_cast<long long>(rng() % 30), 1 + static_cast<long long>(rng() % 5));
    auto q = quotient_set(PositiveSet(RationalSet(v)));
    EXPECT_EQ(q.size() % 2, 1u);
    EXPECT_TRUE(q.contains(Rational(1)));
  }
}
