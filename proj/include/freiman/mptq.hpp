#pragma once

// Multiplicative mirror of sums and differences: product and quotient sets,
// and the transport a ↦ c^a between MSTD and MPTQ sets.

#include "freiman/finite_set.hpp"

#include <set>
#include <vector>

namespace freiman {

/// Finite set of positive rationals.
class PositiveSet {
public:
  explicit PositiveSet(RationalSet elements) : set_(std::move(elements)) {
    if (set_.min() <= 0)
      throw PreconditionError("positive set contains a nonpositive element");
  }
  PositiveSet(std::initializer_list<long long> values) : PositiveSet(make_set(values)) {}

  const RationalSet& set() const { return set_; }
  std::size_t size() const { return set_.size(); }
  auto begin() const { return set_.begin(); }
  auto end() const { return set_.end(); }

  friend bool operator==(const PositiveSet&, const PositiveSet&) = default;

private:
  RationalSet set_;
};

struct ProductQuotientCounts {
  std::size_t products;   // |B·B|
  std::size_t quotients;  // |B/B|
  bool is_mptq;
};

inline RationalSet product_set(const PositiveSet& b) {
  std::vector<Rational> out;
  for (const auto& x : b)
    for (const auto& y : b)
      out.push_back(x * y);
  return RationalSet(std::move(out));
}

inline RationalSet quotient_set(const PositiveSet& b) {
  std::vector<Rational> out;
  for (const auto& x : b)
    for (const auto& y : b)
      out.push_back(x / y);
  return RationalSet(std::move(out));
}

inline ProductQuotientCounts product_quotient_counts(const PositiveSet& b) {
  std::size_t p = product_set(b).size();
  std::size_t q = quotient_set(b).size();
  return {p, q, p > q};
}

/// c^A for an integer set A and integer c >= 2. Negative exponents give
/// exact fractions.
inline PositiveSet exp_transport(const RationalSet& a, const BigInt& c) {
  if (c < 2)
    throw PreconditionError("transport base must be an integer >= 2");
  if (!is_integer_set(a))
    throw PreconditionError("exponential transport needs integer exponents");
  std::vector<Rational> out;
  for (const auto& x : a) {
    BigInt e = numerator(x);
    BigInt mag = abs(e);
    if (mag > 100000)
      throw PreconditionError("exponent too large for exact transport");
    BigInt p = ipow(c, static_cast<unsigned>(mag));
    out.push_back(e < 0 ? Rational(BigInt(1), p) : Rational(p));
  }
  return PositiveSet(RationalSet(std::move(out)));
}

namespace detail {

// n with c^n == v, for v >= 1
inline std::optional<BigInt> exact_log(BigInt v, const BigInt& c) {
  BigInt n = 0;
  while (v > 1) {
    if (v % c != 0)
      return std::nullopt;
    v /= c;
    ++n;
  }
  return v == 1 ? std::optional<BigInt>(n) : std::nullopt;
}

}  // namespace detail

/// log_c B for a set of exact (possibly negative) integer powers of c.
inline RationalSet log_transport(const PositiveSet& b, const BigInt& c) {
  if (c < 2)
    throw PreconditionError("transport base must be an integer >= 2");
  std::vector<Rational> out;
  for (const auto& x : b) {
    std::optional<BigInt> n;
    if (denominator(x) == 1)
      n = detail::exact_log(numerator(x), c);
    else if (numerator(x) == 1)
      if (auto m = detail::exact_log(denominator(x), c))
        n = BigInt(-*m);
    if (!n)
      throw PreconditionError(to_string(x) + " is not an integer power of " + c.str());
    out.emplace_back(*n);
  }
  return RationalSet(std::move(out));
}

}  // namespace freiman
