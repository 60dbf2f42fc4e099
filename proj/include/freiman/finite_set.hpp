#pragma once

#include "freiman/scalar.hpp"

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

namespace freiman {

/// Nonempty, duplicate-free set of scalars kept in ascending real order.
/// T is Rational or RealElement (all over one basis).
template <typename T>
class FiniteSet {
public:
  using value_type = T;

  FiniteSet(std::vector<T> elements) : elements_(std::move(elements)) {
    if (elements_.empty())
      throw PreconditionError("finite set must be nonempty");
    if constexpr (std::is_same_v<T, RealElement>)
      for (const auto& e : elements_)
        elements_.front().check_basis(e);
    std::sort(elements_.begin(), elements_.end(), [](const T& a, const T& b) {
      return compare_values(a, b) < 0;
    });
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  FiniteSet(std::initializer_list<T> elements) : FiniteSet(std::vector<T>(elements)) {}

  std::size_t size() const { return elements_.size(); }
  const T& operator[](std::size_t i) const { return elements_[i]; }
  const T& min() const { return elements_.front(); }
  const T& max() const { return elements_.back(); }
  const std::vector<T>& elements() const { return elements_; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  bool contains(const T& x) const {
    return std::find(elements_.begin(), elements_.end(), x) != elements_.end();
  }

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) {
    return a.elements_ == b.elements_;
  }

private:
  std::vector<T> elements_;
};

using RationalSet = FiniteSet<Rational>;
using RealSet = FiniteSet<RealElement>;

inline RationalSet make_set(std::initializer_list<long long> values) {
  std::vector<Rational> v;
  for (long long x : values)
    v.emplace_back(x);
  return RationalSet(std::move(v));
}

/// A* = {0,2,3,4,7,11,12,14}, the smallest MSTD set up to affine maps.
inline RationalSet astar() { return make_set({0, 2, 3, 4, 7, 11, 12, 14}); }

/// {λa + μ : a ∈ A}.
template <typename T>
FiniteSet<T> affine_image(const FiniteSet<T>& a, const Rational& lambda, const T& mu) {
  if (lambda == 0)
    throw PreconditionError("affine map with zero slope is not injective");
  std::vector<T> out;
  out.reserve(a.size());
  for (const auto& x : a)
    out.push_back(lambda * x + mu);
  return FiniteSet<T>(std::move(out));
}

inline RealSet affine_image(const RealSet& a, const Rational& lambda, const Rational& mu) {
  return affine_image(a, lambda, RealElement::from_rational(mu, a.min().basis()));
}

template <typename T>
FiniteSet<T> translate(const FiniteSet<T>& a, const T& shift) {
  return affine_image(a, Rational(1), shift);
}

inline bool is_integer_set(const RationalSet& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return is_integer(x); });
}

inline RealSet lift(const RationalSet& a, BasisPtr basis = Basis::rational()) {
  std::vector<RealElement> out;
  for (const auto& x : a)
    out.push_back(RealElement::from_rational(x, basis));
  return RealSet(std::move(out));
}

/// Rational set when every element has zero irrational coordinates.
inline std::optional<RationalSet> as_rational(const RealSet& a) {
  std::vector<Rational> out;
  for (const auto& x : a) {
    if (!x.is_rational())
      return std::nullopt;
    out.push_back(x.coords()[0]);
  }
  return RationalSet(std::move(out));
}

template <typename T>
std::string to_string(const FiniteSet<T>& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i)
      out += ", ";
    out += to_string(a[i]);
  }
  return out + "}";
}

}  // namespace freiman
