#pragma once

// Images Φ(A) of finite sets under linear forms, representation functions,
// sumsets and difference sets, and the symmetric-set equality |Φ(A)| = |Φ_J(A)|.

#include "freiman/finite_set.hpp"
#include "freiman/linear_form.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

namespace freiman {

/// Default cap on |A|^h for any exhaustive tuple enumeration.
inline constexpr std::uint64_t kMaxTuples = 10'000'000;

/// k^h, or throws when it exceeds `limit`.
inline std::uint64_t tuple_count(std::size_t k, std::size_t h, std::uint64_t limit = kMaxTuples) {
  std::uint64_t n = 1;
  for (std::size_t j = 0; j < h; ++j) {
    n *= k;
    if (n > limit)
      throw PreconditionError("tuple space |A|^h = " + std::to_string(k) + "^" + std::to_string(h) +
                              " exceeds the enumeration limit of " + std::to_string(limit));
  }
  return n;
}

/// Index tuple number `n` of [0,k)^h in lexicographic order (first index most
/// significant).
inline void decode_tuple(std::uint64_t n, std::size_t k, std::span<std::size_t> idx) {
  for (std::size_t j = idx.size(); j-- > 0;) {
    idx[j] = static_cast<std::size_t>(n % k);
    n /= k;
  }
}

/// Φ-values of every ordered h-tuple over `elems`, in lexicographic tuple
/// order.
template <typename T>
std::vector<T> tuple_values(const LinearForm& form, std::span<const T> elems,
                            std::uint64_t limit = kMaxTuples) {
  const std::size_t k = elems.size();
  const std::size_t h = form.arity();
  const std::uint64_t n = tuple_count(k, h, limit);
  std::vector<T> values;
  values.reserve(n);
  std::vector<std::size_t> idx(h, 0);
  for (std::uint64_t t = 0; t < n; ++t) {
    values.push_back(form.evaluate(elems, std::span<const std::size_t>(idx)));
    // odometer increment
    for (std::size_t j = h; j-- > 0;) {
      if (++idx[j] < k)
        break;
      idx[j] = 0;
    }
  }
  return values;
}

template <typename T>
std::vector<T> tuple_values(const LinearForm& form, const FiniteSet<T>& a,
                            std::uint64_t limit = kMaxTuples) {
  return tuple_values(form, std::span<const T>(a.elements()), limit);
}

/// Partition of the tuple space by equal Φ-value. Classes are numbered in
/// order of their first tuple (lexicographic), so two evaluations induce the
/// same partition iff their class vectors are identical.
template <typename T>
struct TupleClasses {
  std::vector<std::uint32_t> class_of;  // per tuple
  std::vector<T> value;                  // per class
  std::vector<std::uint64_t> size;       // per class
  std::vector<std::uint64_t> first;      // per class: first tuple
};

template <typename T>
TupleClasses<T> group_tuples(std::vector<T> values) {
  const std::size_t n = values.size();
  std::vector<std::uint64_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::uint64_t x, std::uint64_t y) {
    return key_less(values[x], values[y]);
  });
  // provisional group per tuple, then renumber by first occurrence
  std::vector<std::uint32_t> group(n);
  std::uint32_t groups = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && !(values[order[i]] == values[order[i - 1]]))
      ++groups;
    group[order[i]] = groups;
  }
  if (n)
    ++groups;
  TupleClasses<T> out;
  out.class_of.resize(n);
  std::vector<std::uint32_t> renumber(groups, UINT32_MAX);
  for (std::size_t t = 0; t < n; ++t) {
    auto& r = renumber[group[t]];
    if (r == UINT32_MAX) {
      r = static_cast<std::uint32_t>(out.value.size());
      out.value.push_back(values[t]);
      out.size.push_back(0);
      out.first.push_back(t);
    }
    out.class_of[t] = r;
    ++out.size[r];
  }
  return out;
}

/// Φ(A) together with r_{Φ,A}(x) for every x in it.
template <typename T>
struct ImageReport {
  FiniteSet<T> image;
  std::vector<std::uint64_t> multiplicities;  // aligned with image

  std::size_t size() const { return image.size(); }

  std::uint64_t multiplicity(const T& x) const {
    for (std::size_t i = 0; i < image.size(); ++i)
      if (image[i] == x)
        return multiplicities[i];
    return 0;
  }
};

namespace detail {

// Nonnegative integer elements and ±1 coefficients: histogram convolution.
inline std::optional<ImageReport<Rational>> integer_image(const LinearForm& form, const RationalSet& a) {
  constexpr long long kMaxSpan = 1 << 22;
  for (const auto& c : form.coeffs())
    if (c != 1 && c != -1)
      return std::nullopt;
  if (!is_integer_set(a) || a.min() < 0 || a.max() > kMaxSpan)
    return std::nullopt;
  const long long top = static_cast<long long>(numerator(a.max()));
  if (top * static_cast<long long>(form.arity()) > kMaxSpan)
    return std::nullopt;

  std::vector<long long> elems;
  for (const auto& x : a)
    elems.push_back(static_cast<long long>(numerator(x)));

  // counts[v - lo] = number of tuples prefix summing to v
  long long lo = 0;
  std::vector<std::uint64_t> counts{1};
  for (const auto& c : form.coeffs()) {
    const bool plus = c == 1;
    const long long new_lo = plus ? lo : lo - top;
    std::vector<std::uint64_t> next(counts.size() + top, 0);
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (!counts[i])
        continue;
      const long long v = lo + static_cast<long long>(i);
      for (long long e : elems)
        next[(plus ? v + e : v - e) - new_lo] += counts[i];
    }
    counts = std::move(next);
    lo = new_lo;
  }
  std::vector<Rational> image;
  std::vector<std::uint64_t> mult;
  for (std::size_t i = 0; i < counts.size(); ++i)
    if (counts[i]) {
      image.emplace_back(lo + static_cast<long long>(i));
      mult.push_back(counts[i]);
    }
  return ImageReport<Rational>{RationalSet(std::move(image)), std::move(mult)};
}

}  // namespace detail

/// Φ(A) by enumerating A^h and grouping equal values; never takes the
/// integer fast path.
template <typename T>
ImageReport<T> form_image_enumerated(const LinearForm& form, const FiniteSet<T>& a,
                                     std::uint64_t limit = kMaxTuples) {
  auto classes = group_tuples(tuple_values(form, a, limit));
  std::vector<std::size_t> order(classes.value.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return compare_values(classes.value[x], classes.value[y]) < 0;
  });
  std::vector<T> image;
  std::vector<std::uint64_t> mult;
  for (std::size_t c : order) {
    image.push_back(classes.value[c]);
    mult.push_back(classes.size[c]);
  }
  return ImageReport<T>{FiniteSet<T>(std::move(image)), std::move(mult)};
}

template <typename T>
ImageReport<T> form_image(const LinearForm& form, const FiniteSet<T>& a,
                          std::uint64_t limit = kMaxTuples) {
  if constexpr (std::is_same_v<T, Rational>) {
    tuple_count(a.size(), form.arity(), limit);
    if (auto fast = detail::integer_image(form, a))
      return std::move(*fast);
  }
  return form_image_enumerated(form, a, limit);
}

/// r_{Φ,A}(x): ordered h-tuples of A with Φ-value x.
template <typename T>
std::uint64_t rep_function(const LinearForm& form, const FiniteSet<T>& a, const T& x,
                           std::uint64_t limit = kMaxTuples) {
  std::uint64_t count = 0;
  for (const auto& v : tuple_values(form, a, limit))
    if (v == x)
      ++count;
  return count;
}

template <typename T>
FiniteSet<T> sumset(const FiniteSet<T>& a) {
  return form_image(LinearForm::sum(), a).image;
}

template <typename T>
FiniteSet<T> difference_set(const FiniteSet<T>& a) {
  return form_image(LinearForm::difference(), a).image;
}

struct MstdVerdict {
  std::size_t sum_count;
  std::size_t diff_count;
  bool is_mstd;
};

template <typename T>
MstdVerdict is_mstd(const FiniteSet<T>& a) {
  std::size_t sums = form_image(LinearForm::sum(), a).size();
  std::size_t diffs = form_image(LinearForm::difference(), a).size();
  return {sums, diffs, sums > diffs};
}

template <typename T>
struct SymmetryWitness {
  bool present = false;
  std::optional<T> center;  // s with A = s − A
};

template <typename T>
SymmetryWitness<T> symmetry_center(const FiniteSet<T>& a) {
  const std::size_t k = a.size();
  T s = a.min() + a.max();
  for (std::size_t i = 0; i < k; ++i)
    if (!(a[i] + a[k - 1 - i] == s))
      return {};
  return {true, std::move(s)};
}

template <typename T>
struct SymmetricCheck {
  std::size_t image_size;         // |Φ(A)|
  std::size_t signed_image_size;  // |Φ_J(A)|
  T shift;                        // s* = Σ_{j∈J} φ_j s
  bool contained;                 // Φ(A) ⊆ s* + Φ_J(A)
  bool equal_sets;                // Φ(A) = s* + Φ_J(A)

  bool holds() const { return image_size == signed_image_size && contained; }
};

/// For symmetric A: compares Φ(A) with the translate s* + Φ_J(A).
template <typename T>
SymmetricCheck<T> check_symmetric_equality(const FiniteSet<T>& a, const LinearForm& form,
                                           const IndexSubset& flipped) {
  auto sym = symmetry_center(a);
  if (!sym.present)
    throw PreconditionError("set is not symmetric");
  LinearForm signed_phi = signed_form(form, flipped);
  Rational weight = 0;
  for (std::size_t j : flipped)
    weight += form[j - 1];
  T shift = weight * *sym.center;

  auto image = form_image(form, a).image;
  auto signed_image = form_image(signed_phi, a).image;
  std::vector<T> shifted;
  for (const auto& y : signed_image)
    shifted.push_back(shift + y);
  FiniteSet<T> translate_set(std::move(shifted));

  bool contained = std::all_of(image.begin(), image.end(),
                               [&](const T& x) { return translate_set.contains(x); });
  return {image.size(), signed_image.size(), std::move(shift), contained, image == translate_set};
}

}  // namespace freiman
