#pragma once

// Φ-isomorphism checks between finite sets, induced bijections of images,
// sign-flip transfer, and the affine classification of Freiman isomorphisms
// out of A* = {0,2,3,4,7,11,12,14}.

#include "freiman/form_images.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace freiman {

/// Default cap on k^h for isomorphism checks.
inline constexpr std::uint64_t kMaxIsoTuples = 1'000'000;

/// Bijection f: A → B given by f(a_i) = b_{mapping[i]}.
template <typename TA, typename TB = TA>
class SetBijection {
public:
  SetBijection(FiniteSet<TA> domain, FiniteSet<TB> codomain, std::vector<std::size_t> mapping)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), mapping_(std::move(mapping)) {
    if (domain_.size() != codomain_.size())
      throw PreconditionError("bijection between sets of different sizes");
    if (mapping_.size() != domain_.size())
      throw PreconditionError("mapping length differs from set size");
    std::vector<bool> hit(codomain_.size(), false);
    for (std::size_t j : mapping_) {
      if (j >= codomain_.size() || hit[j])
        throw PreconditionError("mapping is not a bijection");
      hit[j] = true;
    }
  }

  /// a_i ↦ b_i for both sets in ascending order.
  static SetBijection order_map(FiniteSet<TA> domain, FiniteSet<TB> codomain) {
    std::vector<std::size_t> id(domain.size());
    std::iota(id.begin(), id.end(), 0);
    return SetBijection(std::move(domain), std::move(codomain), std::move(id));
  }

  /// Codomain is built as {g(a) : a ∈ A}; g must be injective on A.
  static SetBijection from_function(FiniteSet<TA> domain, const std::function<TB(const TA&)>& g) {
    std::vector<TB> images;
    for (const auto& a : domain)
      images.push_back(g(a));
    FiniteSet<TB> codomain(images);
    if (codomain.size() != domain.size())
      throw PreconditionError("function is not injective on the domain");
    std::vector<std::size_t> mapping;
    for (const auto& y : images)
      mapping.push_back(static_cast<std::size_t>(
          std::find(codomain.begin(), codomain.end(), y) - codomain.begin()));
    return SetBijection(std::move(domain), std::move(codomain), std::move(mapping));
  }

  const FiniteSet<TA>& domain() const { return domain_; }
  const FiniteSet<TB>& codomain() const { return codomain_; }
  const std::vector<std::size_t>& mapping() const { return mapping_; }
  std::size_t size() const { return domain_.size(); }

  const TB& operator()(std::size_t i) const { return codomain_[mapping_[i]]; }

  /// f(a_1), …, f(a_k) in domain order.
  std::vector<TB> mapped_values() const {
    std::vector<TB> out;
    for (std::size_t i = 0; i < size(); ++i)
      out.push_back((*this)(i));
    return out;
  }

  SetBijection<TB, TA> inverse() const {
    std::vector<std::size_t> inv(size());
    for (std::size_t i = 0; i < size(); ++i)
      inv[mapping_[i]] = i;
    return SetBijection<TB, TA>(codomain_, domain_, std::move(inv));
  }

private:
  FiniteSet<TA> domain_;
  FiniteSet<TB> codomain_;
  std::vector<std::size_t> mapping_;
};

/// g ∘ f
template <typename TA, typename TB, typename TC>
SetBijection<TA, TC> compose(const SetBijection<TB, TC>& g, const SetBijection<TA, TB>& f) {
  if (!(f.codomain() == g.domain()))
    throw PreconditionError("cannot compose: codomain of f is not the domain of g");
  std::vector<std::size_t> m(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    m[i] = g.mapping()[f.mapping()[i]];
  return SetBijection<TA, TC>(f.domain(), g.codomain(), std::move(m));
}

using IndexTuple = std::vector<std::size_t>;

struct IsoVerdict {
  bool is_homomorphism = false;
  bool is_isomorphism = false;
  /// Two index tuples that coincide under Φ on exactly one side.
  std::optional<std::pair<IndexTuple, IndexTuple>> witness;
};

/// Decides whether f* is a Φ-isomorphism A^h → B^h by comparing the
/// partitions of the index-tuple space into equal-Φ classes on each side.
template <typename TA, typename TB>
IsoVerdict is_phi_isomorphism(const LinearForm& form, const SetBijection<TA, TB>& f,
                              std::uint64_t limit = kMaxIsoTuples) {
  const std::size_t k = f.size();
  const std::size_t h = form.arity();
  tuple_count(k, h, limit);
  auto on_a = group_tuples(tuple_values(form, std::span<const TA>(f.domain().elements()), limit));
  auto mapped = f.mapped_values();
  auto on_b = group_tuples(tuple_values(form, std::span<const TB>(mapped), limit));

  IsoVerdict verdict;
  if (on_a.class_of == on_b.class_of) {
    verdict.is_homomorphism = verdict.is_isomorphism = true;
    return verdict;
  }
  const std::uint64_t n = on_a.class_of.size();
  verdict.is_homomorphism = true;
  for (std::uint64_t t = 0; t < n; ++t) {
    std::uint64_t rep_a = on_a.first[on_a.class_of[t]];
    if (on_b.class_of[t] != on_b.class_of[rep_a]) {
      verdict.is_homomorphism = false;
      break;
    }
  }
  for (std::uint64_t t = 0; t < n && !verdict.witness; ++t) {
    std::uint64_t rep_a = on_a.first[on_a.class_of[t]];
    std::uint64_t rep_b = on_b.first[on_b.class_of[t]];
    std::optional<std::uint64_t> other;
    if (on_b.class_of[t] != on_b.class_of[rep_a])
      other = rep_a;
    else if (on_a.class_of[t] != on_a.class_of[rep_b])
      other = rep_b;
    if (other) {
      IndexTuple u(h), v(h);
      decode_tuple(*other, k, u);
      decode_tuple(t, k, v);
      verdict.witness = std::make_pair(std::move(u), std::move(v));
    }
  }
  if (!verdict.witness)
    throw InvariantError("partitions differ but no witness pair was found");
  return verdict;
}

template <typename TA, typename TB>
struct InducedPair {
  TA x;
  TB y;
  std::uint64_t multiplicity;  // r_{Φ,A}(x) = r_{Φ,B}(y)
};

/// F: Φ(A) → Φ(B), F(Φ(u)) = Φ(f*(u)), listed in ascending order of x.
template <typename TA, typename TB>
struct InducedMap {
  std::vector<InducedPair<TA, TB>> pairs;

  std::size_t size() const { return pairs.size(); }
};

template <typename TA, typename TB>
InducedMap<TA, TB> induced_bijection(const LinearForm& form, const SetBijection<TA, TB>& f,
                                     std::uint64_t limit = kMaxIsoTuples) {
  if (!is_phi_isomorphism(form, f, limit).is_isomorphism)
    throw PreconditionError("induced bijection requested for a map that is not a Φ-isomorphism");
  auto on_a = group_tuples(tuple_values(form, std::span<const TA>(f.domain().elements()), limit));
  auto mapped = f.mapped_values();
  auto on_b = group_tuples(tuple_values(form, std::span<const TB>(mapped), limit));
  // identical partitions, so class c on each side is the same tuple set
  InducedMap<TA, TB> out;
  for (std::size_t c = 0; c < on_a.value.size(); ++c) {
    if (on_a.size[c] != on_b.size[c])
      throw InvariantError("representation counts differ across an isomorphism");
    out.pairs.push_back({on_a.value[c], on_b.value[c], on_a.size[c]});
  }
  std::sort(out.pairs.begin(), out.pairs.end(), [](const auto& p, const auto& q) {
    return compare_values(p.x, q.x) < 0;
  });
  return out;
}

struct SignedTransfer {
  bool is_isomorphism;      // f is also a Φ_J-isomorphism
  std::size_t domain_size;  // |Φ_J(A)|
  std::size_t codomain_size;  // |Φ_J(B)|

  bool holds() const { return is_isomorphism && domain_size == codomain_size; }
};

/// A Φ-isomorphism is also a Φ_J-isomorphism with |Φ_J(A)| = |Φ_J(B)|.
/// A failing result means a bug, never a property of the input.
template <typename TA, typename TB>
SignedTransfer check_signed_transfer(const LinearForm& form, const IndexSubset& flipped,
                                     const SetBijection<TA, TB>& f,
                                     std::uint64_t limit = kMaxIsoTuples) {
  if (!is_phi_isomorphism(form, f, limit).is_isomorphism)
    throw PreconditionError("signed transfer requires a Φ-isomorphism");
  LinearForm phi_j = signed_form(form, flipped);
  bool iso = is_phi_isomorphism(phi_j, f, limit).is_isomorphism;
  return {iso, form_image(phi_j, f.domain(), limit).size(),
          form_image(phi_j, f.codomain(), limit).size()};
}


/// x ↦ λx + μ on the domain, with λ and μ in the codomain's group.
template <typename T>
struct AffineClassification {
  T lambda;
  T mu;
  bool matches;
};

/// Any Freiman isomorphism out of A* into a 2-divisible group is
/// f(x) = x·(f(2) − f(0))/2 + f(0). Returns that formula's λ, μ and whether
/// it reproduces all eight points.
template <typename T>
AffineClassification<T> affine_reconstruct(const SetBijection<Rational, T>& f) {
  const RationalSet a = astar();
  if (!(f.domain() == a))
    throw PreconditionError("affine reconstruction needs domain {0,2,3,4,7,11,12,14}");
  if (!is_phi_isomorphism(LinearForm::sum(), f).is_isomorphism)
    throw PreconditionError("map is not a Freiman isomorphism");
  const T& f0 = f(0);  // a_1 = 0
  const T& f2 = f(1);  // a_2 = 2
  T lambda = Rational(1, 2) * (f2 - f0);
  T mu = f0;
  bool matches = true;
  for (std::size_t i = 0; i < a.size(); ++i)
    matches = matches && (a[i] * lambda + mu == f(i));
  return {std::move(lambda), std::move(mu), matches};
}

namespace detail {

// pair_equal[i][j][p][q] ⇔ x_i + x_j = x_p + x_q
template <typename T>
std::vector<char> sum_coincidences(const std::vector<T>& x) {
  const std::size_t k = x.size();
  std::vector<char> eq(k * k * k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      T s = x[i] + x[j];
      for (std::size_t p = 0; p < k; ++p)
        for (std::size_t q = 0; q < k; ++q)
          eq[((i * k + j) * k + p) * k + q] = (x[p] + x[q] == s);
    }
  return eq;
}

}  // namespace detail

/// Lexicographically least Freiman isomorphism A → B (as a mapping vector),
/// found by backtracking with early coincidence-mismatch abort.
template <typename TA, typename TB>
std::optional<std::vector<std::size_t>> find_freiman_isomorphism(const FiniteSet<TA>& a,
                                                                 const FiniteSet<TB>& b) {
  const std::size_t k = a.size();
  if (b.size() != k)
    return std::nullopt;
  const auto eq_a = detail::sum_coincidences(a.elements());
  const auto eq_b = detail::sum_coincidences(b.elements());
  auto idx = [k](std::size_t i, std::size_t j, std::size_t p, std::size_t q) {
    return ((i * k + j) * k + p) * k + q;
  };
  std::vector<std::size_t> perm(k);
  std::vector<bool> used(k, false);

  // consistent after assigning position i: every relation involving i and
  // earlier positions agrees on both sides
  auto consistent = [&](std::size_t i) {
    for (std::size_t j = 0; j <= i; ++j)
      for (std::size_t p = 0; p <= i; ++p)
        for (std::size_t q = 0; q <= i; ++q)
          if (eq_a[idx(i, j, p, q)] != eq_b[idx(perm[i], perm[j], perm[p], perm[q])])
            return false;
    return true;
  };
  std::function<bool(std::size_t)> extend = [&](std::size_t i) {
    if (i == k)
      return true;
    for (std::size_t j = 0; j < k; ++j) {
      if (used[j])
        continue;
      perm[i] = j;
      used[j] = true;
      if (consistent(i) && extend(i + 1))
        return true;
      used[j] = false;
    }
    return false;
  };
  if (!extend(0))
    return std::nullopt;
  return perm;
}

template <typename T>
struct Mstd8Classification {
  RationalSet normalized;  // B = g(A), b_1 = 0, b_2 = 2
  SetBijection<Rational, Rational> isomorphism;  // A* → B
  AffineClassification<Rational> normalized_map;  // (1,0) or (−1,14)
  bool reflected;  // B = 14 − A*
  // A* → A composed map x ↦ slope·x + intercept
  T slope;
  T intercept;
};

/// Every 8-element MSTD set is affinely isomorphic to A*: normalize A by
/// g(x) = 2(x − a_1)/(a_2 − a_1), find a Freiman isomorphism A* → g(A) (or
/// use the supplied mapping), and classify it as the identity or x ↦ 14 − x.
template <typename T>
Mstd8Classification<T> classify_mstd8(const FiniteSet<T>& a,
                                      std::optional<std::vector<std::size_t>> supplied = std::nullopt) {
  if (a.size() != 8)
    throw PreconditionError("classification needs a set of exactly 8 elements");
  if (!is_mstd(a).is_mstd)
    throw PreconditionError("set is not an MSTD set");
  const T& a1 = a[0];
  const T& a2 = a[1];
  T gap = a2 - a1;
  std::vector<Rational> normalized;
  for (const auto& x : a) {
    auto r = exact_ratio(T(x - a1), gap);
    if (!r)
      throw PreconditionError("set is not a rational affine image of a rational set");
    normalized.push_back(2 * *r);
  }
  RationalSet b(std::move(normalized));

  std::vector<std::size_t> mapping;
  if (supplied) {
    mapping = *supplied;
  } else {
    auto found = find_freiman_isomorphism(astar(), b);
    if (!found)
      throw InvariantError("no Freiman isomorphism from A* to the normalized set");
    mapping = *found;
  }
  SetBijection<Rational, Rational> f(astar(), b, mapping);
  auto cls = affine_reconstruct(f);
  if (!cls.matches)
    throw InvariantError("Freiman isomorphism out of A* is not affine");
  bool reflected;
  if (cls.lambda == 1 && cls.mu == 0)
    reflected = false;
  else if (cls.lambda == -1 && cls.mu == 14)
    reflected = true;
  else
    throw InvariantError("normalized map is neither x nor 14 - x");
  // x ↦ a_1 + (a_2 − a_1)/2 · (λx + μ)
  T slope = Rational(cls.lambda / 2) * gap;
  T intercept = a1 + Rational(cls.mu / 2) * gap;
  return {std::move(b), std::move(f), std::move(cls), reflected, std::move(slope), std::move(intercept)};
}

}  // namespace freiman
