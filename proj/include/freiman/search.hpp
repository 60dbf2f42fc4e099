#pragma once

// Exhaustive bounded-diameter search over subsets of {0,…,n}, n <= 63.
// A set is one 64-bit word; sumsets and difference sets are shift-or
// convolutions over the set bits.

#include "freiman/form_images.hpp"

#include <algorithm>
#include <bit>
#include <bitset>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <random>
#include <thread>
#include <vector>

namespace freiman {

using Mask = std::uint64_t;

inline constexpr int kMaxDiameter = 63;

/// Canonical representative of an integer affine class: min 0, gcd 1, and
/// lexicographically <= its reflection.
struct CanonicalSet {
  Mask bits = 0;
  bool normalized = false;

  int size() const { return std::popcount(bits); }
  int diameter() const { return bits ? 63 - std::countl_zero(bits) : 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (Mask m = bits; m; m &= m - 1)
      out.push_back(std::countr_zero(m));
    return out;
  }

  RationalSet to_set() const {
    std::vector<Rational> v;
    for (int e : elements())
      v.emplace_back(e);
    return RationalSet(std::move(v));
  }

  friend auto operator<=>(const CanonicalSet& a, const CanonicalSet& b) {
    return a.elements() <=> b.elements();
  }
  friend bool operator==(const CanonicalSet& a, const CanonicalSet& b) { return a.bits == b.bits; }
};

inline Mask mask_of(std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements)
    m |= Mask{1} << e;
  return m;
}

inline Mask reverse_bits(Mask x) {
  x = ((x >> 1) & 0x5555555555555555ULL) | ((x & 0x5555555555555555ULL) << 1);
  x = ((x >> 2) & 0x3333333333333333ULL) | ((x & 0x3333333333333333ULL) << 2);
  x = ((x >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((x & 0x0F0F0F0F0F0F0F0FULL) << 4);
  x = ((x >> 8) & 0x00FF00FF00FF00FFULL) | ((x & 0x00FF00FF00FF00FFULL) << 8);
  x = ((x >> 16) & 0x0000FFFF0000FFFFULL) | ((x & 0x0000FFFF0000FFFFULL) << 16);
  return (x >> 32) | (x << 32);
}

/// max(A) − A for a set with min 0.
inline Mask reflect(Mask a) {
  const int top = 63 - std::countl_zero(a);
  return reverse_bits(a) >> (63 - top);
}

/// Lexicographic order of the sorted element tuples of two equal-size sets:
/// the first difference is the lowest bit where they differ.
inline bool lex_less(Mask a, Mask b) {
  Mask diff = a ^ b;
  return diff && (a & diff & (~diff + 1));
}

inline CanonicalSet canonical_mask(Mask a) {
  if (!a)
    throw PreconditionError("empty set has no canonical form");
  a >>= std::countr_zero(a);
  int g = 0;
  for (Mask m = a; m; m &= m - 1)
    g = std::gcd(g, std::countr_zero(m));
  if (g > 1) {
    Mask scaled = 0;
    for (Mask m = a; m; m &= m - 1)
      scaled |= Mask{1} << (std::countr_zero(m) / g);
    a = scaled;
  }
  Mask r = reflect(a);
  return {lex_less(r, a) ? r : a, true};
}

/// Translate min to 0, divide by the gcd, and take the reflection when it is
/// lexicographically smaller.
inline RationalSet normalize_affine(const RationalSet& a) {
  if (!is_integer_set(a))
    throw PreconditionError("normalize_affine needs an integer set");
  std::vector<BigInt> x;
  for (const auto& v : a)
    x.push_back(numerator(Rational(v - a.min())));
  BigInt g = 0;
  for (const auto& v : x)
    g = gcd(g, v);
  if (g > 1)
    for (auto& v : x)
      v /= g;
  std::vector<BigInt> refl;
  for (auto it = x.rbegin(); it != x.rend(); ++it)
    refl.push_back(x.back() - *it);
  const auto& best = std::lexicographical_compare(refl.begin(), refl.end(), x.begin(), x.end()) ? refl : x;
  return RationalSet(std::vector<Rational>(best.begin(), best.end()));
}

struct SumDiffCounts {
  int sums;
  int diffs;
};

/// |A+A| and |A−A| for A ⊆ {0,…,63}.
inline SumDiffCounts sum_diff_counts(Mask a) {
  unsigned __int128 sums = 0;
  Mask nonneg_diffs = 0;
  const unsigned __int128 wide = a;
  for (Mask m = a; m; m &= m - 1) {
    const int i = std::countr_zero(m);
    sums |= wide << i;
    nonneg_diffs |= a >> i;
  }
  const int s = std::popcount(static_cast<Mask>(sums)) + std::popcount(static_cast<Mask>(sums >> 64));
  return {s, 2 * std::popcount(nonneg_diffs) - 1};
}

struct TripleCounts {
  int plus;   // |A+A+A|
  int minus;  // |A+A−A|
};

inline TripleCounts triple_counts(Mask a) {
  using Wide = std::bitset<192>;
  const int top = a ? 63 - std::countl_zero(a) : 0;
  Wide base(a);
  Wide two;
  for (Mask m = a; m; m &= m - 1)
    two |= base << std::countr_zero(m);
  Wide plus, minus;  // minus is offset by top
  for (Mask m = a; m; m &= m - 1) {
    const int i = std::countr_zero(m);
    plus |= two << i;
    minus |= two << (top - i);
  }
  return {static_cast<int>(plus.count()), static_cast<int>(minus.count())};
}

struct SearchConfig {
  int max_diameter = 14;
  std::optional<int> size;  // exact cardinality filter
  bool require_endpoints = false;
  unsigned jobs = 1;
  bool report_equal = false;  // triple scan: also list symmetric sets
  std::uint64_t budget = std::uint64_t{1} << 36;  // masks scanned, at most
};

struct SearchStats {
  std::uint64_t examined = 0;
  double seconds = 0;
};

/// Default worker count from FREIMAN_JOBS, else 1.
inline unsigned default_jobs() {
  if (const char* env = std::getenv("FREIMAN_JOBS")) {
    int n = std::atoi(env);
    if (n > 0)
      return static_cast<unsigned>(n);
  }
  return 1;
}

namespace detail {

inline void validate(const SearchConfig& cfg) {
  if (cfg.max_diameter < 1 || cfg.max_diameter > kMaxDiameter)
    throw PreconditionError("max diameter must lie in [1, 63]");
  if (cfg.size && (*cfg.size < 1 || *cfg.size > cfg.max_diameter + 1))
    throw PreconditionError("size filter outside [1, n+1]");
  if (cfg.max_diameter >= 63 || (std::uint64_t{1} << cfg.max_diameter) > cfg.budget)
    throw PreconditionError("search budget exceeded: 2^" + std::to_string(cfg.max_diameter) +
                            " sets to scan");
}

/// Calls visit(mask) for every set with min 0 and max in the configured
/// range that is lexicographically <= its reflection, split over workers.
/// Each worker keeps its own results; they are concatenated in worker order.
template <typename Result, typename Visit>
std::vector<Result> scan(const SearchConfig& cfg, SearchStats* stats, Visit visit) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  const unsigned jobs = std::max(1u, cfg.jobs);
  std::vector<std::vector<Result>> local(jobs);
  std::vector<std::uint64_t> examined(jobs, 0);

  auto work = [&](unsigned w) {
    const int lo_top = cfg.require_endpoints ? cfg.max_diameter : 0;
    for (int top = lo_top; top <= cfg.max_diameter; ++top) {
      const Mask ends = top == 0 ? Mask{1} : (Mask{1} | Mask{1} << top);
      const std::uint64_t inner = top <= 1 ? 1 : std::uint64_t{1} << (top - 1);
      const std::uint64_t chunk = (inner + jobs - 1) / jobs;
      const std::uint64_t begin = std::min(inner, chunk * w);
      const std::uint64_t end = std::min(inner, begin + chunk);
      for (std::uint64_t mid = begin; mid < end; ++mid) {
        const Mask a = ends | (static_cast<Mask>(mid) << 1);
        if (cfg.size && std::popcount(a) != *cfg.size)
          continue;
        if (lex_less(reflect(a), a))
          continue;
        ++examined[w];
        visit(a, local[w]);
      }
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::exception_ptr> errors(jobs);
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < jobs; ++w)
      threads.emplace_back([&, w] {
        try {
          work(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& t : threads)
      t.join();
    for (auto& e : errors)
      if (e)
        std::rethrow_exception(e);
  }
  std::vector<Result> out;
  for (auto& l : local)
    out.insert(out.end(), l.begin(), l.end());
  if (stats) {
    stats->examined = std::accumulate(examined.begin(), examined.end(), std::uint64_t{0});
    stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return out;
}

}  // namespace detail

/// All canonical MSTD sets of diameter <= n, sorted lexicographically.
inline std::vector<CanonicalSet> enumerate_mstd(const SearchConfig& cfg, SearchStats* stats = nullptr) {
  auto found = detail::scan<Mask>(cfg, stats, [](Mask a, std::vector<Mask>& out) {
    auto c = sum_diff_counts(a);
    if (c.sums > c.diffs)
      out.push_back(a);
  });
  std::vector<CanonicalSet> out;
  for (Mask a : found)
    out.push_back(canonical_mask(a));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct TripleRecord {
  CanonicalSet set;
  int plus_count;   // |A+A+A|
  int minus_count;  // |A+A−A|
  bool symmetric;
};

inline bool is_symmetric_mask(Mask a) { return reflect(a >> std::countr_zero(a)) == (a >> std::countr_zero(a)); }

/// Canonical sets with |A+A+A| > |A+A−A| (plus symmetric sets when
/// report_equal is set), sorted lexicographically.
inline std::vector<TripleRecord> triple_form_scan(const SearchConfig& cfg, SearchStats* stats = nullptr) {
  const bool report_equal = cfg.report_equal;
  auto found = detail::scan<TripleRecord>(cfg, stats, [&](Mask a, std::vector<TripleRecord>& out) {
    auto c = triple_counts(a);
    const bool sym = is_symmetric_mask(a);
    if (c.plus > c.minus) {
      if (sym)
        throw InvariantError("symmetric set with |A+A+A| > |A+A-A|");
      out.push_back({{a, false}, c.plus, c.minus, sym});
    } else if (report_equal && sym) {
      out.push_back({{a, false}, c.plus, c.minus, sym});
    }
  });
  std::vector<TripleRecord> out;
  for (auto& r : found) {
    r.set = canonical_mask(r.set.bits);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.set < y.set; });
  out.erase(std::unique(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.set == y.set; }),
            out.end());
  return out;
}

/// A ⊆ {0,…,n} with |A| = k and A = n − A, deterministic per seed. For
/// k >= 2 the endpoints 0 and n are included.
inline RationalSet random_symmetric_set(std::uint64_t seed, int n, int k) {
  if (k < 1 || n < 0 || k > n + 1)
    throw PreconditionError("no symmetric subset of {0..n} with that size");
  const bool has_center = n % 2 == 0;
  if (k % 2 == 1 && !has_center)
    throw PreconditionError("odd size needs the center n/2, which is not an integer");
  std::mt19937_64 rng(seed);
  std::vector<int> elems;
  int pairs_needed = k / 2;
  if (k % 2 == 1)
    elems.push_back(n / 2);
  if (pairs_needed > 0) {
    elems.push_back(0);
    elems.push_back(n);
    --pairs_needed;
  }
  std::vector<int> lows;
  for (int i = 1; 2 * i < n; ++i)
    lows.push_back(i);
  std::shuffle(lows.begin(), lows.end(), rng);
  if (pairs_needed > static_cast<int>(lows.size()))
    throw PreconditionError("no symmetric subset of {0..n} with that size");
  for (int i = 0; i < pairs_needed; ++i) {
    elems.push_back(lows[i]);
    elems.push_back(n - lows[i]);
  }
  std::vector<Rational> v(elems.begin(), elems.end());
  return RationalSet(std::move(v));
}

}  // namespace freiman
