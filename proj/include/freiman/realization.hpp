#pragma once

// Construction of a set of positive integers Φ-isomorphic to a finite set of
// symbolic reals, by three independent routes:
//   group      coordinates in Z^d, then the base-λ lattice embedding
//   dirichlet  simultaneous rational approximation q·a_i ≈ b_i
//   lp         exact rational solution of the coincidence/order system
// Every result carries an exhaustive exact certificate.

#include "freiman/isomorphism.hpp"
#include "freiman/simplex.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace freiman {

/// No certified output could be produced (search bound hit, degenerate input).
class RealizationFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Distinct points of Z^d.
struct LatticeSet {
  std::size_t dimension;
  std::vector<std::vector<BigInt>> points;
};

struct EmbeddingParams {
  BigInt a_star;    // max |coordinate|
  BigInt phi_star;  // max |φ_j|
  std::size_t h;
  BigInt lambda;    // 2·a*·φ*·h + 2
};

struct LatticeEmbedding {
  std::vector<BigInt> images;  // f_λ(point_i), aligned with the points
  EmbeddingParams params;
};

/// f_λ(x_1,…,x_d) = Σ x_i λ^{i−1} with the smallest integer λ > 2a*φ*h + 1.
/// Injective on the points and a Φ-isomorphism onto its image.
inline LatticeEmbedding lattice_embed(const LatticeSet& lattice, const LinearForm& form) {
  if (lattice.points.empty())
    throw PreconditionError("lattice set is empty");
  if (!form.is_integral())
    throw PreconditionError("lattice embedding needs integer coefficients");
  EmbeddingParams p;
  p.h = form.arity();
  p.phi_star = numerator(form.max_abs_coeff());
  p.a_star = 0;
  for (const auto& pt : lattice.points) {
    if (pt.size() != lattice.dimension)
      throw PreconditionError("lattice point of the wrong dimension");
    for (const auto& x : pt)
      p.a_star = std::max(p.a_star, BigInt(abs(x)));
  }
  p.lambda = 2 * p.a_star * p.phi_star * p.h + 2;

  LatticeEmbedding out{{}, p};
  for (const auto& pt : lattice.points) {
    BigInt value = 0;
    BigInt power = 1;
    for (const auto& x : pt) {
      value += x * power;
      power *= p.lambda;
    }
    out.images.push_back(std::move(value));
  }
  return out;
}

/// B + (1 − min B) when min B <= 0.
inline RationalSet translate_positive(const RationalSet& b) {
  if (b.min() >= 1)
    return b;
  return translate(b, Rational(1 - b.min()));
}

enum class Method { lattice, group, dirichlet, lp };

inline const char* to_string(Method m) {
  switch (m) {
    case Method::lattice: return "lattice";
    case Method::group: return "group";
    case Method::dirichlet: return "dirichlet";
    case Method::lp: return "lp";
  }
  return "?";
}

struct DirichletParams {
  long double delta_star = 0;
  long double epsilon = 0;
  std::uint64_t q = 0;
  std::vector<long double> thetas;  // q·a_i − b_i
  unsigned retries = 0;             // certificate failures that halved ε
};

struct LpParams {
  std::uint64_t raw_constraints = 0;
  std::size_t equalities = 0;
  std::size_t inequalities = 0;
  std::size_t pivots = 0;
  BigInt scale = 1;  // m in B = m·B̂
};

struct RealizationResult {
  RationalSet b;
  Method method;
  SetBijection<RealElement, Rational> map;  // a_i ↦ b
  IsoVerdict certificate;
  std::optional<EmbeddingParams> embedding;
  std::optional<BigInt> coordinate_scale;
  std::optional<DirichletParams> dirichlet;
  std::optional<LpParams> lp;

  bool certified() const { return certificate.is_isomorphism; }
};

namespace detail {

inline RealizationResult certify(const RealSet& a, const LinearForm& form,
                                 const std::vector<BigInt>& values, Method method) {
  std::vector<Rational> raw(values.begin(), values.end());
  RationalSet unshifted(raw);
  if (unshifted.size() != a.size())
    throw RealizationFailure("constructed map is not injective");
  Rational shift = unshifted.min() >= 1 ? Rational(0) : Rational(1 - unshifted.min());
  std::vector<Rational> shifted;
  for (const auto& v : raw)
    shifted.push_back(v + shift);
  RationalSet b(shifted);
  std::vector<std::size_t> mapping;
  for (const auto& v : shifted)
    mapping.push_back(static_cast<std::size_t>(std::find(b.begin(), b.end(), v) - b.begin()));
  SetBijection<RealElement, Rational> f(a, b, std::move(mapping));
  IsoVerdict cert = is_phi_isomorphism(form, f);
  return RealizationResult{std::move(b), method, std::move(f), std::move(cert), {}, {}, {}, {}};
}

inline RealizationResult singleton(const RealSet& a, const LinearForm& form, Method method) {
  return certify(a, form, {BigInt(1)}, method);
}

}  // namespace detail

/// Third route: scale coordinates into Z^d, then lattice_embed.
inline RealizationResult realize_group(const RealSet& a, const LinearForm& form) {
  const std::size_t d = a.min().dimension();
  std::vector<Rational> all;
  for (const auto& x : a)
    all.insert(all.end(), x.coords().begin(), x.coords().end());
  BigInt scale = denominator_lcm(all);

  LatticeSet lattice{d, {}};
  for (const auto& x : a) {
    std::vector<BigInt> pt;
    for (const auto& c : x.coords())
      pt.push_back(numerator(Rational(c * scale)));
    lattice.points.push_back(std::move(pt));
  }
  auto emb = lattice_embed(lattice, clear_denominators(form).form);
  auto result = detail::certify(a, form, emb.images, Method::group);
  result.embedding = emb.params;
  result.coordinate_scale = scale;
  return result;
}

inline RealizationResult realize_group(const RationalSet& a, const LinearForm& form) {
  return realize_group(lift(a), form);
}

struct DirichletOptions {
  std::uint64_t q_bound = 1'000'000'000;
  long double safety = 1.0L - 1e-6L;
  unsigned max_retries = 16;
};

/// Second route: find q with |q·a_i − b_i| < ε for all i, where
/// ε = min(δ*,1)/(2hφ*)/2 and δ* is the smallest gap in Φ(A).
inline RealizationResult realize_dirichlet(const RealSet& a, const LinearForm& form,
                                           const DirichletOptions& opt = {}) {
  if (a.size() == 1)
    return detail::singleton(a, form, Method::dirichlet);
  const LinearForm integral = clear_denominators(form).form;
  const std::size_t h = integral.arity();
  const long double phi_star = to_long_double(integral.max_abs_coeff());

  auto image = form_image(integral, a).image;
  long double delta = std::numeric_limits<long double>::infinity();
  long double scale = 0;
  for (std::size_t i = 0; i < image.size(); ++i) {
    scale = std::max(scale, std::fabs(image[i].approx()));
    if (i > 0)
      delta = std::min(delta, image[i].approx() - image[i - 1].approx());
  }
  delta *= opt.safety;
  if (!(delta > 1e-12L * (scale + 1)))
    throw RealizationFailure("elements too close: the smallest gap in Φ(A) is indistinguishable from 0 "
                             "at float precision");

  DirichletParams params;
  params.delta_star = delta;
  params.epsilon = std::min(delta, 1.0L) / (2 * h * phi_star) / 2;

  std::vector<long double> x;
  for (const auto& e : a)
    x.push_back(e.approx());
  const std::size_t k = x.size();
  std::vector<std::size_t> check_order(k);
  std::iota(check_order.begin(), check_order.end(), 0);

  long double best_norm = std::numeric_limits<long double>::infinity();
  std::uint64_t best_q = 0;
  for (std::uint64_t q = 1; q <= opt.q_bound; ++q) {
    const long double eps = params.epsilon;
    const long double qq = static_cast<long double>(q);
    bool ok = true;
    for (std::size_t pos = 0; pos < k; ++pos) {
      std::size_t i = check_order[pos];
      long double v = qq * x[i];
      if (std::fabs(v - std::nearbyint(v)) >= eps) {
        if (pos > 0) {
          // near-candidate: track its full residual norm, then move the
          // failing element to the front
          long double norm = 0;
          for (std::size_t t = 0; t < k; ++t) {
            long double w = qq * x[t];
            norm = std::max(norm, std::fabs(w - std::nearbyint(w)));
          }
          if (norm < best_norm) {
            best_norm = norm;
            best_q = q;
          }
          std::rotate(check_order.begin(), check_order.begin() + pos, check_order.begin() + pos + 1);
        }
        ok = false;
        break;
      }
    }
    if (!ok)
      continue;

    std::vector<BigInt> b;
    params.thetas.clear();
    for (std::size_t i = 0; i < k; ++i) {
      long double v = qq * x[i];
      long double r = std::nearbyint(v);
      if (std::fabs(r) > 9e18L)
        throw RealizationFailure("Dirichlet approximation exceeds 64-bit rounding range");
      b.emplace_back(static_cast<long long>(r));
      params.thetas.push_back(v - r);
    }
    params.q = q;
    try {
      auto result = detail::certify(a, form, b, Method::dirichlet);
      if (result.certified()) {
        result.dirichlet = params;
        return result;
      }
    } catch (const RealizationFailure&) {
    }
    if (++params.retries > opt.max_retries)
      break;
    params.epsilon /= 2;
  }
  throw RealizationFailure("no q <= " + std::to_string(opt.q_bound) +
                           " approximates every element within epsilon = " +
                           std::to_string(static_cast<double>(params.epsilon)) +
                           "; smallest residual norm seen " + std::to_string(static_cast<double>(best_norm)) +
                           " at q = " + std::to_string(best_q));
}

inline RealizationResult realize_dirichlet(const RationalSet& a, const LinearForm& form,
                                           const DirichletOptions& opt = {}) {
  return realize_dirichlet(lift(a), form, opt);
}

struct LpOptions {
  std::uint64_t max_pairs = 1'000'000;  // k^{2h}
};

/// First route: one linear equation or strict inequality per pair of
/// h-tuples, according to how their Φ-values on A compare; solve exactly,
/// clear denominators, translate positive.
inline RealizationResult realize_lp(const RealSet& a, const LinearForm& form, const LpOptions& opt = {}) {
  const std::size_t k = a.size();
  const LinearForm integral = clear_denominators(form).form;
  const std::size_t h = integral.arity();
  const std::uint64_t tuples = tuple_count(k, h, opt.max_pairs);
  if (tuples > opt.max_pairs / tuples)
    throw PreconditionError("constraint system |A|^{2h} exceeds the limit of " + std::to_string(opt.max_pairs));

  // rank of each tuple's Φ-value in the real order of Φ(A)
  auto classes = group_tuples(tuple_values(integral, a));
  std::vector<std::size_t> order(classes.value.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return compare_values(classes.value[x], classes.value[y]) < 0;
  });
  std::vector<std::size_t> rank_of_class(order.size());
  for (std::size_t r = 0; r < order.size(); ++r)
    rank_of_class[order[r]] = r;

  // coefficient vector of each tuple: Φ(t_{i_1},…,t_{i_h}) as a form in t_1..t_k
  std::vector<std::vector<BigInt>> coeff(tuples, std::vector<BigInt>(k));
  {
    IndexTuple idx(h);
    for (std::uint64_t t = 0; t < tuples; ++t) {
      decode_tuple(t, k, idx);
      for (std::size_t j = 0; j < h; ++j)
        coeff[t][idx[j]] += numerator(integral[j]);
    }
  }

  LpParams params;
  params.raw_constraints = tuples * tuples;
  std::set<std::vector<BigInt>> eq_rows, ge_rows;
  for (std::uint64_t s = 0; s < tuples; ++s) {
    const std::size_t rs = rank_of_class[classes.class_of[s]];
    for (std::uint64_t t = s + 1; t < tuples; ++t) {
      const std::size_t rt = rank_of_class[classes.class_of[t]];
      std::vector<BigInt> row(k);
      bool zero = true;
      for (std::size_t i = 0; i < k; ++i) {
        row[i] = coeff[s][i] - coeff[t][i];
        zero = zero && row[i] == 0;
      }
      if (rs == rt) {
        if (zero)
          continue;
        auto lead = std::find_if(row.begin(), row.end(), [](const BigInt& v) { return v != 0; });
        if (*lead < 0)
          for (auto& v : row)
            v = -v;
        eq_rows.insert(std::move(row));
      } else {
        if (rs < rt)
          for (auto& v : row)
            v = -v;
        ge_rows.insert(std::move(row));
      }
    }
  }
  params.equalities = eq_rows.size();
  params.inequalities = ge_rows.size();

  auto to_matrix = [](const std::set<std::vector<BigInt>>& rows) {
    RationalMatrix m;
    for (const auto& r : rows)
      m.emplace_back(r.begin(), r.end());
    return m;
  };
  auto lp = solve_homogeneous(to_matrix(eq_rows), to_matrix(ge_rows), k);
  params.pivots = lp.pivots;
  if (!lp.solution)
    throw InvariantError("coincidence/order system is infeasible although A solves it");

  params.scale = denominator_lcm(*lp.solution);
  std::vector<BigInt> b;
  for (const auto& v : *lp.solution)
    b.push_back(numerator(Rational(v * params.scale)));
  auto result = detail::certify(a, form, b, Method::lp);
  result.lp = params;
  return result;
}

inline RealizationResult realize_lp(const RationalSet& a, const LinearForm& form, const LpOptions& opt = {}) {
  return realize_lp(lift(a), form, opt);
}

/// Group reduction, falling back to the Dirichlet route if it cannot certify.
inline RealizationResult realize_auto(const RealSet& a, const LinearForm& form) {
  try {
    auto r = realize_group(a, form);
    if (r.certified())
      return r;
  } catch (const RealizationFailure&) {
  }
  return realize_dirichlet(a, form);
}

}  // namespace freiman
