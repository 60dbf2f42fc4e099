#pragma once

#include "freiman/scalar.hpp"

#include <algorithm>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace freiman {

/// Φ(t_1,…,t_h) = Σ φ_j t_j with rational coefficients, not all zero.
class LinearForm {
public:
  explicit LinearForm(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty())
      throw PreconditionError("linear form needs arity >= 1");
    if (std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; }))
      throw PreconditionError("linear form must be nonzero");
  }

  LinearForm(std::initializer_list<long long> coeffs)
      : LinearForm([&] {
          std::vector<Rational> v;
          for (long long c : coeffs)
            v.emplace_back(c);
          return v;
        }()) {}

  static LinearForm sum() { return LinearForm{1, 1}; }
  static LinearForm difference() { return LinearForm{1, -1}; }

  std::size_t arity() const { return coeffs_.size(); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const Rational& operator[](std::size_t j) const { return coeffs_[j]; }

  bool is_integral() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return is_integer(c); });
  }

  /// max |φ_j|
  Rational max_abs_coeff() const {
    Rational m = 0;
    for (const auto& c : coeffs_)
      m = std::max(m, Rational(abs(c)));
    return m;
  }

  /// Φ evaluated on (values[idx[0]], …, values[idx[h-1]]).
  template <typename T>
  T evaluate(std::span<const T> values, std::span<const std::size_t> idx) const {
    T acc = coeffs_[0] * values[idx[0]];
    for (std::size_t j = 1; j < coeffs_.size(); ++j)
      if (coeffs_[j] != 0)
        acc += coeffs_[j] * values[idx[j]];
    return acc;
  }

  friend bool operator==(const LinearForm&, const LinearForm&) = default;

private:
  std::vector<Rational> coeffs_;
};

/// Indices J ⊆ {1,…,h}, stored 1-based as in the usual notation.
using IndexSubset = std::set<std::size_t>;

/// Φ_J: negate the coefficients indexed by J.
inline LinearForm signed_form(const LinearForm& form, const IndexSubset& flipped) {
  std::vector<Rational> c = form.coeffs();
  for (std::size_t j : flipped) {
    if (j < 1 || j > c.size())
      throw PreconditionError("index " + std::to_string(j) + " outside {1,...," +
                              std::to_string(c.size()) + "}");
    c[j - 1] = -c[j - 1];
  }
  return LinearForm(std::move(c));
}

/// All 2^h subsets of {1,…,h}.
inline std::vector<IndexSubset> all_subsets(std::size_t h) {
  std::vector<IndexSubset> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << h); ++mask) {
    IndexSubset j;
    for (std::size_t i = 0; i < h; ++i)
      if (mask >> i & 1)
        j.insert(i + 1);
    out.push_back(std::move(j));
  }
  return out;
}

struct ClearedForm {
  LinearForm form;
  BigInt multiplier;
};

/// mΦ with m the least positive common multiple of the coefficient
/// denominators. Coincidences Φ(u) = Φ(u') are unchanged.
inline ClearedForm clear_denominators(const LinearForm& form) {
  BigInt m = denominator_lcm(form.coeffs());
  std::vector<Rational> c;
  for (const auto& x : form.coeffs())
    c.push_back(x * m);
  return {LinearForm(std::move(c)), m};
}

/// Parses "1,1,-1" or "1/2, 1/3".
inline LinearForm parse_form(std::string_view text) {
  std::vector<Rational> c;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    c.push_back(parse_rational(text.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos)
      break;
    start = comma + 1;
  }
  return LinearForm(std::move(c));
}

inline std::string to_string(const LinearForm& form) {
  std::string out;
  for (std::size_t j = 0; j < form.arity(); ++j) {
    const Rational& c = form[j];
    if (c == 0)
      continue;
    std::string var = "t" + std::to_string(j + 1);
    if (out.empty())
      out += c == 1 ? var : c == -1 ? "-" + var : to_string(c) + var;
    else if (c > 0)
      out += c == 1 ? "+" + var : "+" + to_string(c) + var;
    else
      out += c == -1 ? "-" + var : "-" + to_string(Rational(-c)) + var;
  }
  return out;
}

}  // namespace freiman
