#pragma once

// Exact scalars: arbitrary-precision integers and fractions, plus real numbers
// represented symbolically as rational coordinate vectors over a declared
// basis of Q-linearly independent reals.

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace freiman {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Violated operation precondition (bad argument, wrong kind of set, ...).
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// An exact check that the theory guarantees failed. Seeing one means a bug
/// or corrupted input arithmetic.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

inline BigInt to_integer(const Rational& r) {
  if (!is_integer(r))
    throw PreconditionError("value is not an integer");
  return numerator(r);
}

inline std::string to_string(const BigInt& n) { return n.str(); }

inline std::string to_string(const Rational& r) {
  if (is_integer(r))
    return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline long double to_long_double(const Rational& r) {
  return r.convert_to<long double>();
}

/// Parses `p`, `-p`, `p/q` (optionally surrounded by blanks).
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
      s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
      s.remove_suffix(1);
    return s;
  };
  auto parse_int = [](std::string_view s) {
    if (s.empty())
      throw PreconditionError("empty integer literal");
    std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
    if (i == s.size())
      throw PreconditionError("malformed integer literal '" + std::string(s) + "'");
    for (std::size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j])))
        throw PreconditionError("malformed integer literal '" + std::string(s) + "'");
    BigInt value(std::string(s.substr(i)));
    return s.front() == '-' ? BigInt(-value) : value;
  };
  text = trim(text);
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text));
  BigInt num = parse_int(trim(text.substr(0, slash)));
  BigInt den = parse_int(trim(text.substr(slash + 1)));
  if (den == 0)
    throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Least positive common multiple of the denominators.
template <typename Range>
BigInt denominator_lcm(const Range& values) {
  BigInt m = 1;
  for (const Rational& v : values)
    m = lcm(m, BigInt(denominator(v)));
  return m;
}

inline BigInt ipow(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

/// Declared basis of the Q-vector space the real elements live in. The first
/// element is always the constant 1. Linear independence over Q is asserted
/// by whoever builds the basis; it cannot be checked numerically.
class Basis {
public:
  Basis(std::vector<std::string> labels, std::vector<double> approx)
      : labels_(std::move(labels)), approx_(std::move(approx)) {
    if (labels_.empty())
      throw PreconditionError("basis must have dimension >= 1");
    if (labels_.size() != approx_.size())
      throw PreconditionError("basis labels and approximations differ in length");
    if (labels_.front() != "1" || approx_.front() != 1.0)
      throw PreconditionError("first basis element must be the constant 1");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (labels_[i] == labels_[j])
          throw PreconditionError("duplicate basis label '" + labels_[i] + "'");
      if (!std::isfinite(approx_[i]))
        throw PreconditionError("basis approximation must be finite");
    }
  }

  static std::shared_ptr<const Basis> rational() {
    static const auto one = std::make_shared<const Basis>(
        std::vector<std::string>{"1"}, std::vector<double>{1.0});
    return one;
  }

  std::size_t dimension() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<double>& approx() const { return approx_; }

  friend bool operator==(const Basis& a, const Basis& b) {
    return a.labels_ == b.labels_ && a.approx_ == b.approx_;
  }

private:
  std::vector<std::string> labels_;
  std::vector<double> approx_;
};

using BasisPtr = std::shared_ptr<const Basis>;

inline bool same_basis(const BasisPtr& a, const BasisPtr& b) {
  return a == b || (a && b && *a == *b);
}

/// A real number Σ coords[i]·basis[i]. Equality is exact on coordinates;
/// the float value is only used for ordering.
class RealElement {
public:
  RealElement(BasisPtr basis, std::vector<Rational> coords)
      : basis_(std::move(basis)), coords_(std::move(coords)) {
    if (!basis_)
      throw PreconditionError("real element needs a basis");
    if (coords_.size() != basis_->dimension())
      throw PreconditionError("coordinate vector length differs from basis dimension");
  }

  /// Rational number embedded over the given basis.
  static RealElement from_rational(const Rational& r, BasisPtr basis = Basis::rational()) {
    std::vector<Rational> coords(basis->dimension());
    coords[0] = r;
    return RealElement(std::move(basis), std::move(coords));
  }

  const BasisPtr& basis() const { return basis_; }
  const std::vector<Rational>& coords() const { return coords_; }
  std::size_t dimension() const { return coords_.size(); }

  bool is_rational() const {
    for (std::size_t i = 1; i < coords_.size(); ++i)
      if (coords_[i] != 0)
        return false;
    return true;
  }

  long double approx() const {
    long double v = 0;
    for (std::size_t i = 0; i < coords_.size(); ++i)
      v += to_long_double(coords_[i]) * static_cast<long double>(basis_->approx()[i]);
    return v;
  }

  RealElement& operator+=(const RealElement& o) {
    check_basis(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      coords_[i] += o.coords_[i];
    return *this;
  }
  RealElement& operator-=(const RealElement& o) {
    check_basis(o);
    for (std::size_t i = 0; i < coords_.size(); ++i)
      coords_[i] -= o.coords_[i];
    return *this;
  }
  RealElement& operator*=(const Rational& c) {
    for (auto& x : coords_)
      x *= c;
    return *this;
  }
  friend RealElement operator+(RealElement a, const RealElement& b) { return a += b; }
  friend RealElement operator-(RealElement a, const RealElement& b) { return a -= b; }
  friend RealElement operator*(const Rational& c, RealElement a) { return a *= c; }
  friend RealElement operator*(RealElement a, const Rational& c) { return a *= c; }
  friend RealElement operator-(RealElement a) { return a *= Rational(-1); }

  friend bool operator==(const RealElement& a, const RealElement& b) {
    return same_basis(a.basis_, b.basis_) && a.coords_ == b.coords_;
  }

  /// Exact, total, arbitrary order (lexicographic on coordinates). Used for
  /// grouping values, not for real-number order.
  friend bool key_less(const RealElement& a, const RealElement& b) {
    return a.coords_ < b.coords_;
  }

  void check_basis(const RealElement& o) const {
    if (!same_basis(basis_, o.basis_))
      throw PreconditionError("real elements over different bases");
  }

private:
  BasisPtr basis_;
  std::vector<Rational> coords_;
};

inline std::strong_ordering compare_values(const Rational& a, const Rational& b) {
  if (a < b)
    return std::strong_ordering::less;
  return b < a ? std::strong_ordering::greater : std::strong_ordering::equal;
}

/// Real-number order of two symbolic reals. Unequal elements whose float
/// values cannot be told apart are a hard error.
inline std::strong_ordering compare_values(const RealElement& a, const RealElement& b) {
  a.check_basis(b);
  if (a.coords() == b.coords())
    return std::strong_ordering::equal;
  RealElement diff = a - b;
  if (diff.is_rational())
    return compare_values(diff.coords()[0], Rational(0));
  long double d = diff.approx();
  long double scale = 0;
  for (std::size_t i = 0; i < diff.dimension(); ++i)
    scale += std::fabs(to_long_double(a.coords()[i]) * a.basis()->approx()[i]) +
             std::fabs(to_long_double(b.coords()[i]) * b.basis()->approx()[i]);
  // Basis approximations are doubles, so relative accuracy is ~1e-16.
  if (std::fabs(d) <= 1e-13L * (scale + 1))
    throw PreconditionError("distinct real elements are indistinguishable at float precision");
  return d < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
}


inline bool key_less(const Rational& a, const Rational& b) { return a < b; }

inline long double approx_value(const Rational& r) { return to_long_double(r); }
inline long double approx_value(const RealElement& r) { return r.approx(); }

inline std::string to_string(const RealElement& r) {
  if (r.dimension() == 1)
    return to_string(r.coords()[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < r.dimension(); ++i) {
    if (i)
      out += ",";
    out += to_string(r.coords()[i]);
  }
  return out + ")";
}

inline std::ostream& operator<<(std::ostream& os, const RealElement& r) {
  return os << to_string(r);
}

/// Exact quotient a/b when a is a rational multiple of b.
inline std::optional<Rational> exact_ratio(const Rational& a, const Rational& b) {
  if (b == 0)
    return std::nullopt;
  return a / b;
}

inline std::optional<Rational> exact_ratio(const RealElement& a, const RealElement& b) {
  a.check_basis(b);
  std::optional<Rational> ratio;
  for (std::size_t i = 0; i < a.dimension(); ++i) {
    const Rational& x = a.coords()[i];
    const Rational& y = b.coords()[i];
    if (y == 0) {
      if (x != 0)
        return std::nullopt;
      continue;
    }
    Rational r = x / y;
    if (ratio && *ratio != r)
      return std::nullopt;
    ratio = r;
  }
  return ratio;
}

}  // namespace freiman
