#pragma once

// Text formats.
//
// Set file:
//   # comment
//   basis: 1=1.0, sqrt2=1.4142135623730951     (optional; first label is 1)
//   0
//   1/2, 1                                       (coordinates over the basis)
//
// Pairing file (for bijections): one `<element> -> <element>` per line, using
// the element syntax of the respective set files.

#include "freiman/finite_set.hpp"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace freiman {

class ParseError : public std::runtime_error {
public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)), line_(line) {}

  std::size_t line() const { return line_; }
  const std::string& source() const { return source_; }

private:
  std::string source_;
  std::size_t line_;
};

struct ParsedSet {
  BasisPtr basis;       // Basis::rational() when the header is absent
  bool has_basis_header = false;
  RealSet set;

  std::size_t dimension() const { return basis->dimension(); }
};

namespace detail {

inline std::string strip(std::string s) {
  if (auto hash = s.find('#'); hash != std::string::npos)
    s.erase(hash);
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
    return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    out.push_back(cur);
  if (!s.empty() && s.back() == sep)
    out.emplace_back();
  return out;
}

inline BasisPtr parse_basis(const std::string& spec) {
  std::vector<std::string> labels;
  std::vector<double> approx;
  for (const auto& item : split(spec, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw PreconditionError("basis entry '" + strip(item) + "' is not label=value");
    std::string label = strip(item.substr(0, eq));
    std::string value = strip(item.substr(eq + 1));
    if (label.empty())
      throw PreconditionError("empty basis label");
    std::size_t used = 0;
    double v;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      throw PreconditionError("basis value '" + value + "' is not a number");
    }
    if (used != value.size())
      throw PreconditionError("basis value '" + value + "' is not a number");
    labels.push_back(label);
    approx.push_back(v);
  }
  return std::make_shared<const Basis>(std::move(labels), std::move(approx));
}

}  // namespace detail

/// One element in set-file syntax over `basis`.
inline RealElement parse_element(const std::string& text, const BasisPtr& basis) {
  auto parts = detail::split(text, ',');
  if (parts.size() != basis->dimension())
    throw PreconditionError("expected " + std::to_string(basis->dimension()) + " coordinate(s), got " +
                            std::to_string(parts.size()));
  std::vector<Rational> coords;
  for (const auto& p : parts)
    coords.push_back(parse_rational(p));
  return RealElement(basis, std::move(coords));
}

inline ParsedSet parse_set(std::istream& in, const std::string& source = "<input>") {
  BasisPtr basis = Basis::rational();
  bool header = false;
  bool seen_element = false;
  std::vector<RealElement> elements;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = detail::strip(raw);
    if (s.empty())
      continue;
    try {
      if (s.rfind("basis:", 0) == 0) {
        if (header || seen_element)
          throw PreconditionError("basis header must appear once, before any element");
        basis = detail::parse_basis(s.substr(6));
        header = true;
        continue;
      }
      elements.push_back(parse_element(s, basis));
      seen_element = true;
    } catch (const PreconditionError& e) {
      throw ParseError(source, line, e.what());
    }
  }
  if (elements.empty())
    throw ParseError(source, line, "set file contains no elements");
  try {
    return {basis, header, RealSet(std::move(elements))};
  } catch (const PreconditionError& e) {
    throw ParseError(source, line, e.what());
  }
}

inline ParsedSet read_set_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError(path, 0, "cannot open file");
  return parse_set(in, path);
}

inline ParsedSet parse_set_string(const std::string& text) {
  std::istringstream in(text);
  return parse_set(in);
}

/// Pairing lines `a -> b`; returns mapping[i] = codomain index of f(a_i).
inline std::vector<std::size_t> parse_pairing(std::istream& in, const RealSet& domain, const RealSet& codomain,
                                              const std::string& source = "<pairing>") {
  std::vector<std::size_t> mapping(domain.size(), SIZE_MAX);
  std::string raw;
  std::size_t line = 0;
  auto index_of = [](const RealSet& s, const RealElement& x) -> std::size_t {
    auto it = std::find(s.begin(), s.end(), x);
    if (it == s.end())
      throw PreconditionError(to_string(x) + " is not an element of the set");
    return static_cast<std::size_t>(it - s.begin());
  };
  while (std::getline(in, raw)) {
    ++line;
    std::string s = detail::strip(raw);
    if (s.empty())
      continue;
    try {
      auto arrow = s.find("->");
      if (arrow == std::string::npos)
        throw PreconditionError("expected '<element> -> <element>'");
      auto i = index_of(domain, parse_element(detail::strip(s.substr(0, arrow)), domain.min().basis()));
      auto j = index_of(codomain, parse_element(detail::strip(s.substr(arrow + 2)), codomain.min().basis()));
      if (mapping[i] != SIZE_MAX)
        throw PreconditionError("element paired twice");
      mapping[i] = j;
    } catch (const PreconditionError& e) {
      throw ParseError(source, line, e.what());
    }
  }
  for (auto m : mapping)
    if (m == SIZE_MAX)
      throw ParseError(source, line, "pairing does not cover every domain element");
  return mapping;
}

inline std::string format_set_file(const RealSet& set, bool with_header) {
  std::string out;
  const auto& basis = *set.min().basis();
  if (with_header) {
    out += "basis: ";
    for (std::size_t i = 0; i < basis.dimension(); ++i) {
      if (i)
        out += ", ";
      std::ostringstream v;
      v.precision(17);
      v << basis.approx()[i];
      out += basis.labels()[i] + "=" + v.str();
    }
    out += "\n";
  }
  for (const auto& x : set) {
    for (std::size_t i = 0; i < x.dimension(); ++i) {
      if (i)
        out += ", ";
      out += to_string(x.coords()[i]);
    }
    out += "\n";
  }
  return out;
}

}  // namespace freiman
