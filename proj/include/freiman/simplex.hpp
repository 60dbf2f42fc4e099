#pragma once

// Exact rational feasibility for homogeneous systems
//     E x = 0,   G x >= 1,   x free,
// solved with a dense simplex tableau on the Farkas dual
//     max 1ᵀy  s.t.  Hᵀy = 0,  1ᵀy + s = 1,  y, s >= 0,   H = G N,
// where the columns of N span ker E. The primal system is feasible iff the
// dual optimum is 0, and then the optimal simplex multipliers u give
// x = N u. The dual tableau has rank(ker E) + 1 rows no matter how many
// constraints there are.

#include "freiman/scalar.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace freiman {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Basis of the null space of `rows` (each of length n), as column vectors.
inline RationalMatrix null_space(RationalMatrix rows, std::size_t n) {
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0)
      ++p;
    if (p == rows.size())
      continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& v : rows[r])
      v *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0)
        continue;
      Rational f = rows[i][c];
      for (std::size_t j = 0; j < n; ++j)
        rows[i][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col)
    is_pivot[c] = true;
  RationalMatrix basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free])
      continue;
    std::vector<Rational> v(n);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
      v[pivot_col[i]] = -rows[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

struct FeasibilityResult {
  std::optional<std::vector<Rational>> solution;
  std::size_t pivots = 0;
};

/// Dense tableau with Bland's rule; used only by solve_homogeneous.
class DualTableau {
public:
  // rows_ x (cols_ + 1); last column is the right-hand side
  DualTableau(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), t_(rows, std::vector<Rational>(cols + 1)),
        obj_(cols + 1), basis_(rows) {}

  Rational& at(std::size_t i, std::size_t j) { return t_[i][j]; }
  Rational& rhs(std::size_t i) { return t_[i][cols_]; }
  Rational& obj(std::size_t j) { return obj_[j]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }

  void pivot(std::size_t row, std::size_t col) {
    Rational inv = 1 / t_[row][col];
    for (auto& v : t_[row])
      v *= inv;
    for (std::size_t i = 0; i < rows_; ++i)
      if (i != row)
        eliminate(t_[i], row, col);
    eliminate(obj_, row, col);
    basis_[row] = col;
    ++pivots_;
  }

  /// Maximizes with entering candidates restricted to columns < `enter_limit`.
  /// Returns false if unbounded.
  bool maximize(std::size_t enter_limit) {
    while (true) {
      std::size_t enter = enter_limit;
      for (std::size_t j = 0; j < enter_limit; ++j)
        if (obj_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == enter_limit)
        return true;
      std::optional<std::size_t> leave;
      Rational best;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (t_[i][enter] <= 0)
          continue;
        Rational ratio = t_[i][cols_] / t_[i][enter];
        if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (!leave)
        return false;
      pivot(*leave, enter);
    }
  }

  std::size_t pivots() const { return pivots_; }

private:
  void eliminate(std::vector<Rational>& target, std::size_t row, std::size_t col) {
    if (target[col] == 0)
      return;
    Rational f = target[col];
    const auto& src = t_[row];
    for (std::size_t j = 0; j <= cols_; ++j)
      if (src[j] != 0)
        target[j] -= f * src[j];
  }

  std::size_t rows_, cols_;
  RationalMatrix t_;
  std::vector<Rational> obj_;  // z_j − c_j; obj_[cols_] is the objective value
  std::vector<std::size_t> basis_;
  std::size_t pivots_ = 0;
};

/// Finds x ∈ Q^n with every equality row·x = 0 and every inequality
/// row·x >= 1, or reports infeasibility.
inline FeasibilityResult solve_homogeneous(const RationalMatrix& equalities,
                                           const RationalMatrix& inequalities, std::size_t n) {
  FeasibilityResult result;
  RationalMatrix kernel = null_space(equalities, n);  // r vectors of length n
  const std::size_t r = kernel.size();
  const std::size_t m = inequalities.size();

  // H = G N, m x r
  RationalMatrix h(m, std::vector<Rational>(r));
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (inequalities[l][j] != 0)
          h[l][i] += inequalities[l][j] * kernel[i][j];

  // columns: y_0..y_{m-1}, s, artificial_0..artificial_{r-1}
  const std::size_t s_col = m;
  const std::size_t art0 = m + 1;
  DualTableau tab(r + 1, m + 1 + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t l = 0; l < m; ++l)
      tab.at(i, l) = h[l][i];
    tab.at(i, art0 + i) = 1;
    tab.basic(i) = art0 + i;
  }
  for (std::size_t l = 0; l < m; ++l)
    tab.at(r, l) = 1;
  tab.at(r, s_col) = 1;
  tab.rhs(r) = 1;
  tab.basic(r) = s_col;
  for (std::size_t l = 0; l < m; ++l)
    tab.obj(l) = -1;

  // Phase 1: the artificials start (and stay) at zero, so only drive them
  // out of the basis. A row with no other nonzero is redundant and keeps
  // its artificial.
  for (std::size_t i = 0; i < r; ++i) {
    if (tab.basic(i) < art0)
      continue;
    for (std::size_t j = 0; j < art0; ++j)
      if (tab.at(i, j) != 0) {
        tab.pivot(i, j);
        break;
      }
  }

  // Phase 2 over the original columns.
  if (!tab.maximize(art0))
    throw InvariantError("normalized Farkas dual reported unbounded");
  result.pivots = tab.pivots();
  if (tab.obj(art0 + r) != 0)  // objective value
    return result;

  // simplex multipliers of the r kernel rows
  std::vector<Rational> u(r);
  for (std::size_t i = 0; i < r; ++i)
    u[i] = tab.obj(art0 + i);
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j)
      x[j] += u[i] * kernel[i][j];

  auto dot = [&](const std::vector<Rational>& row) {
    Rational acc = 0;
    for (std::size_t j = 0; j < n; ++j)
      acc += row[j] * x[j];
    return acc;
  };
  for (const auto& row : equalities)
    if (dot(row) != 0)
      throw InvariantError("simplex solution violates an equality");
  for (const auto& row : inequalities)
    if (dot(row) < 1)
      throw InvariantError("simplex solution violates an inequality");
  result.solution = std::move(x);
  return result;
}

}  // namespace freiman
