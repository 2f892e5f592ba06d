#include "typesem/lp.hpp"

#include <algorithm>

#include "typesem/errors.hpp"

namespace typesem {

namespace {

using Tableau = std::vector<std::vector<Rat>>;

void pivot(Tableau &t, std::vector<int> &basis, int r, int c) {
  Rat p = t[r][c];
  for (auto &v : t[r])
    v /= p;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (static_cast<int>(i) == r || t[i][c] == 0)
      continue;
    Rat f = t[i][c];
    for (std::size_t j = 0; j < t[i].size(); ++j)
      t[i][j] -= f * t[r][j];
  }
  basis[r] = c;
}

/// Minimizes cost over the tableau with Bland's rule, scanning only the
/// first `ncols` columns as entering candidates. Returns false on an
/// unbounded ray.
bool simplex_min(Tableau &t, std::vector<int> &basis,
                 const std::vector<Rat> &cost, int ncols) {
  int m = static_cast<int>(t.size());
  int width = m ? static_cast<int>(t[0].size()) : 0;
  for (;;) {
    int enter = -1;
    for (int j = 0; j < ncols && enter < 0; ++j) {
      Rat rc = cost[j];
      for (int i = 0; i < m; ++i)
        rc -= cost[basis[i]] * t[i][j];
      if (rc < 0)
        enter = j;
    }
    if (enter < 0)
      return true;
    int leave = -1;
    Rat best = 0;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0)
        continue;
      Rat ratio = t[i][width - 1] / t[i][enter];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0)
      return false;
    pivot(t, basis, leave, enter);
  }
}

} // namespace

LpResult solve_lp(const LpProblem &p) {
  int n = p.nvars;
  int m = static_cast<int>(p.rows.size());
  for (const auto &r : p.rows)
    if (static_cast<int>(r.coef.size()) != n)
      throw InternalCheckError("solve_lp: row width mismatch");
  if (!p.objective.empty() && static_cast<int>(p.objective.size()) != n)
    throw InternalCheckError("solve_lp: objective width mismatch");

  // Equality standard form: one slack per inequality, rows scaled so the
  // right-hand side is nonnegative, one artificial per row.
  int nslack = 0;
  for (const auto &r : p.rows)
    if (r.sense != Sense::EQ)
      ++nslack;
  int nreal = n + nslack;
  int width = nreal + m + 1;

  Tableau t(m, std::vector<Rat>(width, 0));
  std::vector<Rat> sign(m, 1);
  {
    int sl = 0;
    for (int i = 0; i < m; ++i) {
      const LinRow &row = p.rows[i];
      for (int j = 0; j < n; ++j)
        t[i][j] = row.coef[j];
      if (row.sense != Sense::EQ)
        t[i][n + sl++] = row.sense == Sense::LE ? 1 : -1;
      t[i][width - 1] = row.rhs;
      if (row.rhs < 0) {
        sign[i] = -1;
        for (auto &v : t[i])
          v = -v;
      }
      t[i][nreal + i] = 1;
    }
  }

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i)
    basis[i] = nreal + i;
  std::vector<Rat> cost1(width - 1, 0);
  for (int i = 0; i < m; ++i)
    cost1[nreal + i] = 1;

  if (!simplex_min(t, basis, cost1, nreal))
    throw InternalCheckError("solve_lp: phase one reported unbounded");

  Rat phase1 = 0;
  for (int i = 0; i < m; ++i)
    phase1 += cost1[basis[i]] * t[i][width - 1];

  LpResult res;
  if (phase1 > 0) {
    // Simplex multipliers of the artificial columns give a Farkas ray for
    // the scaled system; undo the row scaling.
    res.status = LpStatus::Infeasible;
    res.farkas.assign(m, 0);
    for (int i = 0; i < m; ++i) {
      Rat y = 0;
      for (int k = 0; k < m; ++k)
        if (basis[k] >= nreal)
          y += t[k][nreal + i];
      res.farkas[i] = sign[i] * y;
    }
    if (!verify_farkas(p, res.farkas))
      throw InternalCheckError(
          "solve_lp: infeasibility certificate failed re-verification");
    return res;
  }

  // Drive leftover artificials out of the basis; rows where that is
  // impossible are redundant and dropped.
  for (int i = static_cast<int>(t.size()) - 1; i >= 0; --i) {
    if (basis[i] < nreal)
      continue;
    int c = -1;
    for (int j = 0; j < nreal && c < 0; ++j)
      if (t[i][j] != 0)
        c = j;
    if (c >= 0) {
      pivot(t, basis, i, c);
    } else {
      t.erase(t.begin() + i);
      basis.erase(basis.begin() + i);
    }
  }

  if (!p.objective.empty()) {
    std::vector<Rat> cost2(width - 1, 0);
    for (int j = 0; j < n; ++j)
      cost2[j] = -p.objective[j];
    if (!simplex_min(t, basis, cost2, nreal)) {
      res.status = LpStatus::Unbounded;
      return res;
    }
  }

  res.status = LpStatus::Optimal;
  res.solution.assign(n, 0);
  int tw = t.empty() ? width : static_cast<int>(t[0].size());
  for (std::size_t i = 0; i < t.size(); ++i)
    if (basis[i] < n)
      res.solution[basis[i]] = t[i][tw - 1];
  for (int j = 0; j < n && !p.objective.empty(); ++j)
    res.objective_value += p.objective[j] * res.solution[j];
  if (!verify_feasible(p, res.solution))
    throw InternalCheckError("solve_lp: solution failed re-verification");
  return res;
}

bool verify_farkas(const LpProblem &p, const std::vector<Rat> &y) {
  if (static_cast<int>(y.size()) != static_cast<int>(p.rows.size()))
    return false;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (p.rows[i].sense == Sense::LE && y[i] > 0)
      return false;
    if (p.rows[i].sense == Sense::GE && y[i] < 0)
      return false;
  }
  for (int j = 0; j < p.nvars; ++j) {
    Rat c = 0;
    for (std::size_t i = 0; i < p.rows.size(); ++i)
      c += y[i] * p.rows[i].coef[j];
    if (c > 0)
      return false;
  }
  Rat rhs = 0;
  for (std::size_t i = 0; i < p.rows.size(); ++i)
    rhs += y[i] * p.rows[i].rhs;
  return rhs > 0;
}

bool verify_feasible(const LpProblem &p, const std::vector<Rat> &x) {
  if (static_cast<int>(x.size()) != p.nvars)
    return false;
  for (const Rat &v : x)
    if (v < 0)
      return false;
  for (const auto &row : p.rows) {
    Rat lhs = 0;
    for (int j = 0; j < p.nvars; ++j)
      lhs += row.coef[j] * x[j];
    if (row.sense == Sense::LE && lhs > row.rhs)
      return false;
    if (row.sense == Sense::GE && lhs < row.rhs)
      return false;
    if (row.sense == Sense::EQ && lhs != row.rhs)
      return false;
  }
  return true;
}

} // namespace typesem
