#ifndef TYPESEM_LP_HPP
#define TYPESEM_LP_HPP

#include <string>
#include <vector>

#include "typesem/rational.hpp"

namespace typesem {

/// Exact rational linear programming over nonnegative variables. Used for
/// invariant-state feasibility and for optimization certificates; never
/// touches floating point, so infeasibility certificates are sound inputs
/// to unconditional No answers.

enum class Sense { LE, EQ, GE };

struct LinRow {
  std::vector<Rat> coef;
  Sense sense = Sense::EQ;
  Rat rhs = 0;
  std::string name; ///< carried into certificates
};

struct LpProblem {
  int nvars = 0;
  std::vector<LinRow> rows;
  /// Maximized when nonempty; empty means pure feasibility.
  std::vector<Rat> objective;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rat> solution;     ///< primal values when Optimal
  Rat objective_value = 0;       ///< when Optimal
  std::vector<Rat> farkas;       ///< one multiplier per row when Infeasible
};

/// Simplex with Bland's rule on exact rationals; variables are implicitly
/// >= 0. Infeasible results carry Farkas multipliers that are re-verified
/// before being returned.
LpResult solve_lp(const LpProblem &p);

/// Checks the Farkas conditions by direct substitution: multipliers have
/// the sign required by each row's sense, the combined coefficient of every
/// variable is <= 0, and the combined right-hand side is > 0. Any
/// nonnegative solution would contradict such a combination.
bool verify_farkas(const LpProblem &p, const std::vector<Rat> &y);

/// Checks a candidate point against every row and the sign constraints.
bool verify_feasible(const LpProblem &p, const std::vector<Rat> &x);

} // namespace typesem

#endif // TYPESEM_LP_HPP
