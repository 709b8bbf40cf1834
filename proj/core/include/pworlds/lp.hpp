#ifndef PWORLDS_LP_HPP
#define PWORLDS_LP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "pworlds/rational.hpp"

namespace pworlds {

enum class Relation { LessEq, Equal, GreaterEq };

std::string to_string(Relation rel);

// One linear constraint  sum_j coefficients[j] * x_j  <relation>  bound.
// Coefficients are dense, one per variable.
struct LinearConstraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::Equal;
  Rational bound;
};

enum class Direction { Maximize, Minimize };

// A linear program over nonnegative variables.  Every variable carries the
// implicit bound x_j >= 0.
struct LPProblem {
  std::size_t variable_count = 0;
  std::vector<LinearConstraint> constraints;
  std::vector<Rational> objective; // dense, one per variable
  Direction direction = Direction::Maximize;
};

struct LPOutcome {
  enum class Status { Optimal, Infeasible, Unbounded };

  Status status = Status::Infeasible;
  Rational value;                // meaningful for Optimal
  std::vector<Rational> witness; // meaningful for Optimal

  bool optimal() const { return status == Status::Optimal; }
};

// Exact two-phase primal simplex on a dense rational tableau, Bland's
// pivoting rule throughout (no cycling, deterministic outcomes).  The
// returned witness is re-substituted into the original problem before the
// outcome is handed back; a mismatch indicates a kernel bug and throws.
LPOutcome solve(const LPProblem& problem);

// True iff `point` satisfies every constraint of `problem` exactly
// (including nonnegativity).
bool is_feasible_point(const LPProblem& problem, const std::vector<Rational>& point);

// Exact objective value of `point` under the problem's objective.
Rational objective_value(const LPProblem& problem, const std::vector<Rational>& point);

} // namespace pworlds

#endif // PWORLDS_LP_HPP
