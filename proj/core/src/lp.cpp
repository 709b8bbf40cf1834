#include "pworlds/lp.hpp"

#include <stdexcept>
#include <utility>

#include "pworlds/errors.hpp"

namespace pworlds {

std::string to_string(Relation rel) {
  switch (rel) {
    case Relation::LessEq: return "<=";
    case Relation::Equal: return "=";
    case Relation::GreaterEq: return ">=";
  }
  return "?";
}

bool is_feasible_point(const LPProblem& problem, const std::vector<Rational>& point) {
  if (point.size() != problem.variable_count) return false;
  for (const auto& x : point)
    if (x < 0) return false;
  for (const auto& c : problem.constraints) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < problem.variable_count; ++j)
      if (c.coefficients[j] != 0) lhs += c.coefficients[j] * point[j];
    switch (c.relation) {
      case Relation::LessEq:
        if (!(lhs <= c.bound)) return false;
        break;
      case Relation::Equal:
        if (lhs != c.bound) return false;
        break;
      case Relation::GreaterEq:
        if (!(lhs >= c.bound)) return false;
        break;
    }
  }
  return true;
}

Rational objective_value(const LPProblem& problem, const std::vector<Rational>& point) {
  Rational value = 0;
  for (std::size_t j = 0; j < problem.variable_count; ++j)
    if (problem.objective[j] != 0) value += problem.objective[j] * point[j];
  return value;
}

namespace {

// Dense tableau in equality form A x = b, b >= 0, with one basic variable
// per row.  Column layout: structural variables first, then slack/surplus,
// then artificial.
class Tableau {
public:
  std::vector<std::vector<Rational>> rows; // m x n_cols
  std::vector<Rational> rhs;               // m
  std::vector<std::size_t> basis;          // m, column index basic in row i
  std::vector<Rational> cost;              // reduced-cost row, n_cols
  Rational objective;                      // objective value of current basis
  std::size_t n_cols = 0;

  void pivot(std::size_t row, std::size_t col) {
    Rational p = rows[row][col];
    if (p != 1) {
      for (auto& v : rows[row])
        if (v != 0) v /= p;
      rhs[row] /= p;
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == row) continue;
      Rational factor = rows[i][col];
      if (factor == 0) continue;
      for (std::size_t j = 0; j < n_cols; ++j)
        if (rows[row][j] != 0) rows[i][j] -= factor * rows[row][j];
      rhs[i] -= factor * rhs[row];
    }
    Rational cfactor = cost[col];
    if (cfactor != 0) {
      for (std::size_t j = 0; j < n_cols; ++j)
        if (rows[row][j] != 0) cost[j] -= cfactor * rows[row][j];
      objective += cfactor * rhs[row];
    }
    basis[row] = col;
  }

  // Minimizes the objective encoded in `cost`/`objective` with Bland's
  // rule.  Returns false when the objective is unbounded below.
  bool run_simplex() {
    for (;;) {
      // Bland: entering variable = smallest column with negative reduced cost.
      std::size_t entering = n_cols;
      for (std::size_t j = 0; j < n_cols; ++j)
        if (cost[j] < 0) { entering = j; break; }
      if (entering == n_cols) return true; // optimal

      // Ratio test; ties broken by smallest basic variable index (Bland).
      std::size_t leaving_row = rows.size();
      Rational best_ratio;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][entering] <= 0) continue;
        Rational ratio = rhs[i] / rows[i][entering];
        if (leaving_row == rows.size() || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leaving_row])) {
          leaving_row = i;
          best_ratio = ratio;
        }
      }
      if (leaving_row == rows.size()) return false; // unbounded direction
      pivot(leaving_row, entering);
    }
  }
};

} // namespace

LPOutcome solve(const LPProblem& problem) {
  const std::size_t n = problem.variable_count;
  if (problem.objective.size() != n)
    throw InvariantError("objective length does not match variable count");
  for (const auto& c : problem.constraints)
    if (c.coefficients.size() != n)
      throw InvariantError("constraint length does not match variable count");

  // Normalize rows to b >= 0 and drop trivial all-zero rows up front.
  struct Row {
    std::vector<Rational> a;
    Relation rel;
    Rational b;
  };
  std::vector<Row> rows;
  rows.reserve(problem.constraints.size());
  for (const auto& c : problem.constraints) {
    Row row{c.coefficients, c.relation, c.bound};
    bool all_zero = true;
    for (const auto& v : row.a)
      if (v != 0) { all_zero = false; break; }
    if (all_zero) {
      bool ok = false;
      switch (row.rel) {
        case Relation::LessEq: ok = 0 <= row.b; break;
        case Relation::Equal: ok = row.b == 0; break;
        case Relation::GreaterEq: ok = 0 >= row.b; break;
      }
      if (!ok) return LPOutcome{LPOutcome::Status::Infeasible, 0, {}};
      continue;
    }
    if (row.b < 0) {
      for (auto& v : row.a) v = -v;
      row.b = -row.b;
      if (row.rel == Relation::LessEq) row.rel = Relation::GreaterEq;
      else if (row.rel == Relation::GreaterEq) row.rel = Relation::LessEq;
    }
    rows.push_back(std::move(row));
  }

  const std::size_t m = rows.size();
  std::size_t n_slack = 0;
  for (const auto& r : rows)
    if (r.rel != Relation::Equal) ++n_slack;
  // Artificials for >= and = rows; <= rows start with their slack basic.
  std::size_t n_art = 0;
  for (const auto& r : rows)
    if (r.rel != Relation::LessEq) ++n_art;

  Tableau t;
  t.n_cols = n + n_slack + n_art;
  t.rows.assign(m, std::vector<Rational>(t.n_cols, Rational(0)));
  t.rhs.resize(m);
  t.basis.resize(m);

  std::size_t next_slack = n;
  std::size_t next_art = n + n_slack;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.rows[i][j] = rows[i].a[j];
    t.rhs[i] = rows[i].b;
    switch (rows[i].rel) {
      case Relation::LessEq:
        t.rows[i][next_slack] = 1;
        t.basis[i] = next_slack++;
        break;
      case Relation::GreaterEq:
        t.rows[i][next_slack] = -1;
        ++next_slack;
        t.rows[i][next_art] = 1;
        t.basis[i] = next_art++;
        break;
      case Relation::Equal:
        t.rows[i][next_art] = 1;
        t.basis[i] = next_art++;
        break;
    }
  }

  const std::size_t first_art = n + n_slack;

  // Phase 1: minimize the sum of artificials, priced out over the initial
  // basis (artificial columns reduce to zero).
  t.cost.assign(t.n_cols, Rational(0));
  t.objective = 0;
  for (std::size_t i = 0; i < m; ++i) {
    if (t.basis[i] < first_art) continue;
    for (std::size_t j = 0; j < first_art; ++j)
      if (t.rows[i][j] != 0) t.cost[j] -= t.rows[i][j];
    t.objective += t.rhs[i];
  }
  if (!t.run_simplex())
    throw std::logic_error("phase-1 objective unbounded below zero");
  if (t.objective != 0) return LPOutcome{LPOutcome::Status::Infeasible, 0, {}};

  // Drive any remaining artificials out of the basis; a row that cannot be
  // pivoted is redundant and is dropped.
  for (std::size_t i = 0; i < t.rows.size();) {
    if (t.basis[i] < first_art) { ++i; continue; }
    std::size_t pivot_col = t.n_cols;
    for (std::size_t j = 0; j < first_art; ++j)
      if (t.rows[i][j] != 0) { pivot_col = j; break; }
    if (pivot_col == t.n_cols) {
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.rhs.erase(t.rhs.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    t.pivot(i, pivot_col);
    ++i;
  }

  // Remove artificial columns.
  for (auto& row : t.rows) row.resize(first_art);
  t.n_cols = first_art;

  // Phase 2: minimize the internal objective (negated for maximization).
  std::vector<Rational> phase2_cost(t.n_cols, Rational(0));
  for (std::size_t j = 0; j < n; ++j)
    phase2_cost[j] = problem.direction == Direction::Maximize
                         ? -problem.objective[j]
                         : problem.objective[j];
  t.cost = phase2_cost;
  t.objective = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    Rational cb = phase2_cost[t.basis[i]];
    if (cb == 0) continue;
    for (std::size_t j = 0; j < t.n_cols; ++j)
      if (t.rows[i][j] != 0) t.cost[j] -= cb * t.rows[i][j];
    t.objective += cb * t.rhs[i];
  }

  if (!t.run_simplex()) return LPOutcome{LPOutcome::Status::Unbounded, 0, {}};

  std::vector<Rational> witness(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    if (t.basis[i] < n) witness[t.basis[i]] = t.rhs[i];

  Rational value = problem.direction == Direction::Maximize ? Rational(-t.objective)
                                                            : t.objective;

  if (!is_feasible_point(problem, witness) ||
      objective_value(problem, witness) != value)
    throw std::logic_error("simplex returned a witness that fails re-substitution");

  return LPOutcome{LPOutcome::Status::Optimal, std::move(value), std::move(witness)};
}

} // namespace pworlds
