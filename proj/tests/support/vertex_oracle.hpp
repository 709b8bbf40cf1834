#ifndef PWORLDS_TESTS_VERTEX_ORACLE_HPP
#define PWORLDS_TESTS_VERTEX_ORACLE_HPP

#include <optional>

#include "pworlds/entailment.hpp"
#include "pworlds/logic.hpp"
#include "pworlds/rational.hpp"

namespace pworlds::testsupport {

// Brute-force probabilistic-entailment oracle, independent of the simplex
// kernel and of the wordwise truth-vector evaluation:
//
//   * constraint rows are built by evaluating every ground assertion in
//     every world with the single-world satisfies() relation;
//   * the feasible polytope's vertices are enumerated exhaustively: for
//     every guess of tight inequality rows and every candidate support, the
//     resulting square-or-overdetermined linear system is solved by plain
//     Gaussian elimination; unique nonnegative solutions satisfying all
//     remaining constraints are vertices;
//   * bounds are the min/max of the query probability over the vertices.
//
// The feasible set is compact (total probability one, weights nonnegative),
// so it is the convex hull of its vertices and the extrema are attained
// there.  Exponential in the world count; intended for <= 4 ground atoms.
struct OracleBounds {
  bool feasible = false;
  Rational lo;
  Rational hi;
};

OracleBounds oracle_query_bounds(const KnowledgeBase& kb, const Formula& query);

} // namespace pworlds::testsupport

#endif // PWORLDS_TESTS_VERTEX_ORACLE_HPP
