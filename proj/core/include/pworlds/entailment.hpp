#ifndef PWORLDS_ENTAILMENT_HPP
#define PWORLDS_ENTAILMENT_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pworlds/logic.hpp"
#include "pworlds/lp.hpp"
#include "pworlds/measure.hpp"
#include "pworlds/rational.hpp"
#include "pworlds/worlds.hpp"

namespace pworlds {

// ── Probability assertions ───────────────────────────────────────────────

// P(sentence) = value
struct PointAssertion {
  Formula sentence;
  Rational value;
};

// P(sentence) in [lo, hi]
struct IntervalAssertion {
  Formula sentence;
  Rational lo;
  Rational hi;
};

// P(target | condition) <relation> threshold, compiled linearly as
// p[target & condition] <relation> threshold * p[condition]; vacuously
// satisfied when the condition has probability zero.
struct ConditionalAssertion {
  Formula target;
  Formula condition;
  Relation relation = Relation::GreaterEq;
  Rational threshold;
};

struct ProbabilityAssertion {
  std::variant<PointAssertion, IntervalAssertion, ConditionalAssertion> body;

  // When set, the assertion is a meta-quantified schema: the body has this
  // single free variable and stands for one ground assertion per domain
  // constant.
  std::optional<std::string> schema_var;

  int source_line = 0;  // 0 when built programmatically
  std::string display;  // human-readable rendering for reports

  static ProbabilityAssertion point(Formula sentence, Rational value);
  static ProbabilityAssertion interval(Formula sentence, Rational lo, Rational hi);
  static ProbabilityAssertion conditional(Formula target, Formula condition,
                                          Relation relation, Rational threshold);
  ProbabilityAssertion as_schema(std::string var) const;

  // Rebuilds `display` from the body (used for programmatic assertions).
  void render_display();
};

// ── Knowledge base ───────────────────────────────────────────────────────

struct KnowledgeBase {
  Signature signature;
  std::vector<ProbabilityAssertion> assertions;
  // Epsilon backing the "~= 1" shorthand (compiled to >= 1 - epsilon).
  Rational epsilon = Rational(1, 100);
};

// ── Compilation to a linear program ──────────────────────────────────────

struct CompileOptions {
  std::size_t max_atoms = kDefaultAtomCap;
  // When set, adds p[condition] >= delta for every conditional assertion
  // (rejects the vacuous zero-probability-condition reading).
  std::optional<Rational> require_positive_conditions;
};

struct CompiledKb {
  WorldSpace space;
  LPProblem lp; // variables = world weights; zero objective until a query is set
  // one entry per ground (schema-expanded) assertion, aligned with
  // constraint provenance below
  std::vector<ProbabilityAssertion> ground_assertions;
  // for each LP constraint row: index into ground_assertions, or -1 for the
  // total-probability row / auxiliary positivity rows
  std::vector<int> row_source;
};

// Expands schemas over the domain, eliminates quantifiers, takes truth
// vectors, and emits: sum of weights = 1, plus the linear image of every
// assertion.  Throws CapExceededError / InvariantError as appropriate.
CompiledKb compile(const KnowledgeBase& kb, const CompileOptions& options = {});

// The single ground assertions a schema stands for.
std::vector<ProbabilityAssertion> expand_schemas(const KnowledgeBase& kb);

// Exact satisfaction check of one ground assertion against a distribution
// (conditionals use the linearized reading).
bool assertion_holds(const ProbabilityAssertion& assertion, const Distribution& d);

// ── Queries ──────────────────────────────────────────────────────────────

struct ConsistencyResult {
  bool consistent = false;
  std::optional<Distribution> witness; // present when consistent
  std::string note; // names the clashing assertions when inconsistent
};

ConsistencyResult is_consistent(const KnowledgeBase& kb,
                                const CompileOptions& options = {});

// Tight bounds on p[query] over every distribution satisfying the KB,
// with attained witnesses.  lo_witness/hi_witness satisfy every KB
// assertion exactly and attain lo/hi exactly (re-checked by substitution).
struct Bounds {
  Rational lo;
  Rational hi;
  Distribution lo_witness;
  Distribution hi_witness;
};

// Throws InconsistentKbError (with the refutation note) when the KB is
// infeasible.
Bounds query_bounds(const KnowledgeBase& kb, const Formula& query,
                    const CompileOptions& options = {});

} // namespace pworlds

#endif // PWORLDS_ENTAILMENT_HPP
