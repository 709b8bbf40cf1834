#ifndef PWORLDS_QUANTIFIERS_HPP
#define PWORLDS_QUANTIFIERS_HPP

#include <string>
#include <utility>
#include <vector>

#include "pworlds/logic.hpp"
#include "pworlds/measure.hpp"
#include "pworlds/rational.hpp"

namespace pworlds {

struct KnowledgeBase; // entailment.hpp

// The finite set of constants quantifiers range over (domain closure).
using HerbrandDomain = std::vector<std::string>;

inline HerbrandDomain herbrand_domain(const Signature& sig) {
  return sig.constants();
}

// Eliminates quantifiers over the finite domain: an existential becomes the
// disjunction of its instantiations, a universal the conjunction.  Nested
// quantifiers are expanded innermost-first; folds are left-associative in
// domain order, so output is canonical.  Throws InvariantError on an empty
// domain (when a quantifier is actually present).
Formula expand(const Formula& f, const HerbrandDomain& dom);

// Checks the quantifier probability laws on a concrete distribution for a
// sentence with one top-level quantifier: p[exists x. a] >= p[a(x/t)] for
// every t, dually p[forall x. a] <= p[a(x/t)]; plus the duality
// p[forall x. a] = 1 - p[exists x. ~a].  Always passes; surfaced as a
// property-test and CLI reporting harness.
struct QuantifierMonotonicityReport {
  bool universal = false; // top quantifier
  Rational p_quantified;  // probability of the expansion
  std::vector<std::pair<std::string, Rational>> instances; // constant -> p
  Rational p_dual;        // 1 - p[exists x. ~body] (or the exists dual)
  bool monotonic = false;
  bool duality_holds = false;
  bool passed() const { return monotonic && duality_holds; }
};

QuantifierMonotonicityReport check_quantifier_monotonicity(
    const Distribution& d, const Formula& f, const HerbrandDomain& dom);

// Consequences of a certain universal implication: for every assertion
// P(forall x. a(x) -> b(x)) = 1 in the knowledge base and every constant t,
// p[b(t)] >= p[a(t)] and p[a(t) & b(t)] = p[a(t)] must hold in every
// satisfying distribution.  The LP already enforces these semantically;
// they are emitted for tests and --explain output.
struct DerivedFact {
  enum class Rel { GreaterEq, Equal };
  Formula lhs;
  Rel rel;
  Formula rhs;
  std::string note;
};

std::vector<DerivedFact> certain_universal_facts(const KnowledgeBase& kb);

bool holds(const DerivedFact& fact, const Distribution& d);

std::string to_string(const DerivedFact& fact);

} // namespace pworlds

#endif // PWORLDS_QUANTIFIERS_HPP
