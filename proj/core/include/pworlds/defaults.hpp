#ifndef PWORLDS_DEFAULTS_HPP
#define PWORLDS_DEFAULTS_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pworlds/entailment.hpp"
#include "pworlds/measure.hpp"
#include "pworlds/rational.hpp"

namespace pworlds {

// A default rule "things satisfying the condition usually satisfy the
// conclusion", read probabilistically: P(conclusion | condition) >= 1 - eps
// for every domain constant.  The conclusion may be a negated atom
// ("penguins usually do not fly").
struct DefaultRule {
  Formula conclusion; // one free variable, shared with condition
  Formula condition;
};

// The rule as a meta-quantified conditional schema over `var`.
ProbabilityAssertion default_rule_schema(const DefaultRule& rule,
                                         const std::string& var,
                                         const Rational& epsilon);

// The bird/penguin knowledge base over constants t1..tn:
//   P(Fly(x) | Bird(x))     >= 1 - eps   for all x
//   P(~Fly(x) | Penguin(x)) >= 1 - eps   for all x
//   P(forall x. Penguin(x) -> Bird(x)) = 1
// Requires 0 < eps < 1 and n >= 1.
KnowledgeBase penguin_kb(const Rational& epsilon, unsigned n_terms);

struct ValueWithWitness {
  Rational value;
  Distribution witness;
};

// Tight maximum of p[Penguin(t1)] over all distributions satisfying
// penguin_kb(eps, n).  Symmetric across terms.  Equals eps/(1-eps) whenever
// that is at most one.
ValueWithWitness max_penguin_instance(const Rational& epsilon, unsigned n_terms,
                                      std::size_t max_atoms = kDefaultAtomCap);

// The step-by-step inequality derivation that squeezes penguin belief from
// the two default rules, evaluated at the distribution maximizing
// p[Penguin(t1)].  Every step is checked numerically with exact rationals;
// the chain implies p[Penguin(t1)] <= 1/(2 - 2 eps), a valid but non-tight
// ceiling (the exact LP maximum eps/(1-eps) is strictly smaller).
struct ChainStep {
  std::string description;
  Rational lhs;
  std::string relation; // "=", "<=", ">="
  Rational rhs;
  bool holds = false;
};

struct ChainDerivation {
  Rational epsilon;
  std::vector<ChainStep> steps;
  Rational implied_bound;   // 1/(2 - 2 eps)
  Rational witness_penguin; // p[Penguin(t1)] at the maximizing witness
  bool all_steps_hold = false;
};

ChainDerivation penguin_chain_bound(const Rational& epsilon,
                                    std::size_t max_atoms = kDefaultAtomCap);

// Tight maximum of p[exists x. Penguin(x)] together with the finite-
// additivity ceiling n * eps/(1-eps) (capped at one).
struct ExistentialBound {
  Rational value;
  Distribution witness;
  Rational union_ceiling;        // n * eps/(1-eps), uncapped
  Rational union_ceiling_capped; // min(1, union_ceiling)
};

ExistentialBound existential_penguin_bound(const Rational& epsilon, unsigned n_terms,
                                           std::size_t max_atoms = kDefaultAtomCap);

// The known-exception knowledge base over a single constant c:
//   P(Fly(c) | Bird(c)) >= 1 - eps,  P(Bird(c)) >= bird_lo,  P(Fly(c)) <= fly_hi.
// A strong enough exception contradicts the schema no matter what else is
// known about c.
ConsistencyResult exception_inconsistency(const Rational& epsilon,
                                          const Rational& bird_lo,
                                          const Rational& fly_hi,
                                          std::size_t max_atoms = kDefaultAtomCap);

// One row of the anomaly table.
struct AnomalyRow {
  Rational epsilon;
  unsigned n_terms = 0;
  Rational per_term_max;              // tight max p[Penguin(t_i)]
  Rational chain_bound;               // 1/(2 - 2 eps)
  Rational existential_max;           // tight max p[exists x. Penguin(x)]
  Rational union_ceiling;             // n * eps/(1-eps), uncapped
  Rational union_ceiling_capped;      // min(1, union_ceiling)
  std::optional<Distribution> per_term_witness;
  std::optional<Distribution> existential_witness;
};

// Rows for n = 1..max_terms at fixed epsilon.
std::vector<AnomalyRow> anomaly_sweep(const Rational& epsilon, unsigned max_terms,
                                      std::size_t max_atoms = kDefaultAtomCap);

} // namespace pworlds

#endif // PWORLDS_DEFAULTS_HPP
