#include "pworlds/quantifiers.hpp"

#include <optional>

#include "pworlds/entailment.hpp"
#include "pworlds/errors.hpp"

namespace pworlds {

Formula expand(const Formula& f, const HerbrandDomain& dom) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(expand(f.child(), dom));
    case Formula::Kind::And:
      return Formula::conjunction(expand(f.left(), dom), expand(f.right(), dom));
    case Formula::Kind::Or:
      return Formula::disjunction(expand(f.left(), dom), expand(f.right(), dom));
    case Formula::Kind::Implies:
      return Formula::implication(expand(f.left(), dom), expand(f.right(), dom));
    case Formula::Kind::Iff:
      return Formula::biconditional(expand(f.left(), dom), expand(f.right(), dom));
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      if (dom.empty())
        throw InvariantError("cannot expand quantifier over an empty domain");
      Formula body = expand(f.body(), dom); // innermost-first
      bool universal = f.kind() == Formula::Kind::ForAll;
      std::optional<Formula> result;
      for (const auto& constant : dom) {
        Formula instance = substitute(body, f.bound_var(), Term::constant(constant));
        if (!result)
          result = std::move(instance);
        else
          result = universal
                       ? Formula::conjunction(std::move(*result), std::move(instance))
                       : Formula::disjunction(std::move(*result), std::move(instance));
      }
      return *result;
    }
  }
  return f;
}

QuantifierMonotonicityReport check_quantifier_monotonicity(
    const Distribution& d, const Formula& f, const HerbrandDomain& dom) {
  if (f.kind() != Formula::Kind::ForAll && f.kind() != Formula::Kind::Exists)
    throw InvariantError("monotonicity check requires a top-level quantifier");
  if (dom.empty())
    throw InvariantError("monotonicity check requires a nonempty domain");

  QuantifierMonotonicityReport report;
  report.universal = f.kind() == Formula::Kind::ForAll;
  report.p_quantified = probability(d, expand(f, dom));

  const std::string& var = f.bound_var();
  for (const auto& constant : dom) {
    Formula instance = expand(substitute(f.body(), var, Term::constant(constant)), dom);
    report.instances.emplace_back(constant, probability(d, instance));
  }

  report.monotonic = true;
  for (const auto& [constant, p] : report.instances) {
    bool ok = report.universal ? report.p_quantified <= p : report.p_quantified >= p;
    if (!ok) report.monotonic = false;
  }

  // p[forall x. a] = 1 - p[exists x. ~a], and dually.
  Formula dual = report.universal
                     ? Formula::exists(var, Formula::negation(f.body()))
                     : Formula::for_all(var, Formula::negation(f.body()));
  report.p_dual = Rational(1) - probability(d, expand(dual, dom));
  report.duality_holds = report.p_dual == report.p_quantified;
  return report;
}

namespace {

// Matches "forall x. a(x) -> b(x)"; returns (var, antecedent, consequent).
struct UniversalImplication {
  std::string var;
  Formula antecedent;
  Formula consequent;
};

std::optional<UniversalImplication> match_universal_implication(const Formula& f) {
  if (f.kind() != Formula::Kind::ForAll) return std::nullopt;
  Formula body = f.body();
  if (body.kind() != Formula::Kind::Implies) return std::nullopt;
  return UniversalImplication{f.bound_var(), body.left(), body.right()};
}

} // namespace

std::vector<DerivedFact> certain_universal_facts(const KnowledgeBase& kb) {
  std::vector<DerivedFact> facts;
  for (const auto& assertion : kb.assertions) {
    if (assertion.schema_var) continue;
    const auto* point = std::get_if<PointAssertion>(&assertion.body);
    if (!point || point->value != 1) continue;
    auto universal = match_universal_implication(point->sentence);
    if (!universal) continue;
    for (const auto& constant : kb.signature.constants()) {
      Term t = Term::constant(constant);
      Formula antecedent = substitute(universal->antecedent, universal->var, t);
      Formula consequent = substitute(universal->consequent, universal->var, t);
      std::string origin = "from certain universal '" + to_string(point->sentence) +
                           "' at " + constant;
      facts.push_back(DerivedFact{consequent, DerivedFact::Rel::GreaterEq,
                                  antecedent, origin});
      facts.push_back(DerivedFact{Formula::conjunction(antecedent, consequent),
                                  DerivedFact::Rel::Equal, antecedent, origin});
    }
  }
  return facts;
}

bool holds(const DerivedFact& fact, const Distribution& d) {
  Rational lhs = probability(d, fact.lhs);
  Rational rhs = probability(d, fact.rhs);
  return fact.rel == DerivedFact::Rel::GreaterEq ? lhs >= rhs : lhs == rhs;
}

std::string to_string(const DerivedFact& fact) {
  std::string rel = fact.rel == DerivedFact::Rel::GreaterEq ? " >= " : " = ";
  return "p[" + to_string(fact.lhs) + "]" + rel + "p[" + to_string(fact.rhs) + "]  (" +
         fact.note + ")";
}

} // namespace pworlds
