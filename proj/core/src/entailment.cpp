#include "pworlds/entailment.hpp"

#include <future>
#include <stdexcept>

#include "pworlds/errors.hpp"
#include "pworlds/quantifiers.hpp"

namespace pworlds {

// ── Assertion construction ───────────────────────────────────────────────

ProbabilityAssertion ProbabilityAssertion::point(Formula sentence, Rational value) {
  ProbabilityAssertion a{PointAssertion{std::move(sentence), std::move(value)},
                         std::nullopt, 0, ""};
  a.render_display();
  return a;
}

ProbabilityAssertion ProbabilityAssertion::interval(Formula sentence, Rational lo,
                                                    Rational hi) {
  ProbabilityAssertion a{
      IntervalAssertion{std::move(sentence), std::move(lo), std::move(hi)},
      std::nullopt, 0, ""};
  a.render_display();
  return a;
}

ProbabilityAssertion ProbabilityAssertion::conditional(Formula target,
                                                       Formula condition,
                                                       Relation relation,
                                                       Rational threshold) {
  ProbabilityAssertion a{ConditionalAssertion{std::move(target), std::move(condition),
                                              relation, std::move(threshold)},
                         std::nullopt, 0, ""};
  a.render_display();
  return a;
}

ProbabilityAssertion ProbabilityAssertion::as_schema(std::string var) const {
  ProbabilityAssertion copy = *this;
  copy.schema_var = std::move(var);
  copy.render_display();
  return copy;
}

void ProbabilityAssertion::render_display() {
  std::string text;
  if (const auto* p = std::get_if<PointAssertion>(&body)) {
    text = "P(" + pworlds::to_string(p->sentence) + ") = " + pworlds::to_string(p->value);
  } else if (const auto* i = std::get_if<IntervalAssertion>(&body)) {
    text = "P(" + pworlds::to_string(i->sentence) + ") in [" +
           pworlds::to_string(i->lo) + ", " + pworlds::to_string(i->hi) + "]";
  } else if (const auto* c = std::get_if<ConditionalAssertion>(&body)) {
    text = "P(" + pworlds::to_string(c->target) + " | " +
           pworlds::to_string(c->condition) + ") " + pworlds::to_string(c->relation) +
           " " + pworlds::to_string(c->threshold);
  }
  if (schema_var) text += " for all " + *schema_var;
  display = std::move(text);
}

// ── Schema expansion ─────────────────────────────────────────────────────

namespace {

void validate_probability_range(const ProbabilityAssertion& a) {
  auto bad = [&](const std::string& what) {
    std::string where = a.source_line > 0
                            ? " (line " + std::to_string(a.source_line) + ")"
                            : "";
    throw InvariantError(what + " in assertion '" + a.display + "'" + where);
  };
  if (const auto* p = std::get_if<PointAssertion>(&a.body)) {
    if (!is_probability(p->value)) bad("probability outside [0, 1]");
  } else if (const auto* i = std::get_if<IntervalAssertion>(&a.body)) {
    if (!is_probability(i->lo) || !is_probability(i->hi)) bad("probability outside [0, 1]");
    if (i->lo > i->hi) bad("empty interval (lo > hi)");
  } else if (const auto* c = std::get_if<ConditionalAssertion>(&a.body)) {
    if (!is_probability(c->threshold)) bad("probability outside [0, 1]");
  }
}

ProbabilityAssertion instantiate(const ProbabilityAssertion& schema,
                                 const std::string& var, const Term& t) {
  ProbabilityAssertion ground = schema;
  ground.schema_var.reset();
  if (auto* p = std::get_if<PointAssertion>(&ground.body)) {
    p->sentence = substitute(p->sentence, var, t);
  } else if (auto* i = std::get_if<IntervalAssertion>(&ground.body)) {
    i->sentence = substitute(i->sentence, var, t);
  } else if (auto* c = std::get_if<ConditionalAssertion>(&ground.body)) {
    c->target = substitute(c->target, var, t);
    c->condition = substitute(c->condition, var, t);
  }
  // keep the schema's display plus the instantiation for reports
  ground.display = schema.display + " [" + var + " := " + t.name() + "]";
  return ground;
}

std::vector<const Formula*> assertion_formulas(const ProbabilityAssertion& a) {
  std::vector<const Formula*> out;
  if (const auto* p = std::get_if<PointAssertion>(&a.body)) out = {&p->sentence};
  else if (const auto* i = std::get_if<IntervalAssertion>(&a.body)) out = {&i->sentence};
  else if (const auto* c = std::get_if<ConditionalAssertion>(&a.body))
    out = {&c->target, &c->condition};
  return out;
}

} // namespace

std::vector<ProbabilityAssertion> expand_schemas(const KnowledgeBase& kb) {
  std::vector<ProbabilityAssertion> ground;
  for (const auto& assertion : kb.assertions) {
    validate_probability_range(assertion);
    if (!assertion.schema_var) {
      for (const Formula* f : assertion_formulas(assertion))
        if (!is_sentence(*f))
          throw InvariantError("assertion '" + assertion.display +
                               "' has free variables but is not a schema");
      ground.push_back(assertion);
      continue;
    }
    const std::string& var = *assertion.schema_var;
    std::set<std::string> free;
    for (const Formula* f : assertion_formulas(assertion))
      for (const auto& v : free_variables(*f)) free.insert(v);
    if (free != std::set<std::string>{var})
      throw InvariantError("schema '" + assertion.display +
                           "' must have exactly the free variable '" + var + "'");
    if (kb.signature.constants().empty())
      throw InvariantError("schema '" + assertion.display +
                           "' cannot be instantiated: the domain is empty");
    for (const auto& constant : kb.signature.constants())
      ground.push_back(instantiate(assertion, var, Term::constant(constant)));
  }
  return ground;
}

// ── Compilation ──────────────────────────────────────────────────────────

namespace {

std::vector<Rational> indicator_row(const TruthVector& v) {
  std::vector<Rational> row(v.size(), Rational(0));
  for (std::uint64_t k = 0; k < v.size(); ++k)
    if (v.test(k)) row[k] = 1;
  return row;
}

} // namespace

CompiledKb compile(const KnowledgeBase& kb, const CompileOptions& options) {
  WorldSpace space = enumerate_worlds(kb.signature, options.max_atoms);
  HerbrandDomain dom = herbrand_domain(kb.signature);
  const std::uint64_t n_worlds = space.world_count();

  LPProblem lp;
  lp.variable_count = n_worlds;
  lp.objective.assign(n_worlds, Rational(0));
  lp.direction = Direction::Maximize;

  std::vector<int> row_source;

  // Total probability: the weights form a distribution.
  lp.constraints.push_back(
      LinearConstraint{std::vector<Rational>(n_worlds, Rational(1)),
                       Relation::Equal, Rational(1)});
  row_source.push_back(-1);

  std::vector<ProbabilityAssertion> ground = expand_schemas(kb);
  auto ground_vector = [&](const Formula& f) {
    Formula expanded = expand(f, dom);
    validate_formula(expanded, kb.signature);
    return truth_vector(expanded, space);
  };

  for (std::size_t a = 0; a < ground.size(); ++a) {
    const auto& assertion = ground[a];
    if (const auto* p = std::get_if<PointAssertion>(&assertion.body)) {
      lp.constraints.push_back(LinearConstraint{
          indicator_row(ground_vector(p->sentence)), Relation::Equal, p->value});
      row_source.push_back(static_cast<int>(a));
    } else if (const auto* i = std::get_if<IntervalAssertion>(&assertion.body)) {
      auto row = indicator_row(ground_vector(i->sentence));
      lp.constraints.push_back(LinearConstraint{row, Relation::GreaterEq, i->lo});
      row_source.push_back(static_cast<int>(a));
      lp.constraints.push_back(
          LinearConstraint{std::move(row), Relation::LessEq, i->hi});
      row_source.push_back(static_cast<int>(a));
    } else if (const auto* c = std::get_if<ConditionalAssertion>(&assertion.body)) {
      // p[target & condition] rel threshold * p[condition], linearized:
      // worlds in target&condition contribute (1 - threshold), worlds in
      // condition only contribute -threshold.
      TruthVector cond = ground_vector(c->condition);
      TruthVector both = ground_vector(c->target) & cond;
      Rational in_target = Rational(1) - c->threshold;
      Rational outside_target = -c->threshold;
      std::vector<Rational> row(n_worlds, Rational(0));
      for (std::uint64_t k = 0; k < n_worlds; ++k) {
        if (!cond.test(k)) continue;
        row[k] = both.test(k) ? in_target : outside_target;
      }
      lp.constraints.push_back(LinearConstraint{std::move(row), c->relation, Rational(0)});
      row_source.push_back(static_cast<int>(a));
      if (options.require_positive_conditions) {
        lp.constraints.push_back(LinearConstraint{indicator_row(cond),
                                                  Relation::GreaterEq,
                                                  *options.require_positive_conditions});
        row_source.push_back(-1);
      }
    }
  }

  return CompiledKb{std::move(space), std::move(lp), std::move(ground),
                    std::move(row_source)};
}

// ── Assertion checking ───────────────────────────────────────────────────

bool assertion_holds(const ProbabilityAssertion& assertion, const Distribution& d) {
  if (assertion.schema_var)
    throw InvariantError("assertion_holds expects a ground assertion; expand schemas first");
  HerbrandDomain dom = herbrand_domain(d.space().signature());
  auto p_of = [&](const Formula& f) { return probability(d, expand(f, dom)); };
  if (const auto* p = std::get_if<PointAssertion>(&assertion.body))
    return p_of(p->sentence) == p->value;
  if (const auto* i = std::get_if<IntervalAssertion>(&assertion.body)) {
    Rational v = p_of(i->sentence);
    return i->lo <= v && v <= i->hi;
  }
  const auto& c = std::get<ConditionalAssertion>(assertion.body);
  Rational p_cond = p_of(c.condition);
  Rational p_both = p_of(Formula::conjunction(c.target, c.condition));
  Rational lhs = p_both;
  Rational rhs = c.threshold * p_cond;
  switch (c.relation) {
    case Relation::LessEq: return lhs <= rhs;
    case Relation::Equal: return lhs == rhs;
    case Relation::GreaterEq: return lhs >= rhs;
  }
  return false;
}

// ── Consistency and bounds ───────────────────────────────────────────────

namespace {

Distribution witness_to_distribution(const WorldSpace& space,
                                     const std::vector<Rational>& witness) {
  std::vector<std::pair<std::uint64_t, Rational>> weights;
  for (std::uint64_t k = 0; k < witness.size(); ++k)
    if (witness[k] != 0) weights.emplace_back(k, witness[k]);
  return Distribution::from_weights(space, std::move(weights));
}

void check_witness(const CompiledKb& compiled, const Distribution& witness) {
  for (const auto& assertion : compiled.ground_assertions)
    if (!assertion_holds(assertion, witness))
      throw std::logic_error("LP witness violates assertion '" + assertion.display +
                             "'");
}

// Deletion-filter reduction to a small infeasible core: drop each assertion
// in turn; if the rest is still infeasible the assertion is not needed.
std::string infeasibility_note(const KnowledgeBase& kb, const CompileOptions& options) {
  std::vector<ProbabilityAssertion> core = kb.assertions;
  std::size_t i = 0;
  while (i < core.size() && core.size() > 1) {
    KnowledgeBase reduced{kb.signature, {}, kb.epsilon};
    for (std::size_t j = 0; j < core.size(); ++j)
      if (j != i) reduced.assertions.push_back(core[j]);
    LPProblem lp = compile(reduced, options).lp;
    if (solve(lp).status == LPOutcome::Status::Infeasible)
      core.erase(core.begin() + static_cast<std::ptrdiff_t>(i));
    else
      ++i;
  }
  std::string note = "no distribution satisfies these assertions together: ";
  for (std::size_t j = 0; j < core.size(); ++j) {
    if (j) note += "; ";
    note += "'" + core[j].display + "'";
    if (core[j].source_line > 0)
      note += " (line " + std::to_string(core[j].source_line) + ")";
  }
  return note;
}

} // namespace

ConsistencyResult is_consistent(const KnowledgeBase& kb, const CompileOptions& options) {
  CompiledKb compiled = compile(kb, options);
  LPOutcome outcome = solve(compiled.lp); // zero objective: pure feasibility
  if (outcome.status == LPOutcome::Status::Infeasible)
    return ConsistencyResult{false, std::nullopt, infeasibility_note(kb, options)};
  Distribution witness = witness_to_distribution(compiled.space, outcome.witness);
  check_witness(compiled, witness);
  return ConsistencyResult{true, std::move(witness), ""};
}

Bounds query_bounds(const KnowledgeBase& kb, const Formula& query,
                    const CompileOptions& options) {
  CompiledKb compiled = compile(kb, options);

  Formula expanded = expand(query, herbrand_domain(kb.signature));
  validate_formula(expanded, kb.signature);
  if (!is_sentence(expanded))
    throw InvariantError("query has free variables");
  TruthVector satisfied = truth_vector(expanded, compiled.space);

  LPProblem lo_problem = compiled.lp;
  for (std::uint64_t k = 0; k < satisfied.size(); ++k)
    if (satisfied.test(k)) lo_problem.objective[k] = 1;
  LPProblem hi_problem = lo_problem;
  lo_problem.direction = Direction::Minimize;
  hi_problem.direction = Direction::Maximize;

  // The two bounds are independent solves; run them concurrently.
  auto lo_future = std::async(std::launch::async,
                              [&lo_problem] { return solve(lo_problem); });
  LPOutcome hi_outcome = solve(hi_problem);
  LPOutcome lo_outcome = lo_future.get();

  if (lo_outcome.status == LPOutcome::Status::Infeasible ||
      hi_outcome.status == LPOutcome::Status::Infeasible)
    throw InconsistentKbError(infeasibility_note(kb, options));
  if (!lo_outcome.optimal() || !hi_outcome.optimal())
    throw std::logic_error("bounded probability LP reported unbounded");

  Distribution lo_witness = witness_to_distribution(compiled.space, lo_outcome.witness);
  Distribution hi_witness = witness_to_distribution(compiled.space, hi_outcome.witness);
  check_witness(compiled, lo_witness);
  check_witness(compiled, hi_witness);
  if (probability(lo_witness, expanded) != lo_outcome.value ||
      probability(hi_witness, expanded) != hi_outcome.value)
    throw std::logic_error("bound witness does not attain its bound");

  return Bounds{std::move(lo_outcome.value), std::move(hi_outcome.value),
                std::move(lo_witness), std::move(hi_witness)};
}

} // namespace pworlds
