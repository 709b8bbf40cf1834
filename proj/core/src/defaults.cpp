#include "pworlds/defaults.hpp"

#include "pworlds/errors.hpp"

namespace pworlds {

ProbabilityAssertion default_rule_schema(const DefaultRule& rule,
                                         const std::string& var,
                                         const Rational& epsilon) {
  return ProbabilityAssertion::conditional(rule.conclusion, rule.condition,
                                           Relation::GreaterEq, Rational(1) - epsilon)
      .as_schema(var);
}

KnowledgeBase penguin_kb(const Rational& epsilon, unsigned n_terms) {
  if (!(epsilon > 0 && epsilon < 1))
    throw InvariantError("epsilon must lie strictly between 0 and 1, got " +
                         to_string(epsilon));
  if (n_terms == 0)
    throw InvariantError("at least one domain constant is required");

  std::vector<std::string> constants;
  constants.reserve(n_terms);
  for (unsigned i = 1; i <= n_terms; ++i)
    constants.push_back("t" + std::to_string(i));

  Signature sig({{"Bird", 1}, {"Fly", 1}, {"Penguin", 1}}, constants);

  auto unary = [](const std::string& pred) {
    return Formula::atom(pred, {Term::variable("x")});
  };

  KnowledgeBase kb;
  kb.signature = std::move(sig);
  kb.epsilon = epsilon;
  kb.assertions.push_back(
      default_rule_schema(DefaultRule{unary("Fly"), unary("Bird")}, "x", epsilon));
  kb.assertions.push_back(default_rule_schema(
      DefaultRule{Formula::negation(unary("Fly")), unary("Penguin")}, "x", epsilon));
  kb.assertions.push_back(ProbabilityAssertion::point(
      Formula::for_all("x", Formula::implication(unary("Penguin"), unary("Bird"))),
      Rational(1)));
  return kb;
}

namespace {

Formula ground_unary(const std::string& pred, const std::string& constant) {
  return Formula::atom(pred, {Term::constant(constant)});
}

} // namespace

ValueWithWitness max_penguin_instance(const Rational& epsilon, unsigned n_terms,
                                      std::size_t max_atoms) {
  KnowledgeBase kb = penguin_kb(epsilon, n_terms);
  Bounds bounds = query_bounds(kb, ground_unary("Penguin", "t1"),
                               CompileOptions{max_atoms, std::nullopt});
  return ValueWithWitness{std::move(bounds.hi), std::move(bounds.hi_witness)};
}

ChainDerivation penguin_chain_bound(const Rational& epsilon, std::size_t max_atoms) {
  ValueWithWitness max = max_penguin_instance(epsilon, 1, max_atoms);
  const Distribution& d = max.witness;

  Formula bird = ground_unary("Bird", "t1");
  Formula fly = ground_unary("Fly", "t1");
  Formula peng = ground_unary("Penguin", "t1");
  Formula not_peng = Formula::negation(peng);
  Formula fly_bird = Formula::conjunction(fly, bird);
  Formula fly_bird_notpeng = Formula::conjunction(fly_bird, not_peng);
  Formula fly_bird_peng = Formula::conjunction(fly_bird, peng);
  Formula fly_peng = Formula::conjunction(fly, peng);

  Rational p_bird = probability(d, bird);
  Rational p_peng = probability(d, peng);
  if (p_bird == 0 || p_peng == 0)
    throw InvariantError("chain derivation needs positive p[Bird(t1)] and "
                         "p[Penguin(t1)] at the witness");

  Rational p_fb = probability(d, fly_bird);
  Rational p_fbn = probability(d, fly_bird_notpeng);
  Rational p_fbp = probability(d, fly_bird_peng);
  Rational p_fp = probability(d, fly_peng);
  Rational p_npeng = probability(d, not_peng);

  ChainDerivation chain;
  chain.epsilon = epsilon;
  chain.witness_penguin = p_peng;
  chain.implied_bound = Rational(1) / (Rational(2) - 2 * epsilon);

  auto step = [&](std::string description, Rational lhs, std::string rel,
                  Rational rhs) {
    bool ok = rel == "=" ? lhs == rhs : (rel == "<=" ? lhs <= rhs : lhs >= rhs);
    chain.steps.push_back(
        ChainStep{std::move(description), std::move(lhs), std::move(rel),
                  std::move(rhs), ok});
  };

  step("1 - eps <= p[Fly|Bird]  (flying-birds default)", Rational(1) - epsilon,
       "<=", p_fb / p_bird);
  step("p[Fly|Bird] = p[Fly&Bird&~Peng]/p[Bird] + p[Fly&Bird&Peng]/p[Bird]",
       p_fb / p_bird, "=", p_fbn / p_bird + p_fbp / p_bird);
  step("... <= p[Fly&Bird&~Peng]/p[Peng] + p[Fly&Bird&Peng]/p[Peng]  (p[Peng] <= p[Bird])",
       p_fbn / p_bird + p_fbp / p_bird, "<=", p_fbn / p_peng + p_fbp / p_peng);
  step("... <= p[~Peng]/p[Peng] + p[Fly&Peng]/p[Peng]  (numerator monotonicity)",
       p_fbn / p_peng + p_fbp / p_peng, "<=", p_npeng / p_peng + p_fp / p_peng);
  step("p[Fly&Peng]/p[Peng] <= eps  (non-flying-penguins default)", p_fp / p_peng,
       "<=", epsilon);
  step("therefore p[Peng] <= 1/(2 - 2 eps)", p_peng, "<=", chain.implied_bound);

  chain.all_steps_hold = true;
  for (const auto& s : chain.steps)
    if (!s.holds) chain.all_steps_hold = false;
  return chain;
}

ExistentialBound existential_penguin_bound(const Rational& epsilon, unsigned n_terms,
                                           std::size_t max_atoms) {
  KnowledgeBase kb = penguin_kb(epsilon, n_terms);
  Formula query = Formula::exists("x", Formula::atom("Penguin", {Term::variable("x")}));
  Bounds bounds = query_bounds(kb, query, CompileOptions{max_atoms, std::nullopt});
  Rational ceiling = Rational(n_terms) * epsilon / (Rational(1) - epsilon);
  Rational capped = ceiling < 1 ? ceiling : Rational(1);
  return ExistentialBound{std::move(bounds.hi), std::move(bounds.hi_witness),
                          std::move(ceiling), std::move(capped)};
}

ConsistencyResult exception_inconsistency(const Rational& epsilon,
                                          const Rational& bird_lo,
                                          const Rational& fly_hi,
                                          std::size_t max_atoms) {
  if (!(epsilon > 0 && epsilon < 1))
    throw InvariantError("epsilon must lie strictly between 0 and 1");
  if (!is_probability(bird_lo) || !is_probability(fly_hi))
    throw InvariantError("bounds must lie in [0, 1]");

  Signature sig({{"Bird", 1}, {"Fly", 1}}, {"c"});
  KnowledgeBase kb;
  kb.signature = std::move(sig);
  kb.epsilon = epsilon;
  kb.assertions.push_back(ProbabilityAssertion::conditional(
      ground_unary("Fly", "c"), ground_unary("Bird", "c"), Relation::GreaterEq,
      Rational(1) - epsilon));
  kb.assertions.push_back(
      ProbabilityAssertion::interval(ground_unary("Bird", "c"), bird_lo, Rational(1)));
  kb.assertions.push_back(
      ProbabilityAssertion::interval(ground_unary("Fly", "c"), Rational(0), fly_hi));
  return is_consistent(kb, CompileOptions{max_atoms, std::nullopt});
}

std::vector<AnomalyRow> anomaly_sweep(const Rational& epsilon, unsigned max_terms,
                                      std::size_t max_atoms) {
  if (max_terms == 0)
    throw InvariantError("at least one domain constant is required");
  std::vector<AnomalyRow> rows;
  rows.reserve(max_terms);
  for (unsigned n = 1; n <= max_terms; ++n) {
    ValueWithWitness per_term = max_penguin_instance(epsilon, n, max_atoms);
    ExistentialBound existential = existential_penguin_bound(epsilon, n, max_atoms);
    AnomalyRow row;
    row.epsilon = epsilon;
    row.n_terms = n;
    row.per_term_max = per_term.value;
    row.chain_bound = Rational(1) / (Rational(2) - 2 * epsilon);
    row.existential_max = existential.value;
    row.union_ceiling = existential.union_ceiling;
    row.union_ceiling_capped = existential.union_ceiling_capped;
    row.per_term_witness = std::move(per_term.witness);
    row.existential_witness = std::move(existential.witness);
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace pworlds
