#include <doctest.h>

#include "pworlds/defaults.hpp"
#include "pworlds/errors.hpp"
#include "pworlds/quantifiers.hpp"

using namespace pworlds;

TEST_CASE("penguin KB construction counts") {
  KnowledgeBase kb = penguin_kb(Rational(1, 100), 1);
  WorldSpace ws = enumerate_worlds(kb.signature);
  CHECK(ws.atom_count() == 3);
  CHECK(ws.world_count() == 8);
  CHECK(expand_schemas(kb).size() == 3); // two schema instances + the universal

  KnowledgeBase kb2 = penguin_kb(Rational(1, 100), 2);
  WorldSpace ws2 = enumerate_worlds(kb2.signature);
  CHECK(ws2.atom_count() == 6);
  CHECK(ws2.world_count() == 64);
  CHECK(expand_schemas(kb2).size() == 5);
}

TEST_CASE("epsilon must be strictly inside (0, 1)") {
  CHECK_THROWS_AS(penguin_kb(Rational(0), 1), InvariantError);
  CHECK_THROWS_AS(penguin_kb(Rational(1), 1), InvariantError);
  CHECK_THROWS_AS(penguin_kb(Rational(-1, 2), 1), InvariantError);
  CHECK_THROWS_AS(penguin_kb(Rational(1, 2), 0), InvariantError);
}

TEST_CASE("per-term penguin maximum matches the closed form") {
  auto result = max_penguin_instance(Rational(1, 100), 1);
  CHECK(result.value == Rational(1, 99));

  auto result10 = max_penguin_instance(Rational(1, 10), 1);
  CHECK(result10.value == Rational(1, 9));
  CHECK(result10.value <= Rational(5, 9)); // the chain ceiling 1/(2 - 2/10)

  // closed form eps/(1-eps), independent of the number of terms
  for (long num : {1L, 2L}) {
    for (unsigned n : {1u, 2u}) {
      Rational eps(num, 5);
      auto r = max_penguin_instance(eps, n);
      Rational expected = eps / (Rational(1) - eps);
      CHECK(r.value == expected);
    }
  }

  // the witness satisfies every ground assertion exactly
  KnowledgeBase kb = penguin_kb(Rational(1, 10), 1);
  for (const auto& assertion : expand_schemas(kb))
    CHECK(assertion_holds(assertion, result10.witness));
}

TEST_CASE("per-term maximum is symmetric across terms") {
  KnowledgeBase kb = penguin_kb(Rational(1, 10), 2);
  Bounds t1 = query_bounds(kb, parse_formula("Penguin(t1)", kb.signature));
  Bounds t2 = query_bounds(kb, parse_formula("Penguin(t2)", kb.signature));
  CHECK(t1.hi == t2.hi);
  CHECK(t1.hi == Rational(1, 9));
}

TEST_CASE("the derivation chain verifies step by step") {
  ChainDerivation chain = penguin_chain_bound(Rational(1, 100));
  CHECK(chain.all_steps_hold);
  CHECK(chain.implied_bound == Rational(50, 99));
  CHECK(chain.witness_penguin == Rational(1, 99));
  CHECK(chain.witness_penguin <= chain.implied_bound);
  REQUIRE(chain.steps.size() == 6);
  for (const auto& step : chain.steps) CHECK(step.holds);

  ChainDerivation chain10 = penguin_chain_bound(Rational(1, 10));
  CHECK(chain10.all_steps_hold);
  CHECK(chain10.implied_bound == Rational(5, 9));
  CHECK(chain10.witness_penguin == Rational(1, 9));
}

TEST_CASE("the per-term maximum saturates at one for eps >= 1/2") {
  // eps/(1-eps) reaches 1 exactly at eps = 1/2 and the probability ceiling
  // takes over beyond it
  CHECK(max_penguin_instance(Rational(1, 2), 1).value == 1);
  CHECK(max_penguin_instance(Rational(3, 4), 1).value == 1);

  ChainDerivation boundary = penguin_chain_bound(Rational(1, 2));
  CHECK(boundary.all_steps_hold);
  CHECK(boundary.witness_penguin == 1);
  CHECK(boundary.implied_bound == 1);
}

TEST_CASE("the chain ceiling strictly dominates the exact bound") {
  for (long num : {1L, 3L}) {
    for (long den : {10L, 100L}) {
      Rational eps = ratio(num, den);
      Rational exact = eps / (Rational(1) - eps);
      Rational chain = Rational(1) / (Rational(2) - 2 * eps);
      CHECK(exact < chain);
    }
  }
}

TEST_CASE("existential bound for one term equals the instance bound") {
  auto existential = existential_penguin_bound(Rational(1, 100), 1);
  CHECK(existential.value == Rational(1, 99));
  CHECK(existential.union_ceiling == Rational(1, 99));
}

TEST_CASE("existential bound saturates when the union ceiling passes one") {
  // eps = 2/5: per-term max 2/3, so two disjoint penguin events overshoot
  auto existential = existential_penguin_bound(Rational(2, 5), 2);
  CHECK(existential.union_ceiling == Rational(4, 3));
  CHECK(existential.union_ceiling_capped == 1);
  CHECK(existential.value == 1);
}

TEST_CASE("existential bound grows with the domain but stays under the union ceiling") {
  Rational eps(1, 100);
  Rational previous(0);
  // LP-computed values, frozen: for small eps the per-term optima combine
  // disjointly, so the union bound n*eps/(1-eps) is attained exactly.
  std::vector<Rational> recorded = {Rational(1, 99), Rational(2, 99), Rational(1, 33)};
  for (unsigned n = 1; n <= 3; ++n) {
    auto result = existential_penguin_bound(eps, n);
    CHECK(result.value == recorded[n - 1]);
    CHECK(result.value >= previous);
    CHECK(result.value <= result.union_ceiling_capped);
    // witness check, not trusted from the solver
    KnowledgeBase kb = penguin_kb(eps, n);
    for (const auto& assertion : expand_schemas(kb))
      CHECK(assertion_holds(assertion, result.witness));
    previous = result.value;
  }
}

TEST_CASE("known exceptions flip consistency exactly at the product boundary") {
  // p[Fly] >= (1 - eps) * bird_lo = 81/100, so a 1/10 cap is impossible
  CHECK(!exception_inconsistency(Rational(1, 10), Rational(9, 10), Rational(1, 10))
             .consistent);

  ConsistencyResult boundary =
      exception_inconsistency(Rational(1, 10), Rational(9, 10), Rational(81, 100));
  CHECK(boundary.consistent);
  REQUIRE(boundary.witness.has_value());

  // a vacuous condition never conflicts
  CHECK(exception_inconsistency(Rational(1, 10), Rational(0), Rational(1, 10))
            .consistent);
}

TEST_CASE("anomaly sweep rows are well-formed") {
  auto rows = anomaly_sweep(Rational(1, 100), 3);
  REQUIRE(rows.size() == 3);
  Rational previous(0);
  for (unsigned i = 0; i < rows.size(); ++i) {
    const AnomalyRow& row = rows[i];
    CHECK(row.n_terms == i + 1);
    CHECK(row.per_term_max == Rational(1, 99));
    CHECK(row.chain_bound == Rational(50, 99));
    CHECK(row.per_term_max <= row.chain_bound);
    CHECK(row.existential_max >= previous);
    CHECK(row.existential_max <= row.union_ceiling_capped);
    previous = row.existential_max;
  }
  CHECK(rows[0].existential_max == Rational(1, 99));
}

TEST_CASE("generic default rules compile to conditional schemas") {
  Formula swims = Formula::atom("Swims", {Term::variable("x")});
  Formula fish = Formula::atom("Fish", {Term::variable("x")});
  ProbabilityAssertion schema =
      default_rule_schema(DefaultRule{swims, fish}, "x", Rational(1, 20));
  REQUIRE(schema.schema_var.has_value());
  const auto& c = std::get<ConditionalAssertion>(schema.body);
  CHECK(c.relation == Relation::GreaterEq);
  CHECK(c.threshold == Rational(19, 20));
  CHECK(c.target == swims);
  CHECK(c.condition == fish);
}
