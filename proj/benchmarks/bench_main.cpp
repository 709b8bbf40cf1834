#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "pworlds/defaults.hpp"
#include "pworlds/entailment.hpp"
#include "pworlds/lp.hpp"
#include "pworlds/quantifiers.hpp"

using namespace pworlds;

namespace {

Signature propositional_signature(unsigned n) {
  std::vector<PredicateDecl> preds;
  for (unsigned i = 0; i < n; ++i)
    preds.push_back({"P" + std::to_string(i), 0});
  return Signature(std::move(preds), {});
}

} // namespace

static void BM_ParseFormula(benchmark::State& state) {
  Signature sig({{"Bird", 1}, {"Fly", 1}, {"Penguin", 1}}, {"t1", "t2"});
  std::string text =
      "forall x. (Penguin(x) -> Bird(x)) & ~(Fly(x) & Penguin(x)) | Bird(t1)";
  for (auto _ : state) {
    Formula f = parse_formula(text, sig);
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_ParseFormula);

static void BM_TruthVector(benchmark::State& state) {
  unsigned n = static_cast<unsigned>(state.range(0));
  Signature sig = propositional_signature(n);
  WorldSpace ws = enumerate_worlds(sig, 24);
  // alternating chain P0 & ~P1 | P2 & ~P3 ...
  Formula f = Formula::atom("P0");
  for (unsigned i = 1; i < n; ++i) {
    Formula atom = Formula::atom("P" + std::to_string(i));
    if (i % 2) atom = Formula::negation(atom);
    f = i % 3 ? Formula::conjunction(f, atom) : Formula::disjunction(f, atom);
  }
  for (auto _ : state) {
    TruthVector v = truth_vector(f, ws);
    benchmark::DoNotOptimize(v);
  }
  state.SetComplexityN(static_cast<std::int64_t>(ws.world_count()));
}
BENCHMARK(BM_TruthVector)->DenseRange(8, 20, 4)->Complexity();

static void BM_SimplexSimplexBound(benchmark::State& state) {
  // maximize a coordinate sum over the probability simplex with a few caps
  std::size_t n = static_cast<std::size_t>(state.range(0));
  LPProblem p;
  p.variable_count = n;
  p.objective.assign(n, Rational(0));
  for (std::size_t j = 0; j < n; j += 2) p.objective[j] = 1;
  p.direction = Direction::Maximize;
  p.constraints.push_back(
      {std::vector<Rational>(n, Rational(1)), Relation::Equal, Rational(1)});
  for (std::size_t j = 0; j < 4 && j < n; ++j) {
    std::vector<Rational> row(n, Rational(0));
    row[j] = 1;
    p.constraints.push_back({std::move(row), Relation::LessEq, Rational(1, 8)});
  }
  for (auto _ : state) {
    LPOutcome out = solve(p);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_SimplexSimplexBound)->RangeMultiplier(4)->Range(16, 1024);

static void BM_PenguinBounds(benchmark::State& state) {
  unsigned n_terms = static_cast<unsigned>(state.range(0));
  for (auto _ : state) {
    auto result = max_penguin_instance(Rational(1, 100), n_terms);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_PenguinBounds)->DenseRange(1, 3);

static void BM_QuantifierExpansion(benchmark::State& state) {
  unsigned n = static_cast<unsigned>(state.range(0));
  std::vector<std::string> constants;
  for (unsigned i = 0; i < n; ++i) constants.push_back("c" + std::to_string(i));
  Signature sig({{"R", 2}}, constants);
  Formula f = parse_formula("forall x. exists y. R(x, y)", sig);
  HerbrandDomain dom = herbrand_domain(sig);
  for (auto _ : state) {
    Formula g = expand(f, dom);
    benchmark::DoNotOptimize(g);
  }
}
BENCHMARK(BM_QuantifierExpansion)->RangeMultiplier(2)->Range(2, 16);

BENCHMARK_MAIN();
