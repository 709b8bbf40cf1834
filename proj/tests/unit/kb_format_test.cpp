#include <doctest.h>

#include <sstream>

#include "pworlds/errors.hpp"
#include "pworlds/kb_format.hpp"

using namespace pworlds;

namespace {

KnowledgeBase kb_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_kb(in);
}

Distribution dist_from_text(const std::string& text, const WorldSpace& ws) {
  std::istringstream in(text);
  return parse_distribution(in, ws);
}

} // namespace

TEST_CASE("a knowledge base file with every assertion form") {
  KnowledgeBase kb = kb_from_text(
      "# birds and penguins\n"
      "domain: t1, t2\n"
      "predicates: Bird/1, Fly/1, Penguin/1\n"
      "epsilon: 1/100\n"
      "\n"
      "P(Bird(t1)) = 9/10\n"
      "P(Penguin(t2)) in [1/10, 1/2]\n"
      "P(Fly(t1)) >= 0.25\n"
      "P(Fly(t2)) <= 3/4\n"
      "P(Fly(x) | Bird(x)) >= 0.9 for all x\n"
      "P(~Fly(x) | Penguin(x)) ~= 1 for all x\n"
      "P(forall x. Penguin(x) -> Bird(x)) = 1\n");

  CHECK(kb.signature.constants() == std::vector<std::string>{"t1", "t2"});
  CHECK(kb.epsilon == Rational(1, 100));
  REQUIRE(kb.assertions.size() == 7);

  const auto& point = std::get<PointAssertion>(kb.assertions[0].body);
  CHECK(point.value == Rational(9, 10));
  CHECK(kb.assertions[0].source_line == 6);

  const auto& interval = std::get<IntervalAssertion>(kb.assertions[1].body);
  CHECK(interval.lo == Rational(1, 10));
  CHECK(interval.hi == Rational(1, 2));

  const auto& ge = std::get<IntervalAssertion>(kb.assertions[2].body);
  CHECK(ge.lo == Rational(1, 4)); // 0.25 converted exactly
  CHECK(ge.hi == 1);

  const auto& le = std::get<IntervalAssertion>(kb.assertions[3].body);
  CHECK(le.lo == 0);
  CHECK(le.hi == Rational(3, 4));

  const auto& cond = std::get<ConditionalAssertion>(kb.assertions[4].body);
  CHECK(cond.relation == Relation::GreaterEq);
  CHECK(cond.threshold == Rational(9, 10));
  CHECK(kb.assertions[4].schema_var == "x");

  const auto& approx = std::get<ConditionalAssertion>(kb.assertions[5].body);
  CHECK(approx.threshold == Rational(99, 100)); // 1 - epsilon

  const auto& universal = std::get<PointAssertion>(kb.assertions[6].body);
  CHECK(universal.value == 1);
  CHECK(is_sentence(universal.sentence));
}

TEST_CASE("a top-level '|' inside P(...) separates target from condition") {
  KnowledgeBase kb = kb_from_text(
      "predicates: A/0, B/0\n"
      "P((A | B)) = 1/2\n"   // parenthesized: a disjunction point assertion
      "P(A | B) >= 1/2\n");  // bare: a conditional
  REQUIRE(kb.assertions.size() == 2);
  CHECK(std::holds_alternative<PointAssertion>(kb.assertions[0].body));
  CHECK(std::holds_alternative<ConditionalAssertion>(kb.assertions[1].body));
}

TEST_CASE("knowledge-base parse errors carry line numbers") {
  auto line_of = [](const std::string& text) {
    try {
      kb_from_text(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };

  CHECK(line_of("predicates: A/0\npredicates: B/0\n") == 2);
  CHECK(line_of("domain: c\ndomain: d\n") == 2);
  CHECK(line_of("predicates: A\n") == 1);             // missing arity
  CHECK(line_of("predicates: A/0\nP(B) = 1\n") == 2); // unknown predicate
  CHECK(line_of("predicates: A/0\nP(A) = 2/1\n") == -1); // parses; compile rejects
  CHECK(line_of("predicates: A/0\nP(A) ~= 1\n") == 2);   // epsilon undeclared
  CHECK(line_of("predicates: A/0\nP(A) == 1\n") == 2);
  CHECK(line_of("predicates: A/0\nP(A) = 1 trailing\n") == 2);
  CHECK(line_of("predicates: A/0\nP(A) = 1\ndomain: c\n") == 3); // header after assertion
  CHECK(line_of("predicates: P/1\ndomain: c\nP(P(x)) = 1\n") == 3); // unbound x
  CHECK(line_of("predicates: P/1\ndomain: c\nP(P(c)) = 1 for all x\n") == 3); // unused var
  CHECK(line_of("predicates: A/0\nepsilon: 1\nP(A) ~= 1\n") == 2); // eps out of range
  CHECK(line_of("predicates: A/0, B/0\nP(A | B) in [0, 1]\n") == 2);
}

TEST_CASE("sparse distribution files follow the dump format") {
  WorldSpace ws = enumerate_worlds(Signature({{"A", 0}, {"B", 0}}, {}));
  Distribution d = dist_from_text(
      "# worked example\n"
      "w 3 1/2\n"
      "w 1 1/10\n"
      "w 2 1/5\n"
      "w 0 1/5\n",
      ws);
  CHECK(probability(d, parse_formula("A | B", ws.signature())) == Rational(4, 5));

  // round trip through the dump format
  Distribution again = dist_from_text(d.dump(), ws);
  CHECK(again.support() == d.support());

  // unlisted worlds default to zero weight
  Distribution sparse = dist_from_text("w 0 1\n", ws);
  CHECK(sparse.weight(3) == 0);
}

TEST_CASE("atom-sentence distribution files require full coverage") {
  WorldSpace ws = enumerate_worlds(Signature({{"A", 0}, {"B", 0}}, {}));
  Distribution d = dist_from_text(
      "P(A & B) = 1/2\n"
      "P(A & ~B) = 1/10\n"
      "P(~A & B) = 1/5\n"
      "P(~A & ~B) = 1/5\n",
      ws);
  CHECK(d.weight(3) == Rational(1, 2));

  CHECK_THROWS_AS(dist_from_text("P(A & B) = 1\n", ws), InvariantError);
  CHECK_THROWS_AS(
      dist_from_text("P(A) = 1\nP(~A) = 0\nP(A & B) = 0\nP(A & ~B) = 0\n", ws),
      InvariantError);
}

TEST_CASE("distribution file validation") {
  WorldSpace ws = enumerate_worlds(Signature({{"A", 0}}, {}));
  // grammar-level problems are parse errors
  CHECK_THROWS_AS(dist_from_text("w 0 1/2\nP(A) = 1/2\n", ws), ParseError); // mixed
  CHECK_THROWS_AS(dist_from_text("bogus\n", ws), ParseError);
  // invariant violations surface as such
  CHECK_THROWS_AS(dist_from_text("w 0 1/2\nw 1 1/3\n", ws), InvariantError); // sum
  CHECK_THROWS_AS(dist_from_text("w 0 -1/2\nw 1 3/2\n", ws), InvariantError);
  CHECK_THROWS_AS(dist_from_text("w 5 1\n", ws), InvariantError); // bad index
}

TEST_CASE("loading from a missing path reports the file") {
  CHECK_THROWS_AS(load_kb("/nonexistent/kb.pl"), ParseError);
}
