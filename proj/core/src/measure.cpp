#include "pworlds/measure.hpp"

#include <algorithm>

#include "pworlds/errors.hpp"

namespace pworlds {

Distribution Distribution::from_weights(
    const WorldSpace& ws, std::vector<std::pair<std::uint64_t, Rational>> weights) {
  std::sort(weights.begin(), weights.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Rational total = 0;
  std::uint64_t previous = 0;
  bool first = true;
  std::vector<std::pair<std::uint64_t, Rational>> nonzero;
  nonzero.reserve(weights.size());
  for (auto& [index, weight] : weights) {
    if (!first && index == previous)
      throw InvariantError("duplicate weight for world " + std::to_string(index));
    first = false;
    previous = index;
    if (index >= ws.world_count())
      throw InvariantError("world index " + std::to_string(index) +
                           " out of range (space has " +
                           std::to_string(ws.world_count()) + " worlds)");
    if (weight < 0)
      throw InvariantError("negative weight " + to_string(weight) + " for world " +
                           std::to_string(index));
    total += weight;
    if (weight != 0) nonzero.emplace_back(index, std::move(weight));
  }
  if (total != 1)
    throw InvariantError("weights sum to " + to_string(total) + ", expected 1");
  return Distribution(ws, std::move(nonzero));
}

Distribution Distribution::uniform(const WorldSpace& ws) {
  std::uint64_t n = ws.world_count();
  Rational each(mpz_class(1), mpz_class(1) << ws.atom_count());
  std::vector<std::pair<std::uint64_t, Rational>> weights;
  weights.reserve(n);
  for (std::uint64_t k = 0; k < n; ++k) weights.emplace_back(k, each);
  return Distribution(ws, std::move(weights));
}

Rational Distribution::weight(std::uint64_t world_index) const {
  auto it = std::lower_bound(
      weights_.begin(), weights_.end(), world_index,
      [](const auto& entry, std::uint64_t k) { return entry.first < k; });
  if (it != weights_.end() && it->first == world_index) return it->second;
  return 0;
}

std::string Distribution::dump() const {
  std::string out;
  for (const auto& [index, weight] : weights_)
    out += "w " + std::to_string(index) + " " + to_string(weight) + "\n";
  return out;
}

std::optional<std::uint64_t> world_of_atom_sentence(const Formula& f,
                                                    const WorldSpace& ws) {
  const std::size_t n = ws.atom_count();
  if (n == 0) return f.kind() == Formula::Kind::True ? std::optional<std::uint64_t>(0)
                                                     : std::nullopt;
  // Walk the conjunction spine; each leaf must be an atom or negated atom.
  std::vector<int> polarity(n, -1); // -1 unseen, 0 negated, 1 plain
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (g.kind() == Formula::Kind::And) {
      stack.push_back(g.left());
      stack.push_back(g.right());
      continue;
    }
    bool negated = false;
    if (g.kind() == Formula::Kind::Not) {
      negated = true;
      g = g.child();
    }
    if (g.kind() != Formula::Kind::Atom) return std::nullopt;
    std::vector<std::string> args;
    for (const auto& t : g.args()) {
      if (!t.is_constant()) return std::nullopt;
      args.push_back(t.name());
    }
    auto idx = ws.atoms().index_of(g.predicate(), args);
    if (!idx) return std::nullopt;
    if (polarity[*idx] != -1) return std::nullopt; // atom mentioned twice
    polarity[*idx] = negated ? 0 : 1;
  }
  std::uint64_t bits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (polarity[i] == -1) return std::nullopt; // atom missing
    if (polarity[i] == 1) bits |= std::uint64_t(1) << i;
  }
  return bits;
}

Distribution from_atom_probs(
    const std::vector<std::pair<Formula, Rational>>& assignments,
    const WorldSpace& ws) {
  if (assignments.size() != ws.world_count())
    throw InvariantError("expected one atom-sentence probability per world (" +
                         std::to_string(ws.world_count()) + "), got " +
                         std::to_string(assignments.size()));
  std::vector<std::pair<std::uint64_t, Rational>> weights;
  weights.reserve(assignments.size());
  for (const auto& [sentence, weight] : assignments) {
    auto world = world_of_atom_sentence(sentence, ws);
    if (!world)
      throw InvariantError("'" + to_string(sentence) +
                           "' is not an atom sentence of this world space");
    weights.emplace_back(*world, weight);
  }
  // from_weights rejects duplicates, so full coverage follows from the count.
  return Distribution::from_weights(ws, std::move(weights));
}

Rational probability(const Distribution& d, const Formula& f) {
  TruthVector satisfied = truth_vector(f, d.space());
  Rational total = 0;
  for (const auto& [index, weight] : d.support())
    if (satisfied.test(index)) total += weight;
  return total;
}

std::optional<Rational> conditional(const Distribution& d, const Formula& a,
                                    const Formula& b) {
  Rational p_b = probability(d, b);
  if (p_b == 0) return std::nullopt;
  Rational p_ab = probability(d, Formula::conjunction(a, b));
  return p_ab / p_b;
}

AdditivityReport check_additivity(const Distribution& d, const Formula& a,
                                  const Formula& b) {
  AdditivityReport report;
  TruthVector va = truth_vector(a, d.space());
  TruthVector vb = truth_vector(b, d.space());
  report.disjoint = (va & vb).all_false();
  report.p_a = probability(d, a);
  report.p_b = probability(d, b);
  report.p_union = probability(d, Formula::disjunction(a, b));
  if (report.disjoint)
    report.additivity_holds = report.p_union == report.p_a + report.p_b;
  return report;
}

} // namespace pworlds
