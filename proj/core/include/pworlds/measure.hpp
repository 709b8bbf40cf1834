#ifndef PWORLDS_MEASURE_HPP
#define PWORLDS_MEASURE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pworlds/rational.hpp"
#include "pworlds/worlds.hpp"

namespace pworlds {

// A probability distribution over a world space: one nonnegative rational
// weight per world, summing to exactly one.  Stored sparsely (zero-weight
// worlds omitted), immutable after construction.
class Distribution {
public:
  // `weights` maps world index to weight; worlds not listed get zero.
  // Throws InvariantError on negative weights, duplicate or out-of-range
  // indices, or a total differing from one.
  static Distribution from_weights(const WorldSpace& ws,
                                   std::vector<std::pair<std::uint64_t, Rational>> weights);

  static Distribution uniform(const WorldSpace& ws);

  const WorldSpace& space() const { return space_; }

  Rational weight(std::uint64_t world_index) const;

  // nonzero entries, sorted by world index
  const std::vector<std::pair<std::uint64_t, Rational>>& support() const {
    return weights_;
  }

  // One "w <index> <rational>" line per nonzero-weight world.
  std::string dump() const;

private:
  Distribution(WorldSpace ws, std::vector<std::pair<std::uint64_t, Rational>> weights)
      : space_(std::move(ws)), weights_(std::move(weights)) {}

  WorldSpace space_;
  std::vector<std::pair<std::uint64_t, Rational>> weights_;
};

// Builds the distribution specified by the probabilities of the atom
// sentences (complete conjunctions).  Requires exactly one assignment per
// world of the space; each formula must be an atom sentence.
Distribution from_atom_probs(
    const std::vector<std::pair<Formula, Rational>>& assignments,
    const WorldSpace& ws);

// Identifies which world an atom sentence pins down: a conjunction
// containing every ground atom exactly once, plain or negated.  Returns
// nullopt when `f` has a different shape.
std::optional<std::uint64_t> world_of_atom_sentence(const Formula& f,
                                                    const WorldSpace& ws);

// p[f]: the sum of the weights of the worlds in which f is true.  f must be
// ground and quantifier-free over the distribution's signature.
Rational probability(const Distribution& d, const Formula& f);

// p[a|b] = p[a & b] / p[b]; nullopt ("undefined") when p[b] = 0.
std::optional<Rational> conditional(const Distribution& d, const Formula& a,
                                    const Formula& b);

// Finite-additivity self-check: when a and b are disjoint over the world
// space, p[a | b] (the disjunction) must equal p[a] + p[b] exactly.
struct AdditivityReport {
  bool disjoint = false;
  Rational p_a;
  Rational p_b;
  Rational p_union;
  // set only when disjoint; must always come out true
  std::optional<bool> additivity_holds;
};

AdditivityReport check_additivity(const Distribution& d, const Formula& a,
                                  const Formula& b);

} // namespace pworlds

#endif // PWORLDS_MEASURE_HPP
