#include "generators.hpp"

namespace pworlds::testsupport {

Formula random_ground_formula(Rng& rng, const WorldSpace& ws, unsigned depth) {
  if (depth == 0 || rng.below(4) == 0) {
    std::uint64_t pick = rng.below(ws.atom_count() + 2);
    if (pick == ws.atom_count()) return Formula::truth();
    if (pick == ws.atom_count() + 1) return Formula::falsity();
    return ws.atoms().at(pick).to_formula();
  }
  switch (rng.below(5)) {
    case 0:
      return Formula::negation(random_ground_formula(rng, ws, depth - 1));
    case 1:
      return Formula::conjunction(random_ground_formula(rng, ws, depth - 1),
                                  random_ground_formula(rng, ws, depth - 1));
    case 2:
      return Formula::disjunction(random_ground_formula(rng, ws, depth - 1),
                                  random_ground_formula(rng, ws, depth - 1));
    case 3:
      return Formula::implication(random_ground_formula(rng, ws, depth - 1),
                                  random_ground_formula(rng, ws, depth - 1));
    default:
      return Formula::biconditional(random_ground_formula(rng, ws, depth - 1),
                                    random_ground_formula(rng, ws, depth - 1));
  }
}

Formula random_open_formula(Rng& rng, const Signature& sig, const std::string& var,
                            unsigned depth) {
  const auto& preds = sig.predicates();
  auto random_atom = [&]() -> Formula {
    const auto& pred = preds[rng.below(preds.size())];
    std::vector<Term> args;
    for (unsigned i = 0; i < pred.arity; ++i) {
      // bias toward the variable so the quantifier usually matters
      if (rng.below(3) != 0 || sig.constants().empty())
        args.push_back(Term::variable(var));
      else
        args.push_back(
            Term::constant(sig.constants()[rng.below(sig.constants().size())]));
    }
    return Formula::atom(pred.name, std::move(args));
  };
  if (depth == 0 || rng.below(4) == 0) return random_atom();
  switch (rng.below(5)) {
    case 0:
      return Formula::negation(random_open_formula(rng, sig, var, depth - 1));
    case 1:
      return Formula::conjunction(random_open_formula(rng, sig, var, depth - 1),
                                  random_open_formula(rng, sig, var, depth - 1));
    case 2:
      return Formula::disjunction(random_open_formula(rng, sig, var, depth - 1),
                                  random_open_formula(rng, sig, var, depth - 1));
    case 3:
      return Formula::implication(random_open_formula(rng, sig, var, depth - 1),
                                  random_open_formula(rng, sig, var, depth - 1));
    default: {
      // nested quantifier over a fresh variable
      std::string inner = var + "q";
      Formula body = random_open_formula(rng, sig, inner, depth - 1);
      return rng.coin() ? Formula::exists(inner, std::move(body))
                        : Formula::for_all(inner, std::move(body));
    }
  }
}

Distribution random_distribution(Rng& rng, const WorldSpace& ws) {
  std::uint64_t n = ws.world_count();
  std::vector<std::pair<std::uint64_t, Rational>> weights;
  mpz_class total = 0;
  std::vector<std::uint64_t> raw(n);
  for (std::uint64_t k = 0; k < n; ++k) {
    raw[k] = rng.below(8); // zeros are common on purpose
    total += static_cast<unsigned long>(raw[k]);
  }
  if (total == 0) {
    raw[rng.below(n)] = 1;
    total = 1;
  }
  for (std::uint64_t k = 0; k < n; ++k) {
    if (raw[k] == 0) continue;
    Rational w(mpz_class(static_cast<unsigned long>(raw[k])), total);
    w.canonicalize();
    weights.emplace_back(k, std::move(w));
  }
  return Distribution::from_weights(ws, std::move(weights));
}

} // namespace pworlds::testsupport
