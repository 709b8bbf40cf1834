#ifndef PWORLDS_KB_FORMAT_HPP
#define PWORLDS_KB_FORMAT_HPP

#include <iosfwd>
#include <string>

#include "pworlds/entailment.hpp"
#include "pworlds/measure.hpp"

namespace pworlds {

// ── Knowledge-base files ─────────────────────────────────────────────────
//
//   # comment
//   domain: t1, t2              (optional; empty/absent for propositional KBs)
//   predicates: Bird/1, A/0
//   epsilon: 1/100              (required before any "~=" assertion)
//   P(<sentence>) = <r>
//   P(<sentence>) in [<r>, <r>]
//   P(<sentence>) >= <r>                          (shorthand for in [<r>, 1])
//   P(<sentence>) <= <r>                          (shorthand for in [0, <r>])
//   P(<sentence> | <sentence>) >= <r>             (also <=, =)
//   P(...) ~= 1                                   (shorthand for >= 1 - epsilon)
//   ... for all <var>                             (schema over the domain)
//
// Inside P(...) a '|' at parenthesis depth zero separates target from
// condition; write a top-level disjunction as P((a | b)).  Rationals may be
// written p/q or as decimal literals.  Header lines must precede the first
// assertion.  Parse errors carry 1-based line numbers.

KnowledgeBase parse_kb(std::istream& in);
KnowledgeBase load_kb(const std::string& path);

// ── Distribution files ───────────────────────────────────────────────────
//
// Either sparse world weights (the dump format; unlisted worlds are zero):
//
//   w <world-index> <rational>
//
// or one atom-sentence probability per world (all worlds required):
//
//   P(<complete conjunction>) = <rational>
//
// The two forms cannot be mixed in one file.

Distribution parse_distribution(std::istream& in, const WorldSpace& ws);
Distribution load_distribution(const std::string& path, const WorldSpace& ws);

} // namespace pworlds

#endif // PWORLDS_KB_FORMAT_HPP
