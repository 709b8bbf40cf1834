#ifndef PWORLDS_LOGIC_HPP
#define PWORLDS_LOGIC_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pworlds {

// ── Signature ────────────────────────────────────────────────────────────
// A finite, function-free language: predicates with fixed arities plus an
// ordered list of constants.  0-ary predicates act as propositional
// symbols.  The declaration order of predicates and constants is total and
// stable; it defines the ground-atom indexing used everywhere downstream.

struct PredicateDecl {
  std::string name;
  unsigned arity = 0;
};

class Signature {
public:
  Signature() = default;
  Signature(std::vector<PredicateDecl> predicates,
            std::vector<std::string> constants);

  const std::vector<PredicateDecl>& predicates() const { return predicates_; }
  const std::vector<std::string>& constants() const { return constants_; }

  bool has_predicate(const std::string& name) const;
  // arity of a declared predicate; nullopt if unknown
  std::optional<unsigned> arity_of(const std::string& name) const;
  bool has_constant(const std::string& name) const;

private:
  std::vector<PredicateDecl> predicates_;
  std::vector<std::string> constants_;
};

// ── Terms ────────────────────────────────────────────────────────────────
// Either a variable or a constant.  Which one an identifier denotes is
// determined by binding context: quantifier-bound (or explicitly ambient)
// names are variables, everything else must be a declared constant.

class Term {
public:
  enum class Kind { Variable, Constant };

  static Term variable(std::string name) { return Term(Kind::Variable, std::move(name)); }
  static Term constant(std::string name) { return Term(Kind::Constant, std::move(name)); }

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  bool is_variable() const { return kind_ == Kind::Variable; }
  bool is_constant() const { return kind_ == Kind::Constant; }

  bool operator==(const Term& other) const {
    return kind_ == other.kind_ && name_ == other.name_;
  }

private:
  Term(Kind kind, std::string name) : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
};

// ── Formulas ─────────────────────────────────────────────────────────────
// Immutable tree, shared structurally.  Copying a Formula is cheap; all
// operations are pure, so values may be used freely across threads.

class Formula {
public:
  enum class Kind {
    True,
    False,
    Atom,
    Not,
    And,
    Or,
    Implies,
    Iff,
    ForAll,
    Exists,
  };

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string predicate, std::vector<Term> args = {});
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula biconditional(Formula a, Formula b);
  static Formula for_all(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);

  Kind kind() const { return node_->kind; }

  // Atom accessors (valid only when kind() == Atom)
  const std::string& predicate() const { return node_->name; }
  const std::vector<Term>& args() const { return node_->args; }

  // Unary / quantifier accessors
  Formula child() const { return Formula(node_->left); }
  const std::string& bound_var() const { return node_->name; }
  Formula body() const { return Formula(node_->left); }

  // Binary accessors
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }

  // Structural equality.
  bool operator==(const Formula& other) const;

private:
  struct Node {
    Kind kind;
    std::string name;            // predicate name or bound variable
    std::vector<Term> args;      // Atom only
    std::shared_ptr<const Node> left;
    std::shared_ptr<const Node> right;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// ── Operations ───────────────────────────────────────────────────────────

// Parses the ASCII grammar:
//
//   formula  := iff
//   iff      := implies ('<->' iff)?
//   implies  := or ('->' implies)?
//   or       := and ('|' and)*
//   and      := unary ('&' unary)*
//   unary    := '~' unary | quantified | primary
//   quantified := ('forall' | 'exists') ident '.' formula
//   primary  := 'true' | 'false' | ident ('(' term (',' term)* ')')? | '(' formula ')'
//
// Precedence ~ > & > | > -> > <->, with -> and <-> right-associative and a
// quantifier body extending as far right as possible.  An identifier in
// term position is a variable if bound by an enclosing quantifier or listed
// in `ambient_vars` (used for schema templates), otherwise it must be a
// constant declared in the signature.
Formula parse_formula(const std::string& text, const Signature& sig,
                      const std::set<std::string>& ambient_vars = {});

// Minimal-parentheses rendering; parse_formula(to_string(f), sig) == f.
std::string to_string(const Formula& f);

// Replaces every free occurrence of `var` by the constant `value`.  Bound
// occurrences are untouched.  No-op when `var` is not free in `f`.
Formula substitute(const Formula& f, const std::string& var, const Term& value);

std::set<std::string> free_variables(const Formula& f);

inline bool is_sentence(const Formula& f) { return free_variables(f).empty(); }

bool is_quantifier_free(const Formula& f);

// Checks predicates, arities, and constants against the signature; throws
// InvariantError on the first violation.
void validate_formula(const Formula& f, const Signature& sig);

} // namespace pworlds

#endif // PWORLDS_LOGIC_HPP
