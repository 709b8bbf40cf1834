#include "pworlds/logic.hpp"

#include <cctype>
#include <unordered_set>
#include <utility>

#include "pworlds/errors.hpp"

namespace pworlds {

// ── Signature ────────────────────────────────────────────────────────────

Signature::Signature(std::vector<PredicateDecl> predicates,
                     std::vector<std::string> constants)
    : predicates_(std::move(predicates)), constants_(std::move(constants)) {
  std::unordered_set<std::string> seen;
  for (const auto& p : predicates_) {
    if (p.name.empty())
      throw InvariantError("predicate with empty name");
    if (!seen.insert(p.name).second)
      throw InvariantError("duplicate predicate '" + p.name + "'");
  }
  std::unordered_set<std::string> cseen;
  for (const auto& c : constants_) {
    if (c.empty())
      throw InvariantError("constant with empty name");
    if (!cseen.insert(c).second)
      throw InvariantError("duplicate constant '" + c + "'");
    if (seen.count(c))
      throw InvariantError("name '" + c + "' declared as both predicate and constant");
  }
}

bool Signature::has_predicate(const std::string& name) const {
  return arity_of(name).has_value();
}

std::optional<unsigned> Signature::arity_of(const std::string& name) const {
  for (const auto& p : predicates_)
    if (p.name == name) return p.arity;
  return std::nullopt;
}

bool Signature::has_constant(const std::string& name) const {
  for (const auto& c : constants_)
    if (c == name) return true;
  return false;
}

// ── Formula factories ────────────────────────────────────────────────────

Formula Formula::truth() {
  static const auto node = std::make_shared<const Node>(Node{Kind::True, "", {}, nullptr, nullptr});
  return Formula(node);
}

Formula Formula::falsity() {
  static const auto node = std::make_shared<const Node>(Node{Kind::False, "", {}, nullptr, nullptr});
  return Formula(node);
}

Formula Formula::atom(std::string predicate, std::vector<Term> args) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Atom, std::move(predicate), std::move(args), nullptr, nullptr}));
}

Formula Formula::negation(Formula f) {
  return Formula(std::make_shared<const Node>(Node{Kind::Not, "", {}, f.node_, nullptr}));
}

Formula Formula::conjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::And, "", {}, a.node_, b.node_}));
}

Formula Formula::disjunction(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Or, "", {}, a.node_, b.node_}));
}

Formula Formula::implication(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Implies, "", {}, a.node_, b.node_}));
}

Formula Formula::biconditional(Formula a, Formula b) {
  return Formula(std::make_shared<const Node>(Node{Kind::Iff, "", {}, a.node_, b.node_}));
}

Formula Formula::for_all(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::ForAll, std::move(var), {}, body.node_, nullptr}));
}

Formula Formula::exists(std::string var, Formula body) {
  return Formula(std::make_shared<const Node>(
      Node{Kind::Exists, std::move(var), {}, body.node_, nullptr}));
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (node_->kind != other.node_->kind) return false;
  switch (node_->kind) {
    case Kind::True:
    case Kind::False:
      return true;
    case Kind::Atom:
      return node_->name == other.node_->name && node_->args == other.node_->args;
    case Kind::Not:
      return child() == other.child();
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return left() == other.left() && right() == other.right();
    case Kind::ForAll:
    case Kind::Exists:
      return node_->name == other.node_->name && body() == other.body();
  }
  return false;
}

// ── Lexer ────────────────────────────────────────────────────────────────

namespace {

enum class Tok {
  Ident, True, False, ForAll, Exists,
  Not, And, Or, Implies, Iff,
  LParen, RParen, Comma, Dot,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  int column; // 1-based position in the input
};

class Lexer {
public:
  explicit Lexer(const std::string& input) : input_(input) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  void advance() {
    while (pos_ < input_.size() &&
           std::isspace(static_cast<unsigned char>(input_[pos_])))
      ++pos_;
    int col = static_cast<int>(pos_) + 1;
    if (pos_ >= input_.size()) {
      current_ = {Tok::End, "", col};
      return;
    }
    char c = input_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < input_.size() &&
             (std::isalnum(static_cast<unsigned char>(input_[pos_])) ||
              input_[pos_] == '_'))
        ++pos_;
      std::string word = input_.substr(start, pos_ - start);
      Tok kind = Tok::Ident;
      if (word == "true") kind = Tok::True;
      else if (word == "false") kind = Tok::False;
      else if (word == "forall") kind = Tok::ForAll;
      else if (word == "exists") kind = Tok::Exists;
      current_ = {kind, std::move(word), col};
      return;
    }
    switch (c) {
      case '~': ++pos_; current_ = {Tok::Not, "~", col}; return;
      case '&': ++pos_; current_ = {Tok::And, "&", col}; return;
      case '|': ++pos_; current_ = {Tok::Or, "|", col}; return;
      case '(': ++pos_; current_ = {Tok::LParen, "(", col}; return;
      case ')': ++pos_; current_ = {Tok::RParen, ")", col}; return;
      case ',': ++pos_; current_ = {Tok::Comma, ",", col}; return;
      case '.': ++pos_; current_ = {Tok::Dot, ".", col}; return;
      case '-':
        if (pos_ + 1 < input_.size() && input_[pos_ + 1] == '>') {
          pos_ += 2;
          current_ = {Tok::Implies, "->", col};
          return;
        }
        throw ParseError("unexpected character '-'", 0, col);
      case '<':
        if (input_.compare(pos_, 3, "<->") == 0) {
          pos_ += 3;
          current_ = {Tok::Iff, "<->", col};
          return;
        }
        throw ParseError("unexpected character '<'", 0, col);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", 0, col);
    }
  }

  const std::string& input_;
  std::size_t pos_ = 0;
  Token current_{Tok::End, "", 1};
};

// ── Parser ───────────────────────────────────────────────────────────────

class Parser {
public:
  Parser(const std::string& text, const Signature& sig,
         const std::set<std::string>& ambient_vars)
      : lexer_(text), sig_(sig), ambient_(ambient_vars) {}

  Formula parse() {
    Formula f = parse_iff();
    if (lexer_.peek().kind != Tok::End)
      fail("unexpected token '" + lexer_.peek().text + "'");
    return f;
  }

private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, 0, lexer_.peek().column);
  }

  Formula parse_iff() {
    Formula left = parse_implies();
    if (lexer_.peek().kind == Tok::Iff) {
      lexer_.take();
      return Formula::biconditional(std::move(left), parse_iff());
    }
    return left;
  }

  Formula parse_implies() {
    Formula left = parse_or();
    if (lexer_.peek().kind == Tok::Implies) {
      lexer_.take();
      return Formula::implication(std::move(left), parse_implies());
    }
    return left;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (lexer_.peek().kind == Tok::Or) {
      lexer_.take();
      f = Formula::disjunction(std::move(f), parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (lexer_.peek().kind == Tok::And) {
      lexer_.take();
      f = Formula::conjunction(std::move(f), parse_unary());
    }
    return f;
  }

  Formula parse_unary() {
    switch (lexer_.peek().kind) {
      case Tok::Not:
        lexer_.take();
        return Formula::negation(parse_unary());
      case Tok::ForAll:
      case Tok::Exists:
        return parse_quantified();
      default:
        return parse_primary();
    }
  }

  Formula parse_quantified() {
    Token quant = lexer_.take();
    Token var = lexer_.take();
    if (var.kind != Tok::Ident)
      throw ParseError("expected variable after '" + quant.text + "'", 0, var.column);
    if (sig_.has_constant(var.text))
      throw ParseError("quantified variable '" + var.text +
                           "' collides with a declared constant",
                       0, var.column);
    Token dot = lexer_.take();
    if (dot.kind != Tok::Dot)
      throw ParseError("expected '.' after quantified variable", 0, dot.column);
    bound_.push_back(var.text);
    Formula body = parse_iff(); // body extends as far right as possible
    bound_.pop_back();
    return quant.kind == Tok::ForAll ? Formula::for_all(var.text, std::move(body))
                                     : Formula::exists(var.text, std::move(body));
  }

  Formula parse_primary() {
    Token t = lexer_.take();
    switch (t.kind) {
      case Tok::True:
        return Formula::truth();
      case Tok::False:
        return Formula::falsity();
      case Tok::LParen: {
        Formula f = parse_iff();
        Token close = lexer_.take();
        if (close.kind != Tok::RParen)
          throw ParseError("expected ')'", 0, close.column);
        return f;
      }
      case Tok::Ident:
        return parse_atom(t);
      default:
        throw ParseError("unexpected token '" + t.text + "'", 0, t.column);
    }
  }

  Formula parse_atom(const Token& name) {
    auto arity = sig_.arity_of(name.text);
    if (!arity)
      throw ParseError("unknown predicate '" + name.text + "'", 0, name.column);
    std::vector<Term> args;
    if (lexer_.peek().kind == Tok::LParen) {
      lexer_.take();
      for (;;) {
        Token arg = lexer_.take();
        if (arg.kind != Tok::Ident)
          throw ParseError("expected term", 0, arg.column);
        args.push_back(resolve_term(arg));
        Token sep = lexer_.take();
        if (sep.kind == Tok::RParen) break;
        if (sep.kind != Tok::Comma)
          throw ParseError("expected ',' or ')'", 0, sep.column);
      }
    }
    if (args.size() != *arity)
      throw ParseError("predicate '" + name.text + "' expects " +
                           std::to_string(*arity) + " argument(s), got " +
                           std::to_string(args.size()),
                       0, name.column);
    return Formula::atom(name.text, std::move(args));
  }

  Term resolve_term(const Token& t) {
    for (auto it = bound_.rbegin(); it != bound_.rend(); ++it)
      if (*it == t.text) return Term::variable(t.text);
    if (ambient_.count(t.text)) return Term::variable(t.text);
    if (sig_.has_constant(t.text)) return Term::constant(t.text);
    throw ParseError("unknown constant '" + t.text +
                         "' (variables must be bound by a quantifier)",
                     0, t.column);
  }

  Lexer lexer_;
  const Signature& sig_;
  const std::set<std::string>& ambient_;
  std::vector<std::string> bound_;
};

} // namespace

Formula parse_formula(const std::string& text, const Signature& sig,
                      const std::set<std::string>& ambient_vars) {
  return Parser(text, sig, ambient_vars).parse();
}

// ── Printer ──────────────────────────────────────────────────────────────

namespace {

// Binding strength; quantifiers are weakest (their body extends maximally),
// so they get parenthesized whenever they sit under another connective.
int precedence_of(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: return 0;
    case Formula::Kind::Iff: return 1;
    case Formula::Kind::Implies: return 2;
    case Formula::Kind::Or: return 3;
    case Formula::Kind::And: return 4;
    case Formula::Kind::Not: return 5;
    default: return 6;
  }
}

void print_into(const Formula& f, int min_prec, std::string& out) {
  int prec = precedence_of(f.kind());
  bool parens = prec < min_prec;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::True: out += "true"; break;
    case Formula::Kind::False: out += "false"; break;
    case Formula::Kind::Atom: {
      out += f.predicate();
      if (!f.args().empty()) {
        out += '(';
        for (std::size_t i = 0; i < f.args().size(); ++i) {
          if (i) out += ", ";
          out += f.args()[i].name();
        }
        out += ')';
      }
      break;
    }
    case Formula::Kind::Not:
      out += '~';
      print_into(f.child(), 5, out);
      break;
    case Formula::Kind::And:
      print_into(f.left(), 4, out);
      out += " & ";
      print_into(f.right(), 5, out);
      break;
    case Formula::Kind::Or:
      print_into(f.left(), 3, out);
      out += " | ";
      print_into(f.right(), 4, out);
      break;
    case Formula::Kind::Implies:
      print_into(f.left(), 3, out);
      out += " -> ";
      print_into(f.right(), 2, out);
      break;
    case Formula::Kind::Iff:
      print_into(f.left(), 2, out);
      out += " <-> ";
      print_into(f.right(), 1, out);
      break;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      out += f.kind() == Formula::Kind::ForAll ? "forall " : "exists ";
      out += f.bound_var();
      out += ". ";
      print_into(f.body(), 0, out);
      break;
  }
  if (parens) out += ')';
}

} // namespace

std::string to_string(const Formula& f) {
  std::string out;
  print_into(f, 0, out);
  return out;
}

// ── Substitution and free variables ──────────────────────────────────────

Formula substitute(const Formula& f, const std::string& var, const Term& value) {
  if (!value.is_constant())
    throw InvariantError("substitute: replacement term must be a constant");
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return f;
    case Formula::Kind::Atom: {
      bool touched = false;
      std::vector<Term> args = f.args();
      for (auto& a : args)
        if (a.is_variable() && a.name() == var) {
          a = value;
          touched = true;
        }
      return touched ? Formula::atom(f.predicate(), std::move(args)) : f;
    }
    case Formula::Kind::Not:
      return Formula::negation(substitute(f.child(), var, value));
    case Formula::Kind::And:
      return Formula::conjunction(substitute(f.left(), var, value),
                                  substitute(f.right(), var, value));
    case Formula::Kind::Or:
      return Formula::disjunction(substitute(f.left(), var, value),
                                  substitute(f.right(), var, value));
    case Formula::Kind::Implies:
      return Formula::implication(substitute(f.left(), var, value),
                                  substitute(f.right(), var, value));
    case Formula::Kind::Iff:
      return Formula::biconditional(substitute(f.left(), var, value),
                                    substitute(f.right(), var, value));
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: {
      if (f.bound_var() == var) return f; // shadowed: bound occurrences untouched
      Formula body = substitute(f.body(), var, value);
      return f.kind() == Formula::Kind::ForAll
                 ? Formula::for_all(f.bound_var(), std::move(body))
                 : Formula::exists(f.bound_var(), std::move(body));
    }
  }
  return f;
}

namespace {

void collect_free(const Formula& f, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom:
      for (const auto& a : f.args())
        if (a.is_variable()) {
          bool is_bound = false;
          for (const auto& b : bound)
            if (b == a.name()) { is_bound = true; break; }
          if (!is_bound) out.insert(a.name());
        }
      return;
    case Formula::Kind::Not:
      collect_free(f.child(), bound, out);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      collect_free(f.left(), bound, out);
      collect_free(f.right(), bound, out);
      return;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      bound.push_back(f.bound_var());
      collect_free(f.body(), bound, out);
      bound.pop_back();
      return;
  }
}

} // namespace

std::set<std::string> free_variables(const Formula& f) {
  std::set<std::string> out;
  std::vector<std::string> bound;
  collect_free(f, bound, out);
  return out;
}

bool is_quantifier_free(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      return false;
    case Formula::Kind::Not:
      return is_quantifier_free(f.child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      return is_quantifier_free(f.left()) && is_quantifier_free(f.right());
    default:
      return true;
  }
}

void validate_formula(const Formula& f, const Signature& sig) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
      return;
    case Formula::Kind::Atom: {
      auto arity = sig.arity_of(f.predicate());
      if (!arity)
        throw InvariantError("unknown predicate '" + f.predicate() + "'");
      if (f.args().size() != *arity)
        throw InvariantError("predicate '" + f.predicate() + "' expects " +
                             std::to_string(*arity) + " argument(s), got " +
                             std::to_string(f.args().size()));
      for (const auto& a : f.args())
        if (a.is_constant() && !sig.has_constant(a.name()))
          throw InvariantError("unknown constant '" + a.name() + "'");
      return;
    }
    case Formula::Kind::Not:
      validate_formula(f.child(), sig);
      return;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
    case Formula::Kind::Iff:
      validate_formula(f.left(), sig);
      validate_formula(f.right(), sig);
      return;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      validate_formula(f.body(), sig);
      return;
  }
}

} // namespace pworlds
