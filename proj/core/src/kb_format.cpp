#include "pworlds/kb_format.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <vector>

#include "pworlds/errors.hpp"

namespace pworlds {

namespace {

std::string trim(const std::string& s) {
  std::size_t begin = 0, end = s.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
  while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
  return s.substr(begin, end - begin);
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> parts;
  std::string current;
  std::istringstream stream(s);
  while (std::getline(stream, current, ',')) {
    std::string part = trim(current);
    if (!part.empty()) parts.push_back(std::move(part));
  }
  return parts;
}

// Cursor over the tail of an assertion line (after the closing paren).
class LineScanner {
public:
  LineScanner(const std::string& text, int line) : text_(text), line_(line) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  bool try_literal(const std::string& lit) {
    skip_ws();
    if (text_.compare(pos_, lit.size(), lit) == 0) {
      pos_ += lit.size();
      return true;
    }
    return false;
  }

  void expect_literal(const std::string& lit, const std::string& what) {
    if (!try_literal(lit))
      throw ParseError("expected " + what, line_, static_cast<int>(pos_) + 1);
  }

  std::string take_word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  Rational take_rational(const std::string& what) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '/' || text_[pos_] == '.'))
      ++pos_;
    if (pos_ == start)
      throw ParseError("expected " + what, line_, static_cast<int>(pos_) + 1);
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_, static_cast<int>(start) + 1);
    }
  }

  int column() const { return static_cast<int>(pos_) + 1; }

private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_;
};

struct PendingAssertion {
  std::string target_text;
  int target_offset = 0; // column of target_text within the line
  std::optional<std::string> condition_text;
  int condition_offset = 0;
  std::string tail; // relation and everything after
  int line = 0;
  std::string display;
};

// Splits "P(<target> [| <condition>]) <tail>", respecting nested parens.
PendingAssertion split_assertion_line(const std::string& line, int line_no) {
  if (line.compare(0, 2, "P(") != 0)
    throw ParseError("expected assertion of the form P(...)", line_no, 1);
  int depth = 0;
  std::size_t close = std::string::npos;
  std::size_t separator = std::string::npos;
  for (std::size_t i = 1; i < line.size(); ++i) {
    char c = line[i];
    if (c == '(') ++depth;
    else if (c == ')') {
      --depth;
      if (depth == 0) { close = i; break; }
    } else if (c == '|' && depth == 1) {
      // '|' at sentence top level separates target from condition; a
      // top-level disjunction must be written P((a | b)).
      if (separator != std::string::npos)
        throw ParseError("more than one top-level '|' inside P(...)", line_no,
                         static_cast<int>(i) + 1);
      separator = i;
    }
  }
  if (close == std::string::npos)
    throw ParseError("unterminated P(...)", line_no, static_cast<int>(line.size()) + 1);

  PendingAssertion pending;
  pending.line = line_no;
  pending.display = trim(line);
  pending.target_offset = 2;
  if (separator == std::string::npos) {
    pending.target_text = line.substr(2, close - 2);
  } else {
    pending.target_text = line.substr(2, separator - 2);
    pending.condition_text = line.substr(separator + 1, close - separator - 1);
    pending.condition_offset = static_cast<int>(separator) + 1;
  }
  pending.tail = line.substr(close + 1);
  return pending;
}

Formula parse_sentence(const std::string& text, const Signature& sig,
                       const std::set<std::string>& ambient, int line_no,
                       int column_offset) {
  try {
    return parse_formula(text, sig, ambient);
  } catch (const ParseError& e) {
    int column = e.column() > 0 ? e.column() + column_offset : 0;
    throw ParseError(e.what(), line_no, column);
  }
}

} // namespace

KnowledgeBase parse_kb(std::istream& in) {
  KnowledgeBase kb;
  std::vector<PredicateDecl> predicates;
  std::vector<std::string> constants;
  bool saw_domain = false, saw_predicates = false, saw_epsilon = false;
  bool saw_assertion = false;
  bool signature_built = false;

  auto build_signature = [&] {
    if (!signature_built) {
      kb.signature = Signature(predicates, constants);
      signature_built = true;
    }
  };

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    auto header = [&](const char* key) -> std::optional<std::string> {
      std::size_t len = std::string(key).size();
      if (line.compare(0, len, key) == 0) return trim(line.substr(len));
      return std::nullopt;
    };

    if (auto value = header("domain:")) {
      if (saw_assertion)
        throw ParseError("domain must be declared before assertions", line_no);
      if (saw_domain) throw ParseError("duplicate domain line", line_no);
      saw_domain = true;
      for (const auto& name : split_commas(*value)) {
        if (!valid_identifier(name))
          throw ParseError("invalid constant name '" + name + "'", line_no);
        constants.push_back(name);
      }
      continue;
    }
    if (auto value = header("predicates:")) {
      if (saw_assertion)
        throw ParseError("predicates must be declared before assertions", line_no);
      if (saw_predicates) throw ParseError("duplicate predicates line", line_no);
      saw_predicates = true;
      for (const auto& item : split_commas(*value)) {
        auto slash = item.find('/');
        if (slash == std::string::npos)
          throw ParseError("predicate '" + item + "' needs an arity, e.g. Bird/1",
                           line_no);
        std::string name = trim(item.substr(0, slash));
        std::string arity_text = trim(item.substr(slash + 1));
        if (!valid_identifier(name))
          throw ParseError("invalid predicate name '" + name + "'", line_no);
        unsigned arity = 0;
        for (char c : arity_text) {
          if (!std::isdigit(static_cast<unsigned char>(c)))
            throw ParseError("invalid arity '" + arity_text + "'", line_no);
          arity = arity * 10 + static_cast<unsigned>(c - '0');
        }
        predicates.push_back(PredicateDecl{name, arity});
      }
      continue;
    }
    if (auto value = header("epsilon:")) {
      if (saw_epsilon) throw ParseError("duplicate epsilon line", line_no);
      saw_epsilon = true;
      Rational eps;
      try {
        eps = parse_rational(*value);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no);
      }
      if (!(eps > 0 && eps < 1))
        throw ParseError("epsilon must lie strictly between 0 and 1", line_no);
      kb.epsilon = eps;
      continue;
    }

    // Assertion line.
    saw_assertion = true;
    try {
      build_signature();
    } catch (const InvariantError& e) {
      throw ParseError(e.what(), line_no);
    }

    PendingAssertion pending = split_assertion_line(line, line_no);
    LineScanner scanner(pending.tail, line_no);

    enum class Rel { Point, Interval, CondGe, CondLe, CondEq, ApproxOne };
    Rel rel;
    Rational value, lo, hi;
    if (scanner.try_literal(">=")) {
      rel = pending.condition_text ? Rel::CondGe : Rel::Interval;
      value = scanner.take_rational("bound");
      if (!pending.condition_text) { lo = value; hi = 1; }
    } else if (scanner.try_literal("<=")) {
      rel = pending.condition_text ? Rel::CondLe : Rel::Interval;
      value = scanner.take_rational("bound");
      if (!pending.condition_text) { lo = 0; hi = value; }
    } else if (scanner.try_literal("~=")) {
      Rational one = scanner.take_rational("value (only '~= 1' is supported)");
      if (one != 1)
        throw ParseError("the '~=' shorthand only supports '~= 1'", line_no,
                         scanner.column());
      if (!saw_epsilon)
        throw ParseError("'~=' requires an epsilon: line earlier in the file",
                         line_no);
      rel = Rel::ApproxOne;
    } else if (scanner.try_literal("=")) {
      value = scanner.take_rational("probability");
      rel = pending.condition_text ? Rel::CondEq : Rel::Point;
    } else if (scanner.try_literal("in")) {
      if (pending.condition_text)
        throw ParseError("interval bounds are not supported for conditionals",
                         line_no);
      scanner.expect_literal("[", "'['");
      lo = scanner.take_rational("lower bound");
      scanner.expect_literal(",", "','");
      hi = scanner.take_rational("upper bound");
      scanner.expect_literal("]", "']'");
      rel = Rel::Interval;
    } else {
      throw ParseError("expected one of '=', '>=', '<=', 'in', '~=' after P(...)",
                       line_no, scanner.column());
    }

    // Optional schema suffix.
    std::optional<std::string> schema_var;
    if (!scanner.at_end()) {
      std::string word = scanner.take_word();
      if (word != "for")
        throw ParseError("unexpected trailing text (expected 'for all <var>')",
                         line_no, scanner.column());
      if (scanner.take_word() != "all")
        throw ParseError("expected 'all' after 'for'", line_no, scanner.column());
      std::string var = scanner.take_word();
      if (!valid_identifier(var))
        throw ParseError("expected a variable after 'for all'", line_no,
                         scanner.column());
      if (!scanner.at_end())
        throw ParseError("unexpected trailing text after schema variable", line_no,
                         scanner.column());
      schema_var = var;
    }

    std::set<std::string> ambient;
    if (schema_var) ambient.insert(*schema_var);

    Formula target = parse_sentence(pending.target_text, kb.signature, ambient,
                                    line_no, pending.target_offset);
    std::optional<Formula> condition;
    if (pending.condition_text)
      condition = parse_sentence(*pending.condition_text, kb.signature, ambient,
                                 line_no, pending.condition_offset);

    ProbabilityAssertion assertion = [&] {
      switch (rel) {
        case Rel::Point:
          return ProbabilityAssertion::point(target, value);
        case Rel::Interval:
          return ProbabilityAssertion::interval(target, lo, hi);
        case Rel::CondGe:
          return ProbabilityAssertion::conditional(target, *condition,
                                                   Relation::GreaterEq, value);
        case Rel::CondLe:
          return ProbabilityAssertion::conditional(target, *condition,
                                                   Relation::LessEq, value);
        case Rel::CondEq:
          return ProbabilityAssertion::conditional(target, *condition,
                                                   Relation::Equal, value);
        case Rel::ApproxOne:
          if (condition)
            return ProbabilityAssertion::conditional(target, *condition,
                                                     Relation::GreaterEq,
                                                     Rational(1) - kb.epsilon);
          return ProbabilityAssertion::interval(target, Rational(1) - kb.epsilon,
                                                Rational(1));
      }
      throw ParseError("unreachable", line_no);
    }();

    if (schema_var) {
      std::set<std::string> free = free_variables(target);
      if (condition)
        for (const auto& v : free_variables(*condition)) free.insert(v);
      if (free != std::set<std::string>{*schema_var})
        throw ParseError("schema must use exactly its declared variable '" +
                             *schema_var + "'",
                         line_no);
      assertion = assertion.as_schema(*schema_var);
    }

    assertion.source_line = line_no;
    assertion.display = pending.display;
    kb.assertions.push_back(std::move(assertion));
  }

  try {
    build_signature(); // header-only files still need a signature
  } catch (const InvariantError& e) {
    throw ParseError(e.what(), line_no);
  }
  return kb;
}

KnowledgeBase load_kb(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open knowledge base file '" + path + "'");
  return parse_kb(in);
}

Distribution parse_distribution(std::istream& in, const WorldSpace& ws) {
  std::vector<std::pair<std::uint64_t, Rational>> sparse;
  std::vector<std::pair<Formula, Rational>> atoms;
  bool saw_sparse = false, saw_atoms = false;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;

    if (line.compare(0, 2, "w ") == 0) {
      if (saw_atoms)
        throw ParseError("cannot mix 'w' lines with P(...) lines", line_no);
      saw_sparse = true;
      std::istringstream fields(line.substr(2));
      std::string index_text, weight_text, extra;
      if (!(fields >> index_text >> weight_text) || (fields >> extra))
        throw ParseError("expected 'w <world-index> <rational>'", line_no);
      std::uint64_t index = 0;
      for (char c : index_text) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
          throw ParseError("invalid world index '" + index_text + "'", line_no);
        index = index * 10 + static_cast<std::uint64_t>(c - '0');
      }
      Rational weight;
      try {
        weight = parse_rational(weight_text);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line_no);
      }
      sparse.emplace_back(index, std::move(weight));
      continue;
    }

    if (line.compare(0, 2, "P(") == 0) {
      if (saw_sparse)
        throw ParseError("cannot mix 'w' lines with P(...) lines", line_no);
      saw_atoms = true;
      PendingAssertion pending = split_assertion_line(line, line_no);
      if (pending.condition_text)
        throw ParseError("distribution entries cannot be conditional", line_no);
      LineScanner scanner(pending.tail, line_no);
      scanner.expect_literal("=", "'='");
      Rational weight = scanner.take_rational("probability");
      if (!scanner.at_end())
        throw ParseError("unexpected trailing text", line_no, scanner.column());
      Formula sentence = parse_sentence(pending.target_text, ws.signature(), {},
                                        line_no, pending.target_offset);
      atoms.emplace_back(std::move(sentence), std::move(weight));
      continue;
    }

    throw ParseError("expected 'w <index> <rational>' or 'P(<atoms>) = <rational>'",
                     line_no);
  }

  // Grammar-level problems were reported above; violations of the
  // distribution invariants (sum, range, coverage) propagate as
  // InvariantError from here.
  if (saw_atoms) return from_atom_probs(atoms, ws);
  return Distribution::from_weights(ws, std::move(sparse));
}

Distribution load_distribution(const std::string& path, const WorldSpace& ws) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open distribution file '" + path + "'");
  return parse_distribution(in, ws);
}

} // namespace pworlds
