#ifndef PWORLDS_ERRORS_HPP
#define PWORLDS_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pworlds {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed textual input: formulas, knowledge-base files, distribution
// files.  Carries a position so front ends can report file:line.
class ParseError : public Error {
public:
  ParseError(std::string msg, int line = 0, int column = 0)
      : Error(line > 0 ? "line " + std::to_string(line) +
                             (column > 0 ? ":" + std::to_string(column) : "") +
                             ": " + msg
                       : msg),
        line_(line), column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

// A structural invariant was violated: arity mismatch, weights that do not
// sum to one, a quantified formula where a ground one is required, ...
class InvariantError : public Error {
public:
  using Error::Error;
};

// The ground signature needs more atoms than the configured world-space cap
// allows.
class CapExceededError : public Error {
public:
  CapExceededError(std::size_t atoms, std::size_t cap)
      : Error("world space too large: " + std::to_string(atoms) +
              " ground atoms (2^" + std::to_string(atoms) +
              " worlds) exceeds cap of " + std::to_string(cap)),
        atoms_(atoms), cap_(cap) {}

  std::size_t atoms() const { return atoms_; }
  std::size_t cap() const { return cap_; }

private:
  std::size_t atoms_;
  std::size_t cap_;
};

// Raised by queries that require a consistent knowledge base.  The note
// names the clashing assertions by source line where available.
class InconsistentKbError : public Error {
public:
  explicit InconsistentKbError(std::string note)
      : Error("inconsistent knowledge base: " + note), note_(std::move(note)) {}

  const std::string& note() const { return note_; }

private:
  std::string note_;
};

} // namespace pworlds

#endif // PWORLDS_ERRORS_HPP
