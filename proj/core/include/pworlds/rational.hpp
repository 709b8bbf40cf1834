#ifndef PWORLDS_RATIONAL_HPP
#define PWORLDS_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace pworlds {

// All probabilities and LP coefficients are exact arbitrary-precision
// rationals.  No floating point enters the core.
using Rational = mpq_class;

// Parses "p/q", "p", or a decimal literal ("0.9" -> 9/10, exactly).
// Accepts an optional leading '-'.  Throws ParseError on anything else.
Rational parse_rational(const std::string& text);

// Canonical form: "p/q" in lowest terms, "p" when the denominator is 1.
std::string to_string(const Rational& q);

// "4/5 (= 0.8)" when the value has a finite decimal expansion and is not an
// integer, "1/3 (~ 0.3333333333)" otherwise.  Integers print bare.
std::string to_string_with_decimal(const Rational& q);

inline bool is_probability(const Rational& q) { return q >= 0 && q <= 1; }

// mpq_class(num, den) does not reduce; this does.  Use it whenever the
// fraction is not known to be in lowest terms already.
inline Rational ratio(long numerator, long denominator) {
  Rational q(numerator, denominator);
  q.canonicalize();
  return q;
}

} // namespace pworlds

#endif // PWORLDS_RATIONAL_HPP
