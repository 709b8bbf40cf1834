#include "pworlds/rational.hpp"

#include <cctype>
#include <cstddef>

#include "pworlds/errors.hpp"

namespace pworlds {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
  std::string s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw ParseError("empty rational literal");

  Rational value;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw ParseError("malformed rational literal '" + text + "'");
    value = Rational(mpz_class(num), mpz_class(den));
    if (value.get_den() == 0)
      throw ParseError("zero denominator in '" + text + "'");
    value.canonicalize();
  } else if (dot != std::string::npos) {
    std::string whole = s.substr(0, dot);
    std::string frac = s.substr(dot + 1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || (!frac.empty() && !all_digits(frac)))
      throw ParseError("malformed decimal literal '" + text + "'");
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    mpz_class numerator = mpz_class(whole) * scale;
    if (!frac.empty()) numerator += mpz_class(frac);
    value = Rational(numerator, scale);
    value.canonicalize();
  } else {
    if (!all_digits(s))
      throw ParseError("malformed rational literal '" + text + "'");
    value = Rational(mpz_class(s));
  }
  if (negative) value = -value;
  return value;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_str();
}

namespace {

// A rational has a finite decimal expansion iff its reduced denominator is
// of the form 2^a * 5^b.
bool finite_decimal(const mpz_class& den, unsigned& digits) {
  mpz_class d = den;
  unsigned twos = 0, fives = 0;
  while (d % 2 == 0) { d /= 2; ++twos; }
  while (d % 5 == 0) { d /= 5; ++fives; }
  digits = twos > fives ? twos : fives;
  return d == 1;
}

std::string decimal_digits(const Rational& q, unsigned digits) {
  mpz_class scale = 1;
  for (unsigned i = 0; i < digits; ++i) scale *= 10;
  mpz_class scaled = q.get_num() * scale / q.get_den();
  bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string s = scaled.get_str();
  if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
  s.insert(s.size() - digits, ".");
  return (neg ? "-" : "") + s;
}

} // namespace

std::string to_string_with_decimal(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  unsigned digits = 0;
  if (finite_decimal(q.get_den(), digits))
    return to_string(q) + " (= " + decimal_digits(q, digits) + ")";
  return to_string(q) + " (~ " + decimal_digits(q, 10) + ")";
}

} // namespace pworlds
