#ifndef OAX_RATIONAL_HPP
#define OAX_RATIONAL_HPP

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include <oax/errors.hpp>

namespace oax {

// Exact arbitrary-precision arithmetic. cpp_rational keeps values in lowest
// terms with a positive denominator, so the Rational invariants hold by
// construction; nothing in the library ever rounds.
using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rational& r) { return numerator(r); }
inline Int rat_den(const Rational& r) { return denominator(r); }

// p/q for any nonzero q (the component constructor requires q > 0)
inline Rational make_rational(const Int& num, const Int& den) {
  if (den == 0) throw InvariantError("zero denominator");
  return den < 0 ? Rational(-num, -den) : Rational(num, den);
}

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

// "p" or "p/q", q > 0.
inline std::string rational_to_string(const Rational& r) {
  std::string s = rat_num(r).str();
  if (!is_integer(r)) {
    s += '/';
    s += rat_den(r).str();
  }
  return s;
}

// Accepts an optional leading '-', then digits, then an optional "/digits".
// Used for file-level tokens (metric entries, seeds); expression text goes
// through the polynomial parser instead.
inline Rational rational_from_string(std::string_view s) {
  if (s.empty()) throw ParseError(0, "empty rational token");
  std::size_t pos = 0;
  bool neg = false;
  if (s[pos] == '-') {
    neg = true;
    ++pos;
  }
  auto read_digits = [&](std::size_t at) {
    std::size_t start = at;
    while (at < s.size() && s[at] >= '0' && s[at] <= '9') ++at;
    if (at == start) throw ParseError(start, "expected digits in rational token");
    return at;
  };
  std::size_t num_end = read_digits(pos);
  Int num(std::string(s.substr(pos, num_end - pos)));
  Int den = 1;
  pos = num_end;
  if (pos < s.size() && s[pos] == '/') {
    std::size_t den_end = read_digits(pos + 1);
    den = Int(std::string(s.substr(pos + 1, den_end - pos - 1)));
    pos = den_end;
  }
  if (pos != s.size()) throw ParseError(pos, "trailing characters in rational token");
  if (den == 0) throw ParseError(0, "zero denominator");
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

}  // namespace oax

#endif
