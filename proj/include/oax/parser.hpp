#ifndef OAX_PARSER_HPP
#define OAX_PARSER_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <oax/chart.hpp>
#include <oax/polynomial.hpp>

namespace oax {

// Recursive-descent parser for the expression grammar
//
//   integer  ::= [0-9]+
//   rational ::= integer ('/' integer)?
//   var      ::= 'x' integer
//   atom     ::= rational | var | '(' expr ')'
//   factor   ::= atom ('^' integer)?
//   term     ::= factor (('*'|'/') factor)*
//   expr     ::= term (('+'|'-') term)*
//
// with insignificant whitespace. A '/' between factors divides by the right
// factor, which must be a nonzero constant ("x1^2*x3/2" is the two-variable
// monomial with coefficient 1/2).
namespace detail {

class ExprParser {
public:
  ExprParser(std::string_view text, const Chart& chart) : s_(text), chart_(chart) {}

  Polynomial run() {
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return p;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r' || s_[pos_] == '\n'))
      ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  bool digit_ahead() {
    skip_ws();
    return pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9';
  }

  Int integer() {
    skip_ws();
    if (!(pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9')) fail("expected integer");
    std::size_t start = pos_;
    while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
    return Int(std::string(s_.substr(start, pos_ - start)));
  }

  std::uint32_t small_integer(const char* what) {
    std::size_t at = pos_;
    Int v = integer();
    if (v > 4096) throw ParseError(at, std::string(what) + " too large");
    return static_cast<std::uint32_t>(v);
  }

  Polynomial atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (accept('(')) {
      Polynomial p = expr();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    if (s_[pos_] == 'x') {
      std::size_t at = pos_;
      ++pos_;
      if (!(pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9')) throw ParseError(at, "expected variable index after 'x'");
      Int idx = integer();
      if (idx < 1 || idx > chart_.dim())
        throw ParseError(at, "unknown variable x" + idx.str() + " in " + std::to_string(chart_.dim()) + "-dimensional chart");
      return Polynomial::variable(chart_.dim(), static_cast<int>(idx) - 1);
    }
    if (digit_ahead()) {
      Int num = integer();
      if (accept('/')) {
        std::size_t at = pos_;
        Int den = integer();
        if (den == 0) throw ParseError(at, "zero denominator");
        return Polynomial::constant(chart_.dim(), Rational(num, den));
      }
      return Polynomial::constant(chart_.dim(), Rational(num));
    }
    fail("expected rational, variable, or '('");
  }

  Polynomial factor() {
    Polynomial base = atom();
    if (accept('^')) {
      std::uint32_t e = small_integer("exponent");
      return base.pow(e);
    }
    return base;
  }

  Polynomial term() {
    Polynomial p = factor();
    for (;;) {
      if (accept('*')) {
        p = p * factor();
      } else if (peek('/')) {
        std::size_t at = pos_;
        ++pos_;
        Polynomial d = factor();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        if (d.degree() > 0) throw ParseError(at, "division by a non-constant factor");
        p = p * (Rational(1) / d.terms().begin()->second);
      } else {
        break;
      }
    }
    return p;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+')) {
        p += term();
      } else if (peek('-')) {
        ++pos_;
        p -= term();
      } else {
        break;
      }
    }
    return p;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  const Chart& chart_;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const Chart& chart) {
  return detail::ExprParser(text, chart).run();
}

}  // namespace oax

#endif
