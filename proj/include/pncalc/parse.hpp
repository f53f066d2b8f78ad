#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "pncalc/chart.hpp"
#include "pncalc/errors.hpp"
#include "pncalc/poly.hpp"

namespace pncalc {

/// Recursive-descent scanner for the polynomial expression grammar
///
///   expr     := term (("+" | "-") term)*
///   term     := factor ("*" factor)*
///   factor   := base ("^" uint)?
///   base     := rational | ident | "(" expr ")" | "-" base
///   rational := uint ("/" uint)?
///
/// Whitespace may appear between any two tokens. Note that a unary minus is
/// part of `base`, so it binds tighter than "^": "-x1^2" denotes (-x1)^2.
class ExprParser {
public:
  ExprParser(std::string_view text, Chart chart)
      : text_(text), chart_(std::move(chart)) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw SyntaxError("unexpected trailing input", pos_);
    return p;
  }

private:
  Poly expr() {
    Poly acc = term();
    for (;;) {
      skip_ws();
      if (accept('+'))
        acc += term();
      else if (accept('-'))
        acc -= term();
      else
        return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    for (;;) {
      skip_ws();
      if (accept('*'))
        acc *= factor();
      else
        return acc;
    }
  }

  Poly factor() {
    Poly b = base();
    skip_ws();
    if (accept('^')) return b.pow(parse_uint("exponent"));
    return b;
  }

  Poly base() {
    skip_ws();
    if (pos_ >= text_.size())
      throw SyntaxError("unexpected end of expression", pos_);
    char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return -base();
    }
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      skip_ws();
      if (!accept(')')) throw SyntaxError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return rational_base();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
              text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto idx = chart_.index(name);
      if (!idx) throw UnknownVariable(name);
      return Poly::variable(chart_, *idx);
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
  }

  Poly rational_base() {
    Integer num(read_digits("numerator"));
    skip_ws();
    if (accept('/')) {
      std::size_t den_pos = pos_;
      skip_ws();
      Integer den(read_digits("denominator"));
      if (den == 0) throw SyntaxError("zero denominator", den_pos);
      return Poly::constant(chart_, Rational(num, den));
    }
    return Poly::constant(chart_, Rational(num));
  }

  unsigned parse_uint(const char* what) {
    skip_ws();
    std::size_t start = pos_;
    std::string digits = read_digits(what);
    unsigned long long v = 0;
    for (char d : digits) {
      v = v * 10 + static_cast<unsigned long long>(d - '0');
      if (v > 4096)
        throw SyntaxError(std::string(what) + " too large", start);
    }
    return static_cast<unsigned>(v);
  }

  std::string read_digits(const char* what) {
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start)
      throw SyntaxError(std::string("expected ") + what, start);
    return std::string(text_.substr(start, pos_ - start));
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string_view text_;
  Chart chart_;
  std::size_t pos_ = 0;
};

/// Parses `text` as a polynomial over `chart`.
inline Poly parse_poly(std::string_view text, const Chart& chart) {
  return ExprParser(text, chart).parse();
}

}  // namespace pncalc
