#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <string>

#include "pncalc/errors.hpp"

namespace pncalc {

/// Arbitrary-precision rational scalar. All structural verdicts in this
/// library are decided with exact arithmetic over this type.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Canonical text form: "p" for integers, "p/q" otherwise (q > 0, reduced).
inline std::string to_string(const Rational& r) { return r.str(); }

inline double to_double(const Rational& r) {
  return r.template convert_to<double>();
}

/// Parses "p", "-p", "p/q" or "-p/q" with decimal digits; rejects anything
/// else (whitespace, hex, zero denominators, trailing garbage).
inline Rational parse_rational(const std::string& text) {
  std::size_t i = 0;
  auto fail = [&](const std::string& why) -> Rational {
    throw SyntaxError("bad rational '" + text + "': " + why, i);
  };
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  std::size_t digits_start = i;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
  if (i == digits_start) return fail("expected digits");
  Integer num(text.substr(0, i));
  Integer den = 1;
  if (i < text.size() && text[i] == '/') {
    ++i;
    std::size_t den_start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == den_start) return fail("expected denominator digits");
    den = Integer(text.substr(den_start, i - den_start));
    if (den == 0) return fail("zero denominator");
  }
  if (i != text.size()) return fail("trailing characters");
  return Rational(num, den);
}

}  // namespace pncalc
