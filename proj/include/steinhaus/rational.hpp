#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace steinhaus {

using Integer = mpz_class;
using Rational = mpq_class;

// Parses "p", "-p" or "p/q" into a canonical rational (gcd-reduced,
// denominator > 0). Throws ParseError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

bool is_integer(const Rational& value);

// Nearest integer; ties round toward +infinity. Deterministic.
Integer round_nearest(const Rational& value);

// Fixed-point decimal expansion with `fraction_digits` digits after the
// point, truncated toward zero. Deterministic; used for CSV/SVG output.
std::string decimal_string(const Rational& value, int fraction_digits);

}  // namespace steinhaus
