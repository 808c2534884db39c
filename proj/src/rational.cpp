#include "steinhaus/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view rest = text;
  std::size_t offset = 0;
  if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
    rest.remove_prefix(1);
    offset = 1;
  }
  const std::size_t slash = rest.find('/');
  const std::string_view num =
      slash == std::string_view::npos ? rest : rest.substr(0, slash);
  if (!all_digits(num)) {
    throw ParseError("expected rational number", offset);
  }
  if (slash != std::string_view::npos) {
    const std::string_view den = rest.substr(slash + 1);
    if (!all_digits(den)) {
      throw ParseError("expected denominator digits", offset + slash + 1);
    }
    if (den.find_first_not_of('0') == std::string_view::npos) {
      throw ParseError("zero denominator", offset + slash + 1);
    }
  }
  Rational value(std::string(text.begin(), text.end()));
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_string(const Integer& value) { return value.get_str(); }

bool is_integer(const Rational& value) {
  return value.get_den() == 1;
}

Integer round_nearest(const Rational& value) {
  const Integer num = value.get_num();
  const Integer den = value.get_den();
  const Integer twice = 2 * num + den;
  const Integer twice_den = 2 * den;
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), twice.get_mpz_t(), twice_den.get_mpz_t());
  return out;
}

std::string decimal_string(const Rational& value, int fraction_digits) {
  const bool negative = sgn(value) < 0;
  Rational mag = abs(value);
  Integer whole = mag.get_num() / mag.get_den();
  Rational frac = mag - Rational(whole);
  std::string out = negative ? "-" : "";
  out += whole.get_str();
  if (fraction_digits <= 0) return out;
  out += '.';
  for (int i = 0; i < fraction_digits; ++i) {
    frac *= 10;
    Integer digit = frac.get_num() / frac.get_den();
    out += static_cast<char>('0' + digit.get_si());
    frac -= Rational(digit);
  }
  return out;
}

}  // namespace steinhaus
