#include "steinhaus/parse.hpp"

#include <algorithm>
#include <cctype>

#include "steinhaus/errors.hpp"

namespace steinhaus {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  std::size_t pos() const { return pos_; }
  bool done() const { return pos_ >= text_.size(); }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  char take() {
    if (done()) throw ParseError("unexpected end of input", pos_);
    return text_[pos_++];
  }

  void expect(char c) {
    if (peek() != c) {
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  // Longest run matching rational syntax: sign, digits, optional /digits.
  std::string_view take_rational_token() {
    const std::size_t start = pos_;
    if (peek() == '+' || peek() == '-') ++pos_;
    while (!done() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (peek() == '/') {
      ++pos_;
      while (!done() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      }
    }
    return text_.substr(start, pos_ - start);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Rational parse_rational_at(Cursor& cursor) {
  const std::size_t start = cursor.pos();
  const std::string_view token = cursor.take_rational_token();
  if (token.empty()) throw ParseError("expected a number", start);
  try {
    return parse_rational(token);
  } catch (const ParseError& e) {
    throw ParseError("malformed rational", start + e.position());
  }
}

ExactPoint parse_endpoint(Cursor& cursor) {
  cursor.skip_ws();
  if (cursor.peek() == 'g') {
    cursor.take();
    cursor.expect(':');
    cursor.expect('{');
    GroupElement g;
    cursor.skip_ws();
    if (cursor.peek() != '}') {
      while (true) {
        cursor.skip_ws();
        const std::size_t index_pos = cursor.pos();
        const Rational index = parse_rational_at(cursor);
        if (!is_integer(index) || sgn(index) < 0) {
          throw ParseError("basis index must be a nonnegative integer",
                           index_pos);
        }
        cursor.skip_ws();
        cursor.expect(':');
        cursor.skip_ws();
        const std::size_t coeff_pos = cursor.pos();
        const Rational coeff = parse_rational_at(cursor);
        if (!is_integer(coeff)) {
          throw ParseError("coefficient must be an integer", coeff_pos);
        }
        const unsigned long index_ul = index.get_num().get_ui();
        g.set_coeff(static_cast<unsigned>(index_ul),
                    g.coeff(static_cast<unsigned>(index_ul)) +
                        Integer(coeff.get_num()));
        cursor.skip_ws();
        if (cursor.peek() == ',') {
          cursor.take();
          continue;
        }
        break;
      }
    }
    cursor.expect('}');
    return point_from(std::move(g));
  }
  return point_from(parse_rational_at(cursor));
}

}  // namespace

RealInterval parse_interval(std::string_view text, BasisSpec& basis) {
  Cursor cursor(text);
  cursor.skip_ws();
  bool lo_closed;
  switch (cursor.peek()) {
    case '[': lo_closed = true; break;
    case '(': lo_closed = false; break;
    default: throw ParseError("expected '[' or '('", cursor.pos());
  }
  cursor.take();
  ExactPoint lo = parse_endpoint(cursor);
  cursor.skip_ws();
  cursor.expect(',');
  ExactPoint hi = parse_endpoint(cursor);
  cursor.skip_ws();
  bool hi_closed;
  switch (cursor.peek()) {
    case ']': hi_closed = true; break;
    case ')': hi_closed = false; break;
    default: throw ParseError("expected ']' or ')'", cursor.pos());
  }
  cursor.take();
  cursor.skip_ws();
  if (!cursor.done()) {
    throw ParseError("trailing characters after interval", cursor.pos());
  }
  basis.extend(std::max(lo.group_part.max_index(), hi.group_part.max_index()));
  if (cmp_exact(lo, hi, basis) != std::strong_ordering::less) {
    throw ParseError("interval endpoints must satisfy lo < hi", 0);
  }
  return RealInterval{std::move(lo), std::move(hi), lo_closed, hi_closed};
}

}  // namespace steinhaus
