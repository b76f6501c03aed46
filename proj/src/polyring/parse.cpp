#include "cfe/polyring/parse.hpp"

#include <cctype>

#include "cfe/error.hpp"

namespace cfe {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

MultiPoly parse_sum(Cursor& in, const PolyParseOptions& opt);

MultiPoly parse_atom(Cursor& in, const PolyParseOptions& opt) {
  in.skip_ws();
  char c = in.peek();
  if (c == '(') {
    in.get();
    MultiPoly p = parse_sum(in, opt);
    in.expect(")");
    return p;
  }
  if (is_digit(c) || (c == '.' && is_digit(in.peek(1)))) return MultiPoly(parse_number(in));
  if (is_ident_start(c)) {
    std::size_t start = in.pos();
    std::string name = parse_identifier(in);
    if (opt.reserved.count(name)) in.fail_at(start, "'" + name + "' is reserved and cannot be a polynomial variable");
    return MultiPoly::variable(name);
  }
  if (in.eof()) in.fail("unexpected end of input, expected a polynomial");
  in.fail(std::string("unexpected character '") + c + "' in polynomial");
}

MultiPoly parse_power(Cursor& in, const PolyParseOptions& opt) {
  MultiPoly base = parse_atom(in, opt);
  if (in.consume("^")) {
    in.skip_ws();
    if (!is_digit(in.peek())) in.fail("expected a nonnegative integer exponent");
    std::size_t start = in.pos();
    unsigned long e = 0;
    while (is_digit(in.peek())) {
      e = e * 10 + static_cast<unsigned long>(in.get() - '0');
      if (e > 1000) in.fail_at(start, "exponent too large");
    }
    base = base.pow(static_cast<unsigned>(e));
  }
  return base;
}

MultiPoly parse_term(Cursor& in, const PolyParseOptions& opt) {
  in.skip_ws();
  bool number_first = is_digit(in.peek()) || in.peek() == '.';
  MultiPoly acc = parse_power(in, opt);
  for (;;) {
    std::size_t save = in.pos();
    in.skip_ws();
    if (in.peek() == '*') {
      in.get();
      acc = acc * parse_power(in, opt);
      number_first = false;
    } else if (in.peek() == '/') {
      in.get();
      in.skip_ws();
      if (!is_digit(in.peek())) in.fail("only division by a number is allowed");
      Rational d = parse_number(in);
      if (sgn(d) == 0) in.fail("division by zero");
      acc = acc * MultiPoly(inverse(d));
    } else if (number_first && in.pos() == save && (is_ident_start(in.peek()) || in.peek() == '(')) {
      // Juxtaposition directly after a number literal, e.g. 2x1.
      acc = acc * parse_power(in, opt);
      number_first = false;
    } else {
      in.reset(save);
      return acc;
    }
  }
}

MultiPoly parse_sum(Cursor& in, const PolyParseOptions& opt) {
  in.skip_ws();
  bool negate = false;
  if (in.peek() == '-' || in.peek() == '+') negate = in.get() == '-';
  MultiPoly acc = parse_term(in, opt);
  if (negate) acc = -acc;
  for (;;) {
    std::size_t save = in.pos();
    in.skip_ws();
    char c = in.peek();
    if (c != '+' && c != '-') {
      in.reset(save);
      return acc;
    }
    in.get();
    MultiPoly rhs = parse_term(in, opt);
    acc = c == '+' ? acc + rhs : acc - rhs;
  }
}

}  // namespace

void Cursor::skip_ws() {
  while (!eof() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
}

bool Cursor::consume(std::string_view token) {
  skip_ws();
  if (text_.substr(pos_, token.size()) == token) {
    pos_ += token.size();
    return true;
  }
  return false;
}

void Cursor::expect(std::string_view token) {
  if (!consume(token)) {
    if (eof()) fail("unexpected end of input, expected '" + std::string(token) + "'");
    fail("expected '" + std::string(token) + "'");
  }
}

int Cursor::line() const {
  int l = 1;
  for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i)
    if (text_[i] == '\n') ++l;
  return l;
}

int Cursor::column() const {
  std::size_t line_start = 0;
  for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i)
    if (text_[i] == '\n') line_start = i + 1;
  return static_cast<int>(pos_ - line_start) + 1;
}

void Cursor::fail(const std::string& message) const { throw ParseError(message, line(), column()); }

void Cursor::fail_at(std::size_t pos, const std::string& message) const {
  Cursor c(text_);
  c.pos_ = pos;
  c.fail(message);
}

Rational parse_number(Cursor& in) {
  in.skip_ws();
  std::size_t start = in.pos();
  std::string digits;
  while (is_digit(in.peek())) digits += in.get();
  if (in.peek() == '.' && is_digit(in.peek(1))) {
    digits += in.get();
    while (is_digit(in.peek())) digits += in.get();
  } else if (in.peek() == '/' && is_digit(in.peek(1)) && digits.find('.') == std::string::npos) {
    digits += in.get();
    while (is_digit(in.peek())) digits += in.get();
  }
  if (digits.empty()) in.fail("expected a number");
  try {
    return parse_rational(digits);
  } catch (const DomainError& e) {
    in.fail_at(start, e.what());
  }
}

std::string parse_identifier(Cursor& in) {
  in.skip_ws();
  if (!is_ident_start(in.peek())) in.fail("expected an identifier");
  std::string name;
  while (is_ident_char(in.peek())) name += in.get();
  return name;
}

MultiPoly parse_poly(Cursor& in, const PolyParseOptions& options) { return parse_sum(in, options); }

MultiPoly parse_poly(std::string_view text, const PolyParseOptions& options) {
  Cursor in(text);
  MultiPoly p = parse_poly(in, options);
  in.skip_ws();
  if (!in.eof()) in.fail(std::string("unexpected '") + in.peek() + "' after polynomial");
  return p;
}

}  // namespace cfe
