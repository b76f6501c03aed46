#pragma once

#include <set>
#include <string>
#include <string_view>

#include "cfe/polyring/multipoly.hpp"

namespace cfe {

/// Position-tracking reader over UTF-8 text. Errors carry 1-based line and
/// column of the current position.
class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  bool eof() const { return pos_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0'; }
  char get() { return eof() ? '\0' : text_[pos_++]; }
  void skip_ws();
  /// Skips whitespace, then consumes `token` if it is next.
  bool consume(std::string_view token);
  void expect(std::string_view token);
  std::size_t pos() const { return pos_; }
  void reset(std::size_t pos) { pos_ = pos; }
  std::string_view rest() const { return text_.substr(pos_); }
  std::string_view text() const { return text_; }

  int line() const;
  int column() const;
  [[noreturn]] void fail(const std::string& message) const;
  [[noreturn]] void fail_at(std::size_t pos, const std::string& message) const;

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

struct PolyParseOptions {
  /// Identifiers that may not be used as polynomial variables.
  std::set<std::string> reserved{"t", "T", "u"};
};

/// Reads a polynomial expression starting at the cursor, stopping before the
/// first character that cannot continue it. The result records the program
/// of the expression as written.
///
///   poly   := ['+'|'-'] term (('+'|'-') term)*
///   term   := power (('*' | '/' number | juxtaposition) power)*
///   power  := atom ['^' digits]
///   atom   := number | identifier | '(' poly ')'
///
/// Juxtaposition is accepted after a number (`2x1`, `3(x+1)`).
MultiPoly parse_poly(Cursor& in, const PolyParseOptions& options = {});

/// Parses a whole string; trailing input is an error.
MultiPoly parse_poly(std::string_view text, const PolyParseOptions& options = {});

/// Reads an unsigned number literal (`12`, `3/4`, `1.5`) at the cursor.
Rational parse_number(Cursor& in);

/// Reads an identifier `[A-Za-z_][A-Za-z0-9_]*` at the cursor.
std::string parse_identifier(Cursor& in);

}  // namespace cfe
