#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "cfe/formula/formula.hpp"
#include "cfe/formula/set_formula.hpp"
#include "cfe/polyring/parse.hpp"

namespace cfe {

struct FormulaParseOptions {
  /// When set, atoms may only use these variables.
  std::optional<std::set<std::string>> allowed_variables;
  /// Named formulas that may be referenced by name.
  std::map<std::string, Formula> bindings;
};

/// Grammar:
///
///   formula := ['+'|'-'] term (('+'|'-') term)*
///   term    := factor ('*' factor)*
///   factor  := scalar '*' factor | scalar | atom | catom | '(' formula ')'
///            | 'H{' upoly '}' '(' formula ')' | binding-name
///   atom    := '[' poly rel poly ']'        rel: = < > and the sugar <= >= !=
///   catom   := 'C[' poly ('=' | '!=') '0' ']'
///   scalar  := number ['T' ['^' k]] | 'T' ['^' k] | '(' tpoly ')'
///
/// `T` (or `t`) is the value-algebra variable and `u` the variable of the
/// post-composed polynomial. The sugar atoms expand into sums of basic atoms,
/// `a - b` into `a + (-1)*b`, and a bare scalar c into `c*[0 = 0]`.
/// Complex atoms take variables z, z1, z2, ...; z_k stands for x_k + i*y_k
/// and `C[p = 0]` becomes `[Re(p)^2 + Im(p)^2 = 0]` (`!=` becomes `> 0`).
Formula parse_formula(std::string_view text, const FormulaParseOptions& options = {});
Formula parse_formula(Cursor& in, const FormulaParseOptions& options);

/// Set formulas:  expr := and ('|' and)* ; and := unary ('&' unary)* ;
/// unary := '!' unary | '(' expr ')' | poly rel poly, rel in = != < <= > >=.
SetFormula parse_set_formula(std::string_view text);

struct Binding {
  std::string name;
  Formula formula;
  int line = 0;
};

/// `.cf` text: one `name = formula` per line, `#` starts a comment, later
/// lines may refer to earlier names. Errors report the line in the file.
std::vector<Binding> parse_cf(std::string_view text);
std::vector<Binding> load_cf_file(const std::string& path);

/// The binding named `main` if present, else the last one. Throws
/// DomainError for an empty list.
const Binding& primary_binding(const std::vector<Binding>& bindings);

}  // namespace cfe
