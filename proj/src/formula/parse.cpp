#include "cfe/formula/parse.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cfe/error.hpp"

namespace cfe {

namespace {

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

bool is_value_var(const std::string& v) { return v == "T" || v == "t"; }

// Polynomial in T (or t) only, as a value.
Value value_from_poly(const MultiPoly& p, Cursor& in, std::size_t start) {
  std::vector<Rational> c;
  for (const auto& [e, q] : p.terms()) {
    std::size_t deg = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!is_value_var((*p.vars())[i])) in.fail_at(start, "unknown variable '" + (*p.vars())[i] + "' in a scalar");
      deg += e[i];
    }
    if (c.size() <= deg) c.resize(deg + 1, Rational(0));
    c[deg] += q;
  }
  return Value(QPoly(std::move(c)));
}

ValuePoly value_poly_from(const MultiPoly& p, Cursor& in, std::size_t start) {
  std::vector<std::vector<Rational>> c;
  for (const auto& [e, q] : p.terms()) {
    std::size_t du = 0, dt = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      const std::string& v = (*p.vars())[i];
      if (v == "u") du += e[i];
      else if (is_value_var(v)) dt += e[i];
      else in.fail_at(start, "unknown variable '" + v + "' in H{...}; use u and T");
    }
    if (c.size() <= du) c.resize(du + 1);
    if (c[du].size() <= dt) c[du].resize(dt + 1, Rational(0));
    c[du][dt] += q;
  }
  std::vector<Value> coeffs;
  for (auto& row : c) coeffs.emplace_back(QPoly(std::move(row)));
  return ValuePoly(std::move(coeffs));
}

// Complex polynomial with variables z, z1, ... to the pair (Re, Im) over
// x, x1, ... and y, y1, ...; evaluated along the recorded program.
MultiPoly complex_modulus_squared(const MultiPoly& p, Cursor& in, std::size_t start) {
  for (const auto& v : *p.vars()) {
    bool ok = !v.empty() && v[0] == 'z';
    for (std::size_t i = 1; i < v.size(); ++i) ok = ok && digit(v[i]);
    if (!ok) in.fail_at(start, "complex atoms use variables z, z1, z2, ...; got '" + v + "'");
  }
  using Pair = std::pair<MultiPoly, MultiPoly>;
  SlpPtr prog = p.program() ? p.program() : naive_program(p);
  Pair z = slp_fold<Pair>(
      prog,
      [](const SlpNode& n) -> Pair {
        if (n.op == SlpNode::Op::Const) return {MultiPoly(n.value), MultiPoly(Rational(0))};
        std::string suffix = n.var.substr(1);
        return {MultiPoly::variable("x" + suffix), MultiPoly::variable("y" + suffix)};
      },
      [](SlpNode::Op op, const Pair& a, const Pair& b) -> Pair {
        switch (op) {
          case SlpNode::Op::Add: return {a.first + b.first, a.second + b.second};
          case SlpNode::Op::Sub: return {a.first - b.first, a.second - b.second};
          default: return {a.first * b.first - a.second * b.second, a.first * b.second + a.second * b.first};
        }
      });
  return z.first * z.first + z.second * z.second;
}

class FormulaParser {
 public:
  FormulaParser(Cursor& in, const FormulaParseOptions& opt) : in_(in), opt_(opt) {}

  Formula formula() {
    in_.skip_ws();
    bool negate = false;
    if (in_.peek() == '-' || in_.peek() == '+') negate = in_.get() == '-';
    Formula acc = term();
    if (negate) acc = make_scalar_mul(Value(-1), acc);
    for (;;) {
      in_.skip_ws();
      char c = in_.peek();
      if (c != '+' && c != '-') return acc;
      in_.get();
      Formula rhs = term();
      acc = make_sum(acc, c == '+' ? rhs : make_scalar_mul(Value(-1), rhs));
    }
  }

 private:
  Formula term() {
    Formula acc = factor();
    while (in_.consume("*")) acc = make_product(acc, factor());
    return acc;
  }

  // A scalar already read: either `scalar * factor` or a constant function.
  Formula after_scalar(const Value& s) {
    std::size_t save = in_.pos();
    if (in_.consume("*")) return make_scalar_mul(s, factor());
    in_.reset(save);
    return make_constant(s);
  }

  Value t_power() {
    in_.get();  // T or t
    Value v = Value::T();
    if (in_.consume("^")) {
      in_.skip_ws();
      if (!digit(in_.peek())) in_.fail("expected an exponent");
      unsigned long e = 0;
      while (digit(in_.peek())) e = e * 10 + static_cast<unsigned long>(in_.get() - '0');
      Value r(1);
      for (unsigned long i = 0; i < e; ++i) r = r * Value::T();
      v = r;
    }
    return v;
  }

  bool at_standalone_t() const {
    return (in_.peek() == 'T' || in_.peek() == 't') && !ident_char(in_.peek(1));
  }

  Formula factor() {
    in_.skip_ws();
    char c = in_.peek();
    if (c == '[') return atom();
    if (c == 'C' && in_.peek(1) == '[') return complex_atom();
    if (c == 'H' && in_.peek(1) == '{') return post_compose();
    if (c == '(') {
      std::size_t save = in_.pos();
      in_.get();
      try {
        std::size_t start = in_.pos();
        PolyParseOptions po;
        po.reserved.clear();
        MultiPoly p = parse_poly(in_, po);
        in_.expect(")");
        return after_scalar(value_from_poly(p, in_, start));
      } catch (const ParseError&) {
        in_.reset(save);
      }
      in_.get();
      Formula f = formula();
      in_.expect(")");
      return f;
    }
    if (digit(c) || c == '.') {
      Value s(parse_number(in_));
      if (at_standalone_t()) s = s * t_power();
      return after_scalar(s);
    }
    if (at_standalone_t()) return after_scalar(t_power());
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = in_.pos();
      std::string name = parse_identifier(in_);
      auto it = opt_.bindings.find(name);
      if (it == opt_.bindings.end()) in_.fail_at(start, "unknown name '" + name + "' (atoms are written [poly rel 0])");
      return it->second;
    }
    if (in_.eof()) in_.fail("unexpected end of input, expected a formula");
    in_.fail(std::string("unexpected character '") + c + "' in formula");
  }

  void check_variables(const MultiPoly& p, std::size_t start) {
    if (!opt_.allowed_variables) return;
    for (const auto& v : p.used_variables())
      if (!opt_.allowed_variables->count(v)) in_.fail_at(start, "unknown variable '" + v + "'");
  }

  std::string relation() {
    in_.skip_ws();
    for (const char* r : {"<=", ">=", "!=", "==", "=", "<", ">"})
      if (in_.consume(r)) return r;
    in_.fail("expected a relation (=, <, >, <=, >=, !=)");
  }

  Formula atom() {
    in_.expect("[");
    std::size_t start = in_.pos();
    MultiPoly lhs = parse_poly(in_);
    std::string rel = relation();
    MultiPoly rhs = parse_poly(in_);
    in_.expect("]");
    MultiPoly p = rhs.is_zero() ? lhs : lhs - rhs;
    check_variables(p, start);
    auto a = [&](Relation r) { return make_atom(p, r); };
    if (rel == "=" || rel == "==") return a(Relation::Eq);
    if (rel == "<") return a(Relation::Lt);
    if (rel == ">") return a(Relation::Gt);
    if (rel == "<=") return make_sum(a(Relation::Lt), a(Relation::Eq));
    if (rel == ">=") return make_sum(a(Relation::Gt), a(Relation::Eq));
    return make_sum(a(Relation::Lt), a(Relation::Gt));
  }

  Formula complex_atom() {
    in_.get();
    in_.expect("[");
    std::size_t start = in_.pos();
    MultiPoly p = parse_poly(in_);
    std::string rel = relation();
    if (rel != "=" && rel != "==" && rel != "!=") in_.fail("complex atoms only allow = and !=");
    MultiPoly rhs = parse_poly(in_);
    in_.expect("]");
    if (!rhs.is_zero()) p = p - rhs;
    MultiPoly m = complex_modulus_squared(p, in_, start);
    check_variables(m, start);
    return make_atom(m, rel == "!=" ? Relation::Gt : Relation::Eq);
  }

  Formula post_compose() {
    in_.get();
    in_.expect("{");
    std::size_t start = in_.pos();
    PolyParseOptions po;
    po.reserved.clear();
    MultiPoly hp = parse_poly(in_, po);
    in_.expect("}");
    ValuePoly h = value_poly_from(hp, in_, start);
    in_.expect("(");
    Formula f = formula();
    in_.expect(")");
    return make_post_compose(std::move(h), f);
  }

  Cursor& in_;
  const FormulaParseOptions& opt_;
};

class SetParser {
 public:
  explicit SetParser(Cursor& in) : in_(in) {}

  SetFormula expr() {
    SetFormula acc = conj();
    for (;;) {
      if (in_.consume("||") || in_.consume("|")) acc = make_or(acc, conj());
      else return acc;
    }
  }

 private:
  SetFormula conj() {
    SetFormula acc = unary();
    for (;;) {
      if (in_.consume("&&") || in_.consume("&")) acc = make_and(acc, unary());
      else return acc;
    }
  }

  SetFormula unary() {
    in_.skip_ws();
    if (in_.peek() == '!' && in_.peek(1) != '=') {
      in_.get();
      return make_not(unary());
    }
    if (in_.peek() == '(') {
      std::size_t save = in_.pos();
      try {
        in_.get();
        SetFormula f = expr();
        in_.expect(")");
        return f;
      } catch (const ParseError& group_error) {
        in_.reset(save);
        try {
          return atom();
        } catch (const ParseError& atom_error) {
          bool group_further = group_error.line() > atom_error.line() ||
                               (group_error.line() == atom_error.line() && group_error.column() > atom_error.column());
          if (group_further) throw group_error;
          throw;
        }
      }
    }
    return atom();
  }

  SetFormula atom() {
    MultiPoly lhs = parse_poly(in_);
    in_.skip_ws();
    SetRelation rel;
    if (in_.consume("<=")) rel = SetRelation::Le;
    else if (in_.consume(">=")) rel = SetRelation::Ge;
    else if (in_.consume("!=")) rel = SetRelation::Ne;
    else if (in_.consume("==") || in_.consume("=")) rel = SetRelation::Eq;
    else if (in_.consume("<")) rel = SetRelation::Lt;
    else if (in_.consume(">")) rel = SetRelation::Gt;
    else in_.fail("expected a relation (=, !=, <, <=, >, >=)");
    MultiPoly rhs = parse_poly(in_);
    return make_set_atom(rhs.is_zero() ? lhs : lhs - rhs, rel);
  }

  Cursor& in_;
};

}  // namespace

Formula parse_formula(Cursor& in, const FormulaParseOptions& options) { return FormulaParser(in, options).formula(); }

Formula parse_formula(std::string_view text, const FormulaParseOptions& options) {
  Cursor in(text);
  Formula f = parse_formula(in, options);
  in.skip_ws();
  if (!in.eof()) in.fail(std::string("unexpected '") + in.peek() + "' after formula");
  return f;
}

SetFormula parse_set_formula(std::string_view text) {
  Cursor in(text);
  SetFormula f = SetParser(in).expr();
  in.skip_ws();
  if (!in.eof()) in.fail(std::string("unexpected '") + in.peek() + "' after set formula");
  return f;
}

std::vector<Binding> parse_cf(std::string_view text) {
  std::vector<Binding> out;
  FormulaParseOptions opt;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    try {
      Cursor in(line);
      in.skip_ws();
      std::size_t name_pos = in.pos();
      std::string name = parse_identifier(in);
      if (name == "T" || name == "t" || name == "u" || name == "H" || name == "C")
        in.fail_at(name_pos, "'" + name + "' is reserved and cannot name a formula");
      if (opt.bindings.count(name)) in.fail_at(name_pos, "'" + name + "' is already defined");
      in.expect("=");
      Formula f = parse_formula(in, opt);
      in.skip_ws();
      if (!in.eof()) in.fail(std::string("unexpected '") + in.peek() + "' after formula");
      opt.bindings[name] = f;
      out.push_back({name, f, line_no});
    } catch (const ParseError& e) {
      throw ParseError(e.message(), line_no, e.column());
    }
    if (end == text.size()) break;
  }
  return out;
}

std::vector<Binding> load_cf_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw DomainError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_cf(buf.str());
}

const Binding& primary_binding(const std::vector<Binding>& bindings) {
  if (bindings.empty()) throw DomainError("no formula defined");
  for (const auto& b : bindings)
    if (b.name == "main") return b;
  return bindings.back();
}

}  // namespace cfe
