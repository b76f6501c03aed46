#include "cfe/formula/formula.hpp"

#include <functional>
#include <sstream>

#include "cfe/error.hpp"
#include "cfe/exactnum/algebraic.hpp"

namespace cfe {

bool operator<(const Value& a, const Value& b) {
  const auto& x = a.poly().coeffs();
  const auto& y = b.poly().coeffs();
  if (x.size() != y.size()) return x.size() < y.size();
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != y[i]) return x[i] < y[i];
  return false;
}

std::string Value::to_string() const {
  if (is_rational()) return cfe::to_string(rational());
  return polynomial_string(p_, "T");
}

std::string to_string(const ValuePoly& h) {
  // Expand into a polynomial in u and T for printing.
  MultiPoly acc(Rational(0));
  MultiPoly u = MultiPoly::variable("u"), t = MultiPoly::variable("T");
  for (std::size_t i = 0; i < h.size(); ++i) {
    MultiPoly c(Rational(0));
    const auto& q = h[i].poly();
    for (std::size_t j = 0; j < q.size(); ++j) c = c + MultiPoly(q[j]) * t.pow(static_cast<unsigned>(j));
    acc = acc + c * u.pow(static_cast<unsigned>(i));
  }
  return acc.to_string();
}

namespace {

Formula node(FormulaNode n) { return std::make_shared<const FormulaNode>(std::move(n)); }

}  // namespace

Formula make_atom(MultiPoly poly, Relation rel) {
  FormulaNode n{FormulaNode::Kind::Atom, std::move(poly), rel, nullptr, nullptr, Value(), ValuePoly()};
  return node(std::move(n));
}

Formula make_sum(Formula a, Formula b) {
  return node({FormulaNode::Kind::Sum, MultiPoly(), Relation::Eq, std::move(a), std::move(b), Value(), ValuePoly()});
}

Formula make_product(Formula a, Formula b) {
  return node({FormulaNode::Kind::Product, MultiPoly(), Relation::Eq, std::move(a), std::move(b), Value(), ValuePoly()});
}

Formula make_scalar_mul(Value c, Formula f) {
  return node({FormulaNode::Kind::ScalarMul, MultiPoly(), Relation::Eq, std::move(f), nullptr, std::move(c), ValuePoly()});
}

Formula make_post_compose(ValuePoly h, Formula f) {
  return node({FormulaNode::Kind::PostCompose, MultiPoly(), Relation::Eq, std::move(f), nullptr, Value(), std::move(h)});
}

Formula make_constant(Value c) { return make_scalar_mul(std::move(c), make_atom(MultiPoly(Rational(0)), Relation::Eq)); }

bool formula_equal(const Formula& a, const Formula& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case FormulaNode::Kind::Atom: return a->rel == b->rel && a->poly == b->poly;
    case FormulaNode::Kind::Sum:
    case FormulaNode::Kind::Product: return formula_equal(a->lhs, b->lhs) && formula_equal(a->rhs, b->rhs);
    case FormulaNode::Kind::ScalarMul: return a->scalar == b->scalar && formula_equal(a->lhs, b->lhs);
    case FormulaNode::Kind::PostCompose:
      return a->h.coeffs() == b->h.coeffs() && formula_equal(a->lhs, b->lhs);
  }
  return false;
}

std::size_t formula_size(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: return size_of_poly(f->poly).size();
    case FormulaNode::Kind::Sum:
    case FormulaNode::Kind::Product: return formula_size(f->lhs) + formula_size(f->rhs);
    case FormulaNode::Kind::ScalarMul:
    case FormulaNode::Kind::PostCompose: return formula_size(f->lhs);
  }
  return 0;
}

std::size_t atom_count(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: return 1;
    case FormulaNode::Kind::Sum:
    case FormulaNode::Kind::Product: return atom_count(f->lhs) + atom_count(f->rhs);
    default: return atom_count(f->lhs);
  }
}

bool uses_T(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: return false;
    case FormulaNode::Kind::Sum:
    case FormulaNode::Kind::Product: return uses_T(f->lhs) || uses_T(f->rhs);
    case FormulaNode::Kind::ScalarMul: return !f->scalar.is_rational() || uses_T(f->lhs);
    case FormulaNode::Kind::PostCompose:
      for (const auto& c : f->h.coeffs())
        if (!c.is_rational()) return true;
      return uses_T(f->lhs);
  }
  return false;
}

namespace {

void collect_atoms(const Formula& f, std::vector<const FormulaNode*>& out) {
  if (f->kind == FormulaNode::Kind::Atom) {
    out.push_back(f.get());
    return;
  }
  collect_atoms(f->lhs, out);
  if (f->rhs) collect_atoms(f->rhs, out);
}

}  // namespace

VarList formula_variables(const Formula& f) {
  std::vector<const FormulaNode*> atoms;
  collect_atoms(f, atoms);
  std::vector<std::string> names;
  for (const auto* a : atoms) names.insert(names.end(), a->poly.vars()->begin(), a->poly.vars()->end());
  return canonical_var_list(std::move(names));
}

std::size_t PolyFamily::add(const MultiPoly& p) {
  if (auto i = find(p)) return *i;
  polys.push_back(p.remap(vars));
  return polys.size() - 1;
}

std::optional<std::size_t> PolyFamily::find(const MultiPoly& p) const {
  MultiPoly q = p.remap(vars);
  for (std::size_t i = 0; i < polys.size(); ++i)
    if (polys[i].terms() == q.terms()) return i;
  return std::nullopt;
}

PolyFamily extract_poly_family(const Formula& f, VarList vars) {
  PolyFamily fam;
  fam.vars = vars ? std::move(vars) : formula_variables(f);
  std::vector<const FormulaNode*> atoms;
  collect_atoms(f, atoms);
  for (const auto* a : atoms) fam.add(a->poly);
  return fam;
}

FormulaEvaluator::FormulaEvaluator(Formula f, VarList vars) : f_(std::move(f)) {
  family_.vars = vars ? std::move(vars) : formula_variables(f_);
  std::vector<const FormulaNode*> atoms;
  collect_atoms(f_, atoms);
  for (const auto* a : atoms) atom_index_.emplace(a, family_.add(a->poly));
}

Value FormulaEvaluator::eval(const FormulaNode& n, const std::vector<int>& signs) const {
  switch (n.kind) {
    case FormulaNode::Kind::Atom: {
      int s = signs[atom_index_.at(&n)];
      bool holds = (n.rel == Relation::Eq && s == 0) || (n.rel == Relation::Gt && s > 0) || (n.rel == Relation::Lt && s < 0);
      return Value(Rational(holds ? 1 : 0));
    }
    case FormulaNode::Kind::Sum: return eval(*n.lhs, signs) + eval(*n.rhs, signs);
    case FormulaNode::Kind::Product: return eval(*n.lhs, signs) * eval(*n.rhs, signs);
    case FormulaNode::Kind::ScalarMul: return n.scalar * eval(*n.lhs, signs);
    case FormulaNode::Kind::PostCompose: return n.h(eval(*n.lhs, signs));
  }
  return Value();
}

Value FormulaEvaluator::on_signs(const std::vector<int>& signs) const {
  if (signs.size() != family_.size()) throw DomainError("sign vector does not match the polynomial family");
  return eval(*f_, signs);
}

Value FormulaEvaluator::at(const std::vector<Rational>& point) const {
  if (point.size() != family_.vars->size())
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, formula has " +
                      std::to_string(family_.vars->size()) + " variables");
  std::vector<int> signs;
  signs.reserve(family_.size());
  for (const auto& p : family_.polys) signs.push_back(sgn(p.evaluate(point)));
  return eval(*f_, signs);
}

Value evaluate_formula(const Formula& f, const std::vector<Rational>& point) { return FormulaEvaluator(f).at(point); }

namespace {

std::string scalar_text(const Value& v) {
  if (v.is_rational() && sgn(v.rational()) >= 0) return v.to_string();
  return "(" + v.to_string() + ")";
}

const char* rel_text(Relation r) {
  switch (r) {
    case Relation::Eq: return "=";
    case Relation::Gt: return ">";
    case Relation::Lt: return "<";
  }
  return "?";
}

// Precedence levels: 0 sum, 1 product, 2 factor.
void print(const Formula& f, std::ostringstream& os, int context) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: os << '[' << f->poly.to_string() << ' ' << rel_text(f->rel) << " 0]"; return;
    case FormulaNode::Kind::Sum:
      if (context > 0) os << '(';
      print(f->lhs, os, 0);
      os << " + ";
      print(f->rhs, os, 1);
      if (context > 0) os << ')';
      return;
    case FormulaNode::Kind::Product:
      if (context > 1) os << '(';
      print(f->lhs, os, 1);
      os << '*';
      print(f->rhs, os, 2);
      if (context > 1) os << ')';
      return;
    case FormulaNode::Kind::ScalarMul:
      // `c*F` is a factor; F must itself be a factor.
      if (context > 1) os << '(';
      os << scalar_text(f->scalar) << '*';
      print(f->lhs, os, 2);
      if (context > 1) os << ')';
      return;
    case FormulaNode::Kind::PostCompose:
      os << "H{" << to_string(f->h) << "}(";
      print(f->lhs, os, 0);
      os << ')';
      return;
  }
}

}  // namespace

std::string to_string(const Formula& f) {
  std::ostringstream os;
  print(f, os, 0);
  return os.str();
}

Formula substitute(const Formula& f, const std::map<std::string, MultiPoly>& replacement) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom: return make_atom(f->poly.substitute(replacement), f->rel);
    case FormulaNode::Kind::Sum: return make_sum(substitute(f->lhs, replacement), substitute(f->rhs, replacement));
    case FormulaNode::Kind::Product: return make_product(substitute(f->lhs, replacement), substitute(f->rhs, replacement));
    case FormulaNode::Kind::ScalarMul: return make_scalar_mul(f->scalar, substitute(f->lhs, replacement));
    case FormulaNode::Kind::PostCompose: return make_post_compose(f->h, substitute(f->lhs, replacement));
  }
  return f;
}

}  // namespace cfe
