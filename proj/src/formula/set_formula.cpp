#include "cfe/formula/set_formula.hpp"

#include <sstream>

#include "cfe/error.hpp"

namespace cfe {

namespace {

SetFormula node(SetNode n) { return std::make_shared<const SetNode>(std::move(n)); }

void collect_atoms(const SetFormula& f, std::vector<const SetNode*>& out) {
  if (f->kind == SetNode::Kind::Atom) {
    out.push_back(f.get());
    return;
  }
  collect_atoms(f->lhs, out);
  if (f->rhs) collect_atoms(f->rhs, out);
}

}  // namespace

SetFormula make_set_atom(MultiPoly poly, SetRelation rel) {
  return node({SetNode::Kind::Atom, std::move(poly), rel, nullptr, nullptr});
}
SetFormula make_not(SetFormula a) { return node({SetNode::Kind::Not, MultiPoly(), SetRelation::Eq, std::move(a), nullptr}); }
SetFormula make_and(SetFormula a, SetFormula b) {
  return node({SetNode::Kind::And, MultiPoly(), SetRelation::Eq, std::move(a), std::move(b)});
}
SetFormula make_or(SetFormula a, SetFormula b) {
  return node({SetNode::Kind::Or, MultiPoly(), SetRelation::Eq, std::move(a), std::move(b)});
}

bool relation_holds(SetRelation rel, int s) {
  switch (rel) {
    case SetRelation::Eq: return s == 0;
    case SetRelation::Ne: return s != 0;
    case SetRelation::Lt: return s < 0;
    case SetRelation::Le: return s <= 0;
    case SetRelation::Gt: return s > 0;
    case SetRelation::Ge: return s >= 0;
  }
  return false;
}

VarList set_formula_variables(const SetFormula& f) {
  std::vector<const SetNode*> atoms;
  collect_atoms(f, atoms);
  std::vector<std::string> names;
  for (const auto* a : atoms) names.insert(names.end(), a->poly.vars()->begin(), a->poly.vars()->end());
  return canonical_var_list(std::move(names));
}

PolyFamily extract_poly_family(const SetFormula& f, VarList vars) {
  PolyFamily fam;
  fam.vars = vars ? std::move(vars) : set_formula_variables(f);
  std::vector<const SetNode*> atoms;
  collect_atoms(f, atoms);
  for (const auto* a : atoms) fam.add(a->poly);
  return fam;
}

SetEvaluator::SetEvaluator(SetFormula f, VarList vars) : f_(std::move(f)) {
  family_.vars = vars ? std::move(vars) : set_formula_variables(f_);
  std::vector<const SetNode*> atoms;
  collect_atoms(f_, atoms);
  for (const auto* a : atoms) atom_index_.emplace_back(a, family_.add(a->poly));
}

bool SetEvaluator::eval(const SetNode& n, const std::vector<int>& signs) const {
  switch (n.kind) {
    case SetNode::Kind::Atom:
      for (const auto& [a, i] : atom_index_)
        if (a == &n) return relation_holds(n.rel, signs[i]);
      throw DomainError("atom missing from family");
    case SetNode::Kind::Not: return !eval(*n.lhs, signs);
    case SetNode::Kind::And: return eval(*n.lhs, signs) && eval(*n.rhs, signs);
    case SetNode::Kind::Or: return eval(*n.lhs, signs) || eval(*n.rhs, signs);
  }
  return false;
}

bool SetEvaluator::on_signs(const std::vector<int>& signs) const {
  if (signs.size() != family_.size()) throw DomainError("sign vector does not match the polynomial family");
  return eval(*f_, signs);
}

bool SetEvaluator::at(const std::vector<Rational>& point) const {
  if (point.size() != family_.vars->size()) throw DomainError("point dimension does not match the set formula");
  std::vector<int> signs;
  for (const auto& p : family_.polys) signs.push_back(sgn(p.evaluate(point)));
  return eval(*f_, signs);
}

Formula indicator(const SetFormula& f) {
  switch (f->kind) {
    case SetNode::Kind::Atom: {
      auto a = [&](Relation r) { return make_atom(f->poly, r); };
      switch (f->rel) {
        case SetRelation::Eq: return a(Relation::Eq);
        case SetRelation::Gt: return a(Relation::Gt);
        case SetRelation::Lt: return a(Relation::Lt);
        case SetRelation::Ne: return make_sum(a(Relation::Lt), a(Relation::Gt));
        case SetRelation::Le: return make_sum(a(Relation::Lt), a(Relation::Eq));
        case SetRelation::Ge: return make_sum(a(Relation::Gt), a(Relation::Eq));
      }
      break;
    }
    case SetNode::Kind::Not: return make_sum(make_constant(Value(1)), make_scalar_mul(Value(-1), indicator(f->lhs)));
    case SetNode::Kind::And: return make_product(indicator(f->lhs), indicator(f->rhs));
    case SetNode::Kind::Or: {
      Formula a = indicator(f->lhs), b = indicator(f->rhs);
      return make_sum(make_sum(a, b), make_scalar_mul(Value(-1), make_product(a, b)));
    }
  }
  throw DomainError("malformed set formula");
}

namespace {

const char* rel_text(SetRelation r) {
  switch (r) {
    case SetRelation::Eq: return "=";
    case SetRelation::Ne: return "!=";
    case SetRelation::Lt: return "<";
    case SetRelation::Le: return "<=";
    case SetRelation::Gt: return ">";
    case SetRelation::Ge: return ">=";
  }
  return "?";
}

}  // namespace

std::string to_string(const SetFormula& f) {
  switch (f->kind) {
    case SetNode::Kind::Atom: return f->poly.to_string() + " " + rel_text(f->rel) + " 0";
    case SetNode::Kind::Not: return "!(" + to_string(f->lhs) + ")";
    case SetNode::Kind::And: return "(" + to_string(f->lhs) + ") & (" + to_string(f->rhs) + ")";
    case SetNode::Kind::Or: return "(" + to_string(f->lhs) + ") | (" + to_string(f->rhs) + ")";
  }
  return "";
}

}  // namespace cfe
