#include "cfe/classes/reduction.hpp"

#include <algorithm>
#include <map>

#include "cfe/error.hpp"
#include "cfe/polyring/slp.hpp"

namespace cfe {

namespace {

// Atoms without a program get their naive one, so that substitution acts on
// the same program formula_size measured.
Formula with_programs(const Formula& f) {
  switch (f->kind) {
    case FormulaNode::Kind::Atom:
      return f->poly.program() ? f : make_atom(f->poly.with_program(naive_program(f->poly)), f->rel);
    case FormulaNode::Kind::Sum: return make_sum(with_programs(f->lhs), with_programs(f->rhs));
    case FormulaNode::Kind::Product: return make_product(with_programs(f->lhs), with_programs(f->rhs));
    case FormulaNode::Kind::ScalarMul: return make_scalar_mul(f->scalar, with_programs(f->lhs));
    case FormulaNode::Kind::PostCompose: return make_post_compose(f->h, with_programs(f->lhs));
  }
  return f;
}

MultiPoly entry_poly(const SubstitutionMap::Entry& e) {
  if (const auto* v = std::get_if<std::string>(&e)) return MultiPoly::variable(*v);
  return MultiPoly(std::get<Rational>(e));
}

}  // namespace

Formula apply_reduction(const Formula& g, const SubstitutionMap& z) {
  if (z.assignment.size() != z.target_vars.size())
    throw DomainError("substitution map assigns " + std::to_string(z.assignment.size()) + " of " +
                      std::to_string(z.target_vars.size()) + " positions");
  std::map<std::string, MultiPoly> replacement;
  for (std::size_t i = 0; i < z.arity(); ++i)
    if (!replacement.emplace(z.target_vars[i], entry_poly(z.assignment[i])).second)
      throw DomainError("position variable '" + z.target_vars[i] + "' is listed twice");
  VarList used = formula_variables(g);
  for (const auto& v : *used)
    if (!replacement.count(v)) throw DomainError("g uses '" + v + "', which the substitution map does not assign");
  Formula out = substitute(with_programs(g), replacement);
  if (formula_size(out) > formula_size(g))
    throw Error("substitution increased the formula size from " + std::to_string(formula_size(g)) + " to " +
                std::to_string(formula_size(out)));
  return out;
}

SubstitutionMap compose(const SubstitutionMap& first, const SubstitutionMap& second) {
  if (second.assignment.size() != second.target_vars.size() || first.assignment.size() != first.target_vars.size())
    throw DomainError("substitution maps must be total");
  SubstitutionMap out{first.target_vars, {}};
  for (const auto& e : first.assignment) {
    if (const auto* v = std::get_if<std::string>(&e)) {
      auto it = std::find(second.target_vars.begin(), second.target_vars.end(), *v);
      if (it == second.target_vars.end())
        throw DomainError("variable '" + *v + "' is not a position of the second map");
      out.assignment.push_back(second.assignment[static_cast<std::size_t>(it - second.target_vars.begin())]);
    } else {
      out.assignment.push_back(e);
    }
  }
  return out;
}

ReductionReport reduce_check(const Formula& f, const Formula& g, const SubstitutionMap& z, const EulerOptions& options) {
  ReductionReport r;
  r.fbar = apply_reduction(g, z);
  r.size_f = formula_size(f);
  r.size_g = formula_size(g);
  r.size_fbar = formula_size(r.fbar);
  r.refines = refines(r.fbar, f, options);
  return r;
}

}  // namespace cfe
