#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cfe/formula/formula.hpp"

namespace cfe {

enum class SetRelation { Eq, Ne, Lt, Le, Gt, Ge };

struct SetNode;
using SetFormula = std::shared_ptr<const SetNode>;

/// Quantifier-free boolean combination of polynomial sign conditions.
struct SetNode {
  enum class Kind { Atom, Not, And, Or };
  Kind kind;
  MultiPoly poly;  // Atom: poly rel 0
  SetRelation rel = SetRelation::Eq;
  SetFormula lhs;
  SetFormula rhs;
};

SetFormula make_set_atom(MultiPoly poly, SetRelation rel);
SetFormula make_not(SetFormula a);
SetFormula make_and(SetFormula a, SetFormula b);
SetFormula make_or(SetFormula a, SetFormula b);

bool relation_holds(SetRelation rel, int sign);

VarList set_formula_variables(const SetFormula& f);
PolyFamily extract_poly_family(const SetFormula& f, VarList vars = nullptr);

/// Truth value from the signs of the family returned for the same formula.
class SetEvaluator {
 public:
  explicit SetEvaluator(SetFormula f, VarList vars = nullptr);
  const PolyFamily& family() const { return family_; }
  const VarList& vars() const { return family_.vars; }
  bool on_signs(const std::vector<int>& signs) const;
  bool at(const std::vector<Rational>& point) const;

 private:
  bool eval(const SetNode& n, const std::vector<int>& signs) const;
  SetFormula f_;
  PolyFamily family_;
  std::vector<std::pair<const SetNode*, std::size_t>> atom_index_;
};

/// The indicator function of the set as a constructible-function formula,
/// built from = > < atoms with products for conjunction and 1 - x for
/// negation.
Formula indicator(const SetFormula& f);

std::string to_string(const SetFormula& f);

}  // namespace cfe
