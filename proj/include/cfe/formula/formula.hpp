#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cfe/formula/value.hpp"
#include "cfe/polyring/multipoly.hpp"

namespace cfe {

enum class Relation { Eq, Gt, Lt };

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

/// Node of a constructible-function formula. Atoms are indicator functions
/// of `poly rel 0`; the other kinds combine children pointwise.
struct FormulaNode {
  enum class Kind { Atom, Sum, Product, ScalarMul, PostCompose };
  Kind kind;
  MultiPoly poly;  // Atom
  Relation rel = Relation::Eq;
  Formula lhs;  // Sum, Product; the child of ScalarMul and PostCompose
  Formula rhs;  // Sum, Product
  Value scalar; // ScalarMul
  ValuePoly h;  // PostCompose
};

Formula make_atom(MultiPoly poly, Relation rel);
Formula make_sum(Formula a, Formula b);
Formula make_product(Formula a, Formula b);
Formula make_scalar_mul(Value c, Formula f);
Formula make_post_compose(ValuePoly h, Formula f);
/// The constant function c, written as c * [0 = 0].
Formula make_constant(Value c);

/// Structural equality (polynomials compared as polynomials).
bool formula_equal(const Formula& a, const Formula& b);

/// Sum of atom sizes; post-composition and scalars are free.
std::size_t formula_size(const Formula& f);

/// Number of atom occurrences.
std::size_t atom_count(const Formula& f);

/// True when some scalar or post-composition coefficient involves T.
bool uses_T(const Formula& f);

/// Every variable named in an atom, in natural order.
VarList formula_variables(const Formula& f);

/// Deduplicated polynomials over one variable list, in order of first use.
struct PolyFamily {
  VarList vars;
  std::vector<MultiPoly> polys;

  /// Index of p (after remapping to `vars`), adding it when new.
  std::size_t add(const MultiPoly& p);
  std::optional<std::size_t> find(const MultiPoly& p) const;
  std::size_t size() const { return polys.size(); }
};

/// The polynomials of all atoms, over formula_variables(f) unless `vars` is
/// given (it must contain every atom variable).
PolyFamily extract_poly_family(const Formula& f, VarList vars = nullptr);

/// Evaluates a formula from the signs of its family, or at a point.
class FormulaEvaluator {
 public:
  explicit FormulaEvaluator(Formula f, VarList vars = nullptr);

  const Formula& formula() const { return f_; }
  const PolyFamily& family() const { return family_; }
  const VarList& vars() const { return family_.vars; }

  /// `signs[i]` is the sign of family().polys[i].
  Value on_signs(const std::vector<int>& signs) const;
  /// `point` is indexed like vars(). Throws DomainError on a size mismatch.
  Value at(const std::vector<Rational>& point) const;

 private:
  Value eval(const FormulaNode& n, const std::vector<int>& signs) const;

  Formula f_;
  PolyFamily family_;
  std::unordered_map<const FormulaNode*, std::size_t> atom_index_;
};

/// Value of f at a point indexed like formula_variables(f).
Value evaluate_formula(const Formula& f, const std::vector<Rational>& point);

/// Re-parseable text.
std::string to_string(const Formula& f);

/// Replaces variables in every atom polynomial.
Formula substitute(const Formula& f, const std::map<std::string, MultiPoly>& replacement);

}  // namespace cfe
