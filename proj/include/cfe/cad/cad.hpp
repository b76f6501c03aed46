#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cfe/exactnum/algebraic.hpp"
#include "cfe/exactnum/tower.hpp"
#include "cfe/polyring/multipoly.hpp"

namespace cfe {

struct CadOptions {
  std::size_t max_variables = 4;
  std::size_t max_cells = 1'000'000;
};

/// A cell of the decomposition of the first `level()` coordinates.
///
/// `index[i]` is the position in the stack at level i+1, counted from 0:
/// even positions are sectors, odd positions are sections. The sample point
/// lives in one real tower shared with the cell's ancestors.
struct CadCell {
  std::vector<int> index;
  int dim = 0;
  std::vector<AlgElem> sample;
  /// Signs of the input family; filled on top-level cells only.
  std::vector<int> signs;
  /// Position of the projection in the level below (-1 for the root).
  long base_index = -1;
  /// Children in the level above: [child_begin, child_end).
  std::size_t child_begin = 0;
  std::size_t child_end = 0;
  /// Top-level descendants: [top_begin, top_end).
  std::size_t top_begin = 0;
  std::size_t top_end = 0;

  std::size_t level() const { return index.size(); }
  bool is_section(std::size_t i) const { return index[i] % 2 == 1; }
};

/// Sign-invariant cylindrical decomposition of R^n for a polynomial family.
class CadTree {
 public:
  const VarList& variables() const { return vars_; }
  std::size_t dimension() const { return vars_->size(); }
  /// The input family over variables(), in input order (zero polynomials
  /// included; they have sign 0 everywhere).
  const std::vector<MultiPoly>& family() const { return family_; }
  /// projection(k) holds the polynomials whose main variable is the k-th
  /// (1-based); their roots delineate the stacks at level k.
  const std::vector<MultiPoly>& projection(std::size_t k) const { return projection_[k - 1]; }

  const std::vector<CadCell>& cells() const { return levels_.back(); }
  /// Decomposition of R^k induced on the first k coordinates; induced(0) is
  /// the single point of R^0 and induced(n) == cells().
  const std::vector<CadCell>& induced(std::size_t k) const { return levels_.at(k); }

  /// Top-level cells projecting onto cell `base` of induced(k).
  std::vector<std::size_t> cells_over_base(std::size_t k, std::size_t base) const;

  /// Top-level cells whose sign vector agrees with every (family index, sign)
  /// pair. Throws DomainError for an unknown index, a sign outside {-1,0,1},
  /// or two different signs for one polynomial.
  std::vector<std::size_t> realize_sign_condition(const std::vector<std::pair<std::size_t, int>>& sigma) const;
  /// Same with the polynomial given explicitly; it must be a family member.
  std::vector<std::size_t> realize_sign_condition(const std::vector<std::pair<MultiPoly, int>>& sigma) const;

  /// Index in induced(k) of the cell containing the first k coordinates of
  /// a rational point (k defaults to n).
  std::size_t locate(const std::vector<Rational>& point) const;
  std::size_t locate(const std::vector<Rational>& point, std::size_t k) const;

  /// `{variables, family, cells: [{index, dim, sample, signs, base_index}]}`
  /// with exact sample strings.
  std::string to_json() const;

 private:
  friend CadTree build_cad(const std::vector<MultiPoly>&, const VarList&, const CadOptions&);
  VarList vars_;
  std::vector<MultiPoly> family_;
  std::vector<std::vector<MultiPoly>> projection_;
  std::vector<std::vector<CadCell>> levels_;
};

/// Builds the decomposition with the variables in the order given by `order`,
/// which must contain every variable of the family. Polynomials are projected
/// with Hong's refinement of Collins' operator (valid without any
/// well-orientedness assumption) and stacks are lifted over exact samples.
/// Throws BudgetExceeded past `max_variables` or `max_cells`.
CadTree build_cad(const std::vector<MultiPoly>& family, const VarList& order, const CadOptions& options = {});

/// Real algebraic number over Q equal to a tower element (via its norm).
AlgebraicNumber to_algebraic_number(const AlgElem& value);

/// `3/2` for rationals, `root(x^2 - 2, [1, 3/2])` otherwise.
std::string sample_string(const AlgElem& value);

}  // namespace cfe
