#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cfe/cad/cad.hpp"
#include "cfe/formula/formula.hpp"
#include "cfe/formula/set_formula.hpp"

namespace cfe {

struct EulerOptions {
  /// Variable order for the decomposition. Null means the formula's own
  /// variables in natural order. May list extra variables, which widens the
  /// ambient space.
  VarList order;
  CadOptions cad;
};

/// Sum of (-1)^dim over the given top-level cells.
long chi_of_cells(const CadTree& tree, const std::vector<std::size_t>& cells);

/// Euler characteristic of the realization of a sign condition that assigns
/// a sign to every family member.
long chi_of_realization(const CadTree& tree, const std::vector<std::pair<std::size_t, int>>& sigma);

/// Euler characteristic of every realizable sign condition on the family.
std::vector<std::pair<std::vector<int>, long>> chi_by_sign_condition(const CadTree& tree);

struct EulerResult {
  Value value;
  std::size_t cells = 0;
  VarList order;
};

/// Sum over cells of f(sample) * (-1)^dim.
EulerResult euler_integrate(const Formula& f, const EulerOptions& options = {});
/// The same over an existing tree whose family contains every atom
/// polynomial of f.
Value integrate_on(const CadTree& tree, const Formula& f);

/// Euler characteristic of the set defined by a quantifier-free formula.
long chi_of_formula_set(const SetFormula& phi, const EulerOptions& options = {});

struct BaseValue {
  std::size_t cell;  // index in tree.induced(base_dim)
  Value value;
};

/// Fiber integrals over the cells of the induced decomposition of the first
/// `base_dim` variables. Base variables must come first in the order.
struct Pushforward {
  CadTree tree;
  std::size_t base_dim = 0;
  std::vector<BaseValue> values;

  const CadCell& base_cell(std::size_t i) const { return tree.induced(base_dim)[values[i].cell]; }
  /// Euler integral of the pushforward over R^base_dim.
  Value integral() const;
  /// Value at a rational point of the base.
  Value at(const std::vector<Rational>& base_point) const;
  /// `{"base_variables", "base_cells": [{index, dim, sample, value}]}`.
  std::string to_json() const;
};

Pushforward pushforward(const Formula& f, std::size_t base_dim, const EulerOptions& options = {});

/// Formula for the pushforward as a function on the base, written with sign
/// conditions on the base-level projection polynomials. Empty when those
/// sign conditions do not separate base cells with different values.
std::optional<Formula> pushforward_formula(const Pushforward& p);

struct FubiniReport {
  Value total;
  Value via_pushforward;
  bool holds = false;
  std::size_t base_cells = 0;
};

FubiniReport fubini_check(const Formula& f, std::size_t base_dim, const EulerOptions& options = {});

struct ChiBound {
  long s = 0;
  long d = 0;
  long n = 0;
  /// sum_{i<n} sum_{j<=i+1} C(s+1, j) d (2d-1)^(n-1).
  Integer sign_condition_bound;
  std::string general_set_note;
};

/// Bound on |chi| of a realization of a sign condition on s polynomials of
/// degree at most d in n variables. Throws DomainError unless s >= 1,
/// d >= 2, n >= 1.
ChiBound eval_chi_bound(long s, long d, long n);

}  // namespace cfe
