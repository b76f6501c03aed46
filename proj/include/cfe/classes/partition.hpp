#pragma once

#include <memory>
#include <vector>

#include "cfe/cad/cad.hpp"
#include "cfe/euler/euler.hpp"
#include "cfe/formula/formula.hpp"

namespace cfe {

/// Cells of a decomposition grouped by the value a formula takes on them.
struct LevelPartition {
  struct Level {
    Value value;
    std::vector<std::size_t> cells;  // top-level cell indices
  };

  std::shared_ptr<const CadTree> tree;
  std::size_t ambient_dim = 0;
  /// Sorted by value; values are pairwise distinct.
  std::vector<Level> levels;
  /// For each top-level cell, the index of its level.
  std::vector<std::size_t> level_of_cell;
  Formula provenance;

  /// Same schema as the pushforward export, one entry per level.
  std::string to_json() const;
};

/// Value of f on every top-level cell of `tree`. The tree family must contain
/// every atom polynomial of f.
std::vector<Value> cell_values(const CadTree& tree, const Formula& f);

/// Par(f) over a decomposition adapted to f alone.
LevelPartition par_of(const Formula& f, const EulerOptions& options = {});
/// Par(f) over an existing decomposition.
LevelPartition par_on(std::shared_ptr<const CadTree> tree, const Formula& f);

/// Decomposition adapted to both formulas at once. The order defaults to the
/// union of their variables.
std::shared_ptr<const CadTree> common_tree(const Formula& a, const Formula& b, const EulerOptions& options = {});

/// True when every level of `fine` lies inside one level of `coarse`.
/// Partitions over different trees are rebuilt over a common one, which
/// requires the same variables; anything else is a DomainError.
bool refines(const LevelPartition& fine, const LevelPartition& coarse, const CadOptions& cad = {});
/// Par(fbar) refines Par(f), decided on a common decomposition.
bool refines(const Formula& fbar, const Formula& f, const EulerOptions& options = {});

/// A polynomial h with f = h(fbar) on every cell, of degree below the number
/// of values fbar takes. Throws DomainError when Par(fbar) does not refine
/// Par(f) or fbar takes a value involving T.
ValuePoly lagrange_witness(const Formula& fbar, const Formula& f, const EulerOptions& options = {});

}  // namespace cfe
