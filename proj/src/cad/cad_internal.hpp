#pragma once

#include <limits>
#include <vector>

#include "cfe/cad/cad.hpp"

namespace cfe::cad_detail {

/// Projection sets per main variable, closed under the projection operator.
class Projector {
 public:
  explicit Projector(VarList vars) : vars_(std::move(vars)), levels_(vars_->size()) {}
  /// Normalizes p (monomial factors split off, primitive, positive leading
  /// coefficient) and files it under its main variable. Constants are dropped.
  void add(const MultiPoly& p);
  /// Closes the sets downward and returns them, index k for variable k.
  std::vector<std::vector<MultiPoly>> run();

 private:
  void insert(MultiPoly p);
  VarList vars_;
  std::vector<std::vector<MultiPoly>> levels_;
};

}  // namespace cfe::cad_detail
