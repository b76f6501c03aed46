#pragma once

#include <string>
#include <variant>
#include <vector>

#include "cfe/classes/partition.hpp"

namespace cfe {

/// Z: [1, m2] -> source variables or constants. Position i replaces
/// target_vars[i].
struct SubstitutionMap {
  using Entry = std::variant<std::string, Rational>;
  std::vector<std::string> target_vars;
  std::vector<Entry> assignment;

  std::size_t arity() const { return target_vars.size(); }
};

/// g(Z(1), ..., Z(m2)). Throws DomainError when the map is not total or g
/// uses a variable outside target_vars. The result never has a larger
/// formula size than g.
Formula apply_reduction(const Formula& g, const SubstitutionMap& z);

/// The map applying `first` and then `second`: its targets are those of
/// `first` and its entries are read through `second`. Every variable that
/// `first` produces must be a target of `second`.
SubstitutionMap compose(const SubstitutionMap& first, const SubstitutionMap& second);

struct ReductionReport {
  Formula fbar;
  bool refines = false;
  std::size_t size_f = 0;
  std::size_t size_g = 0;
  std::size_t size_fbar = 0;
};

/// Checks one instance of f <=_p g: builds fbar = g o Z and decides whether
/// Par(fbar) refines Par(f).
ReductionReport reduce_check(const Formula& f, const Formula& g, const SubstitutionMap& z,
                             const EulerOptions& options = {});

}  // namespace cfe
