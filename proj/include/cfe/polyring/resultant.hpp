#pragma once

#include <string>
#include <vector>

#include "cfe/polyring/multipoly.hpp"

namespace cfe {

/// Determinant by fraction-free (Bareiss) elimination; every division is
/// exact. Entries must share one variable list.
MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m);

/// Sylvester resultant of a and b with respect to `var`.
/// Throws DomainError when either has degree 0 in `var`.
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, const std::string& var);

/// Principal subresultant coefficients psc_0 .. psc_{min(deg a, deg b) - 1}
/// with respect to the variable at index `var` (shared variable list
/// required). psc_0 is the resultant. Both degrees must be positive.
std::vector<MultiPoly> principal_subresultant_coefficients(const MultiPoly& a, const MultiPoly& b, std::size_t var);

}  // namespace cfe
