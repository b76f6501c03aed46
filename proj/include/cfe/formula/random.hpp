#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cfe/formula/formula.hpp"
#include "cfe/formula/set_formula.hpp"

namespace cfe {

/// Seeded generator of small random inputs for property runs. Draws use
/// plain modular reduction of a 64-bit Mersenne twister, so a seed gives the
/// same sequence on every platform.
class RandomInputs {
 public:
  explicit RandomInputs(std::uint64_t seed) : rng_(seed) {}

  long draw(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  Rational rational(long num_bound, long den_bound) { return Rational(draw(-num_bound, num_bound)) / Rational(draw(1, den_bound)); }

  /// Non-constant polynomial with up to `max_terms` monomials of total
  /// degree at most `max_degree` and coefficients in [-3, 3].
  MultiPoly poly(const VarList& vars, int max_degree = 2, int max_terms = 3);
  /// Between 1 and `max_polys` polynomials.
  std::vector<MultiPoly> family(const VarList& vars, std::size_t max_polys = 3, int max_degree = 2, int max_terms = 3);

  /// Boolean combination of sign atoms over the family.
  SetFormula set_formula(const std::vector<MultiPoly>& family, int depth = 2);
  /// Constructible function: atoms over the family combined with sums,
  /// products and small rational scalars.
  Formula formula(const std::vector<MultiPoly>& family, int depth = 2);

 private:
  std::mt19937_64 rng_;
};

}  // namespace cfe
