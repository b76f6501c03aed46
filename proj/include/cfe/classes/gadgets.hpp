#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cfe/exactnum/rational.hpp"
#include "cfe/formula/formula.hpp"

namespace cfe {

using PolyMatrix = std::vector<std::vector<MultiPoly>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Determinant by cofactor expansion. Throws DomainError for a non-square
/// matrix or one larger than 4 x 4.
MultiPoly determinant(const PolyMatrix& a);

/// sum_i 2^i [det(A_i) = 0] for n matrices of size n x n, n <= 4.
Formula weighted_det(const std::vector<PolyMatrix>& matrices);
/// The gadget on generic matrices: entry (r, c) of A_i is the variable
/// x_{(i-1) n^2 + r n + c + 1}.
Formula weighted_det_generic(std::size_t n);
/// Zero pattern (entry i-1 is [det(A_i) = 0]) read off a gadget value.
/// Throws DomainError when v is not a valid code for n matrices.
std::vector<bool> decode_weighted_det(const Value& v, std::size_t n);

/// (100 m)^(2 m).
Integer hn_default_omega(std::size_t m);

struct HnResult {
  Integer value;
  Integer omega;
  /// Bound on |chi| of any sign condition of the instance.
  Integer chi_bound;
  /// chi of each realizable sign condition, decoded from `value`. Keys list
  /// the sign of each quadric.
  std::map<std::vector<int>, Integer> chi_by_sign;
  std::string diagnostic;
};

/// Q(1, y) for the symmetric (m+1) x (m+1) matrix of a quadratic form, over
/// y1..ym.
MultiPoly dehomogenize(const RationalMatrix& q);

/// The integrand prod_i (O^(2^(3i)) [Q_i=0] + O^(2^(3i+1)) [Q_i>0] +
/// O^(2^(3i+2)) [Q_i<0]) over y1..ym.
Formula hn_integrand(const std::vector<RationalMatrix>& quadrics, const Integer& omega);

/// Euler integral of the integrand over R^m. Omega must exceed the square of
/// the chi bound for n quadrics in m variables, else DomainError. Instances
/// are limited to n <= 3 quadrics and m <= 3.
HnResult hn_gadget(const std::vector<RationalMatrix>& quadrics, std::size_t m,
                   std::optional<Integer> omega = std::nullopt);

/// Digits of v in balanced base omega, least significant first.
std::vector<Integer> balanced_digits(Integer v, const Integer& omega);

/// sum_i a_i M^(2i). Requires M >= 2 and |a_i| < M.
Integer phi_encode(const std::vector<Integer>& a, const Integer& m);

}  // namespace cfe
