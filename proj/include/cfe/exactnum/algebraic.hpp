#pragma once

#include <string>
#include <vector>

#include "cfe/exactnum/interval.hpp"
#include "cfe/exactnum/rational.hpp"
#include "cfe/exactnum/upoly.hpp"

namespace cfe {

/// Real algebraic number: a square-free defining polynomial over Q plus an
/// isolating interval. Rational roots are kept exact (degenerate interval).
///
/// Invariant for irrational values: the defining polynomial has exactly one
/// real root in (lo, hi), and it is nonzero with opposite signs at lo and hi.
/// The interval is a cache that only ever shrinks; copies are independent.
class AlgebraicNumber {
 public:
  explicit AlgebraicNumber(const Rational& value);
  /// Precondition: `defining` square-free with a single root in (lo, hi) and a
  /// sign change across it.
  AlgebraicNumber(QPoly defining, Rational lo, Rational hi);

  const QPoly& defining_poly() const { return poly_; }
  Interval interval() const { return {lo_, hi_}; }
  bool is_rational() const { return exact_; }
  /// Valid only when is_rational().
  const Rational& rational_value() const { return lo_; }

  /// Halves the isolating interval (may discover that the value is rational).
  void refine() const;
  void refine_below(const Rational& width) const;

  std::string to_string() const;

 private:
  QPoly poly_;
  mutable Rational lo_;
  mutable Rational hi_;
  mutable bool exact_ = false;
  mutable int sign_lo_ = 0;
};

/// Distinct real roots of p in increasing order with pairwise disjoint
/// isolating intervals. Throws DomainError for the zero polynomial.
std::vector<AlgebraicNumber> isolate_real_roots(const QPoly& p);

/// Exact sign of q(a): gcd test for zero, interval refinement otherwise.
int sign_at(const QPoly& q, const AlgebraicNumber& a);

/// -1, 0, +1 as a < b, a == b, a > b.
int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);

/// Upper bound on the magnitude of every real root (Cauchy).
Rational root_bound(const QPoly& p);

/// Descartes bound on the roots of p in the open interval (lo, hi): the number
/// of sign variations of the Moebius-transformed coefficients.
int descartes_variations(const QPoly& p, const Rational& lo, const Rational& hi);

Interval evaluate(const QPoly& p, const Interval& x);

/// Human-readable form, e.g. `x^2 - 2`.
std::string polynomial_string(const QPoly& p, const std::string& var = "x");

}  // namespace cfe
