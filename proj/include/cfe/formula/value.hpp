#pragma once

#include <string>

#include "cfe/exactnum/rational.hpp"
#include "cfe/exactnum/upoly.hpp"

namespace cfe {

/// Element of the value algebra Q[T]; rationals are the constants.
class Value {
 public:
  Value() = default;
  Value(const Rational& q) : p_(QPoly::constant(q)) {}  // NOLINT(google-explicit-constructor)
  Value(long q) : Value(Rational(q)) {}                  // NOLINT(google-explicit-constructor)
  explicit Value(QPoly p) : p_(std::move(p)) {}

  static Value T() { return Value(QPoly::x()); }

  bool is_rational() const { return p_.degree() <= 0; }
  /// Valid only when is_rational().
  Rational rational() const { return p_.is_zero() ? Rational(0) : p_[0]; }
  const QPoly& poly() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  /// Specialization T := t.
  Rational at(const Rational& t) const { return p_(t); }

  friend Value operator+(const Value& a, const Value& b) { return Value(a.p_ + b.p_); }
  friend Value operator-(const Value& a, const Value& b) { return Value(a.p_ - b.p_); }
  friend Value operator*(const Value& a, const Value& b) { return Value(a.p_ * b.p_); }
  friend Value operator-(const Value& a) { return Value(-a.p_); }
  friend bool operator==(const Value& a, const Value& b) { return a.p_.coeffs() == b.p_.coeffs(); }
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  /// Total order (degree, then coefficients from the top) for use as a key.
  friend bool operator<(const Value& a, const Value& b);

  /// `3`, `-1/2`, `2*T + 1`.
  std::string to_string() const;

 private:
  QPoly p_;
};

inline bool is_zero(const Value& v) { return v.is_zero(); }

/// Polynomial in the post-composition variable u with value-algebra
/// coefficients.
using ValuePoly = UPoly<Value>;

std::string to_string(const ValuePoly& h);

}  // namespace cfe
