#pragma once

#include <algorithm>
#include <ostream>

#include "cfe/exactnum/rational.hpp"

namespace cfe {

/// Closed interval [lo, hi] with exact rational endpoints.
class Interval {
 public:
  Interval() = default;
  explicit Interval(const Rational& point) : lo_(point), hi_(point) {}
  Interval(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  Rational width() const { return hi_ - lo_; }
  Rational midpoint() const { return (lo_ + hi_) / 2; }

  bool contains(const Rational& x) const { return lo_ <= x && x <= hi_; }
  bool contains_zero() const { return sgn(lo_) <= 0 && sgn(hi_) >= 0; }
  /// Sign shared by every point of the interval, or 0 when it straddles zero.
  int certain_sign() const {
    if (sgn(lo_) > 0) return 1;
    if (sgn(hi_) < 0) return -1;
    return 0;
  }
  Rational magnitude() const { return std::max(Rational(abs(lo_)), Rational(abs(hi_))); }

  friend Interval operator+(const Interval& a, const Interval& b) { return {a.lo_ + b.lo_, a.hi_ + b.hi_}; }
  friend Interval operator-(const Interval& a, const Interval& b) { return {a.lo_ - b.hi_, a.hi_ - b.lo_}; }
  friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
  friend Interval operator*(const Interval& a, const Interval& b) {
    if (a.lo_ == a.hi_) return scale(b, a.lo_);
    if (b.lo_ == b.hi_) return scale(a, b.lo_);
    Rational p1 = a.lo_ * b.lo_, p2 = a.lo_ * b.hi_, p3 = a.hi_ * b.lo_, p4 = a.hi_ * b.hi_;
    return {std::min({p1, p2, p3, p4}), std::max({p1, p2, p3, p4})};
  }

  friend std::ostream& operator<<(std::ostream& os, const Interval& iv) {
    return os << '[' << to_string(iv.lo_) << ", " << to_string(iv.hi_) << ']';
  }

 private:
  static Interval scale(const Interval& a, const Rational& c) {
    if (sgn(c) >= 0) return {a.lo_ * c, a.hi_ * c};
    return {a.hi_ * c, a.lo_ * c};
  }

  Rational lo_;
  Rational hi_;
};

}  // namespace cfe
