#pragma once

#include <cassert>
#include <cstddef>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cfe/exactnum/rational.hpp"

namespace cfe {

/// Dense univariate polynomial over a coefficient field K.
///
/// K must be default-constructible to zero, constructible from Rational, closed
/// under + - *, and expose the free functions `is_zero(K)`, `sign(K)` and
/// `inverse(K)` through ADL. Rational and AlgElem both qualify. Coefficients
/// are stored lowest degree first; the leading coefficient is never zero, where
/// "zero" is decided by `is_zero`, which for algebraic coefficients is an exact
/// test rather than a structural one.
template <class K>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { normalize(); }
  UPoly(std::initializer_list<K> coeffs) : c_(coeffs) { normalize(); }

  static UPoly constant(K c) { return UPoly(std::vector<K>{std::move(c)}); }
  static UPoly monomial(K c, std::size_t degree) {
    std::vector<K> v(degree + 1);
    v[degree] = std::move(c);
    return UPoly(std::move(v));
  }
  static UPoly x() { return monomial(K(Rational(1)), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const K& operator[](std::size_t i) const { return c_[i]; }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(); }
  const K& leading() const { return c_.back(); }
  const std::vector<K>& coeffs() const { return c_; }

  /// Horner evaluation at any X with X*X, X+K defined (K, Rational-embedded K, ...).
  template <class X>
  X operator()(const X& x) const {
    X acc{};
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + X(c_[i]);
    return acc;
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * K(Rational(static_cast<long>(i)));
    return UPoly(std::move(d));
  }

  UPoly operator-() const {
    std::vector<K> v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = -c_[i];
    return from_normalized(std::move(v));
  }

  friend UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<K> v(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i < a.c_.size() && i < b.c_.size()) v[i] = a.c_[i] + b.c_[i];
      else if (i < a.c_.size()) v[i] = a.c_[i];
      else v[i] = b.c_[i];
    }
    return UPoly(std::move(v));
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<K> v(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
    return UPoly(std::move(v));
  }
  friend UPoly operator*(const K& s, const UPoly& a) {
    std::vector<K> v(a.c_.size());
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] = s * a.c_[i];
    return UPoly(std::move(v));
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return (a - b).is_zero(); }

  /// Builds without re-normalizing; callers guarantee a nonzero leading coefficient.
  static UPoly from_normalized(std::vector<K> v) {
    UPoly p;
    p.c_ = std::move(v);
    return p;
  }

 private:
  void normalize() {
    using cfe::is_zero;
    while (!c_.empty() && is_zero(c_.back())) c_.pop_back();
  }

  std::vector<K> c_;
};

template <class K>
UPoly<K> monic(const UPoly<K>& p) {
  if (p.is_zero()) return p;
  return inverse(p.leading()) * p;
}

/// Euclidean division over a field: a = q*b + r with deg r < deg b.
template <class K>
std::pair<UPoly<K>, UPoly<K>> divrem(const UPoly<K>& a, const UPoly<K>& b) {
  assert(!b.is_zero());
  std::vector<K> r = a.coeffs();
  const int db = b.degree();
  if (a.degree() < db) return {UPoly<K>{}, a};
  std::vector<K> q(static_cast<std::size_t>(a.degree() - db + 1));
  const K lc_inv = inverse(b.leading());
  for (int top = a.degree(); top >= db; --top) {
    K factor = r[static_cast<std::size_t>(top)] * lc_inv;
    const int shift = top - db;
    q[static_cast<std::size_t>(shift)] = factor;
    // The top coefficient cancels by construction; drop it without testing.
    for (int j = 0; j < db; ++j)
      r[static_cast<std::size_t>(shift + j)] = r[static_cast<std::size_t>(shift + j)] - factor * b[static_cast<std::size_t>(j)];
    r.pop_back();
  }
  return {UPoly<K>(std::move(q)), UPoly<K>(std::move(r))};
}

template <class K>
UPoly<K> rem(const UPoly<K>& a, const UPoly<K>& b) {
  return divrem(a, b).second;
}

/// Exact quotient; b must divide a.
template <class K>
UPoly<K> exact_quotient(const UPoly<K>& a, const UPoly<K>& b) {
  auto [q, r] = divrem(a, b);
  assert(r.is_zero());
  return q;
}

/// Monic gcd (zero when both inputs are zero).
template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  while (!b.is_zero()) {
    UPoly<K> r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Returns (g, s, t) with s*a + t*b = g, g monic.
template <class K>
std::tuple<UPoly<K>, UPoly<K>, UPoly<K>> extended_gcd(const UPoly<K>& a, const UPoly<K>& b) {
  UPoly<K> r0 = a, r1 = b;
  UPoly<K> s0 = UPoly<K>::constant(K(Rational(1))), s1;
  UPoly<K> t0, t1 = UPoly<K>::constant(K(Rational(1)));
  while (!r1.is_zero()) {
    auto [q, r] = divrem(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UPoly<K> s2 = s0 - q * s1;
    UPoly<K> t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  K inv = inverse(r0.leading());
  return {inv * r0, inv * s0, inv * t0};
}

/// Monic square-free part p / gcd(p, p').
template <class K>
UPoly<K> squarefree_part(const UPoly<K>& p) {
  if (p.degree() <= 0) return monic(p);
  UPoly<K> g = gcd(p, p.derivative());
  return monic(exact_quotient(p, g));
}

/// Canonical Sturm chain p, p', -rem(...), ...
template <class K>
std::vector<UPoly<K>> sturm_sequence(const UPoly<K>& p) {
  std::vector<UPoly<K>> seq;
  if (p.is_zero()) return seq;
  seq.push_back(p);
  UPoly<K> d = p.derivative();
  while (!d.is_zero()) {
    seq.push_back(d);
    UPoly<K> r = -rem(seq[seq.size() - 2], seq.back());
    d = std::move(r);
  }
  return seq;
}

/// Sign variations of the chain evaluated at a rational point; zeros skipped.
template <class K>
int sign_variations_at(const std::vector<UPoly<K>>& chain, const Rational& x) {
  using cfe::sign;
  int variations = 0;
  int last = 0;
  for (const auto& q : chain) {
    int s = sign(q(K(x)));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

template <class K>
std::string to_string(const UPoly<K>& p, const std::string& var = "x") {
  using cfe::to_string;
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    using cfe::is_zero;
    if (is_zero(p[i])) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << to_string(p[i]) << ')';
    if (i >= 1) os << '*' << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

using QPoly = UPoly<Rational>;

}  // namespace cfe
