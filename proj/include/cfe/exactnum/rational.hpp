#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cfe {

using Integer = mpz_class;
/// Exact rational; GMP keeps it canonical (lowest terms, positive denominator).
using Rational = mpq_class;

inline int sign(const Rational& q) { return sgn(q); }
inline int sign(const Integer& z) { return sgn(z); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline Rational inverse(const Rational& q) { return Rational(1) / q; }

/// Parses `p`, `-p`, `p/q` or a finite decimal `1.25`. Throws DomainError.
Rational parse_rational(std::string_view text);

/// `p` or `p/q`; the exact-string form used in every JSON export.
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

/// The rational with the smallest denominator (then smallest magnitude) in the
/// open interval (lo, hi). Requires lo < hi.
Rational simplest_between(const Rational& lo, const Rational& hi);

Integer binomial(unsigned long n, unsigned long k);
Integer pow(const Integer& base, unsigned long exp);
Rational pow(const Rational& base, unsigned long exp);

}  // namespace cfe
