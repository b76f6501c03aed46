#include "cfe/exactnum/rational.hpp"

#include <cctype>

#include "cfe/error.hpp"

namespace cfe {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw DomainError("malformed rational '" + std::string(text) + "'");
    Integer d{std::string(den)};
    if (d == 0) throw DomainError("zero denominator in '" + std::string(text) + "'");
    result = Rational(Integer{std::string(num)}, d);
    result.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw DomainError("malformed decimal '" + std::string(text) + "'");
    Integer num{std::string(whole.empty() ? "0" : whole) + std::string(frac)};
    result = Rational(num, pow(Integer(10), frac.size()));
    result.canonicalize();
  } else {
    if (!all_digits(s)) throw DomainError("malformed rational '" + std::string(text) + "'");
    result = Rational(Integer{std::string(s)});
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_string(const Integer& z) { return z.get_str(); }

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Stern-Brocot descent.
Rational simplest_between(const Rational& lo, const Rational& hi) {
  Integer fl = floor(lo) + 1;
  if (Rational(fl) < hi) {
    // An integer fits; pick the one closest to zero.
    if (lo < 0 && hi > 0) return Rational(0);
    if (hi <= 0) {
      Integer c = ceil(hi) - 1;
      return Rational(c);
    }
    return Rational(fl);
  }
  if (hi <= 0) return -simplest_between(-hi, -lo);
  // lo and hi share the integer part n: lo = n + a, hi = n + b with 0 <= a < b <= 1.
  Integer n = floor(lo);
  Rational a = lo - n;
  Rational b = hi - n;
  if (a == 0) {
    // (n, n+b): the simplest is n + 1/k for the least k with 1/k < b.
    Integer k = floor(Rational(1) / b) + 1;
    return Rational(n) + Rational(1, 1) / Rational(k);
  }
  // 1/b < 1/x < 1/a
  Rational inner = simplest_between(Rational(1) / b, Rational(1) / a);
  return Rational(n) + Rational(1) / inner;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Integer pow(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rational pow(const Rational& base, unsigned long exp) {
  Rational r(pow(base.get_num(), exp), pow(base.get_den(), exp));
  r.canonicalize();
  return r;
}

}  // namespace cfe
