#include "cfe/exactnum/algebraic.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

#include "cfe/error.hpp"

namespace cfe {

namespace {

// Coefficients of p(x + 1), in place.
void taylor_shift_one(std::vector<Rational>& c) {
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j-- > i;) c[j] += c[j + 1];
}

int variations(const std::vector<Rational>& c) {
  int v = 0;
  int last = 0;
  for (const auto& x : c) {
    int s = sgn(x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++v;
    last = s;
  }
  return v;
}

struct RawRoot {
  Rational lo;
  Rational hi;
  bool exact;
};

// Shrinks (lo, hi), which holds exactly one simple root of p, until neither
// endpoint is a root. Uses Descartes parity to locate the root.
RawRoot separate_endpoints(const QPoly& p, Rational lo, Rational hi) {
  while (sgn(p(lo)) == 0 || sgn(p(hi)) == 0) {
    Rational mid = (lo + hi) / 2;
    if (sgn(p(mid)) == 0) return {mid, mid, true};
    if (descartes_variations(p, lo, mid) % 2 == 1) hi = mid;
    else lo = mid;
  }
  return {lo, hi, false};
}

void isolate_in(const QPoly& p, const Rational& lo, const Rational& hi, std::vector<RawRoot>& out) {
  int v = descartes_variations(p, lo, hi);
  if (v == 0) return;
  if (v == 1) {
    out.push_back(separate_endpoints(p, lo, hi));
    return;
  }
  Rational mid = (lo + hi) / 2;
  if (sgn(p(mid)) == 0) out.push_back({mid, mid, true});
  isolate_in(p, lo, mid, out);
  isolate_in(p, mid, hi, out);
}

}  // namespace

Interval evaluate(const QPoly& p, const Interval& x) {
  Interval acc(Rational(0));
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + Interval(p[i]);
  return acc;
}

Rational root_bound(const QPoly& p) {
  assert(p.degree() >= 1);
  Rational m = 0;
  Rational lc = abs(p.leading());
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p[static_cast<std::size_t>(i)]) / lc));
  return m + 1;
}

int descartes_variations(const QPoly& p, const Rational& lo, const Rational& hi) {
  // q(x) = p(lo + (hi - lo) x), then (x+1)^d q(1/(x+1)).
  const std::size_t n = p.size();
  std::vector<Rational> c(p.coeffs().begin(), p.coeffs().end());
  // p(x + lo)
  {
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j-- > i;) c[j] += lo * c[j + 1];
  }
  Rational scale = hi - lo;
  Rational f = 1;
  for (std::size_t i = 0; i < n; ++i) {
    c[i] *= f;
    f *= scale;
  }
  std::reverse(c.begin(), c.end());
  taylor_shift_one(c);
  return variations(c);
}

AlgebraicNumber::AlgebraicNumber(const Rational& value)
    : poly_({Rational(-value), Rational(1)}), lo_(value), hi_(value), exact_(true) {}

AlgebraicNumber::AlgebraicNumber(QPoly defining, Rational lo, Rational hi)
    : poly_(std::move(defining)), lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_ == hi_) {
    exact_ = true;
    poly_ = QPoly{Rational(-lo_), Rational(1)};
  } else if (poly_.degree() == 1) {
    // The root of a linear polynomial is rational.
    Rational r = -poly_[0] / poly_[1];
    lo_ = hi_ = r;
    exact_ = true;
    poly_ = QPoly{Rational(-r), Rational(1)};
  }
}

void AlgebraicNumber::refine() const {
  if (exact_) return;
  if (sign_lo_ == 0) sign_lo_ = sgn(poly_(lo_));
  Rational mid = (lo_ + hi_) / 2;
  int s = sgn(poly_(mid));
  if (s == 0) {
    lo_ = hi_ = mid;
    exact_ = true;
  } else if (s == sign_lo_) {
    lo_ = mid;
  } else {
    hi_ = mid;
  }
}

void AlgebraicNumber::refine_below(const Rational& width) const {
  while (!exact_ && hi_ - lo_ >= width) refine();
}

std::string AlgebraicNumber::to_string() const {
  if (exact_) return cfe::to_string(lo_);
  std::ostringstream os;
  os << "root(" << polynomial_string(poly_) << ", [" << cfe::to_string(lo_) << ", " << cfe::to_string(hi_) << "])";
  return os.str();
}

std::string polynomial_string(const QPoly& p, const std::string& var) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    Rational c = p[i];
    if (sgn(c) == 0) continue;
    if (sgn(c) < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    if (c != 1 || i == 0) os << cfe::to_string(c) << (i > 0 ? "*" : "");
    if (i >= 1) os << var;
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

std::vector<AlgebraicNumber> isolate_real_roots(const QPoly& p) {
  if (p.is_zero()) throw DomainError("isolate_real_roots: zero polynomial");
  QPoly sf = squarefree_part(p);
  std::vector<AlgebraicNumber> roots;
  if (sf.degree() <= 0) return roots;

  std::vector<RawRoot> raw;
  QPoly work = sf;
  if (sgn(work[0]) == 0) {
    raw.push_back({Rational(0), Rational(0), true});
    work = exact_quotient(work, QPoly::x());
  }
  if (work.degree() >= 1) {
    Rational bound = root_bound(work);
    Integer b = ceil(bound);
    isolate_in(work, Rational(0), Rational(b), raw);
    // Negative roots via p(-x).
    std::vector<Rational> neg(work.coeffs().begin(), work.coeffs().end());
    for (std::size_t i = 1; i < neg.size(); i += 2) neg[i] = -neg[i];
    QPoly mirrored(std::move(neg));
    std::vector<RawRoot> negative;
    isolate_in(mirrored, Rational(0), Rational(b), negative);
    for (auto& r : negative) raw.push_back({Rational(-r.hi), Rational(-r.lo), r.exact});
  }
  std::sort(raw.begin(), raw.end(), [](const RawRoot& a, const RawRoot& b) { return a.lo < b.lo; });
  roots.reserve(raw.size());
  for (auto& r : raw) {
    if (r.exact) roots.emplace_back(r.lo);
    else roots.emplace_back(work, r.lo, r.hi);
  }
  return roots;
}

int sign_at(const QPoly& q, const AlgebraicNumber& a) {
  if (a.is_rational()) return sgn(q(a.rational_value()));
  if (q.is_zero()) return 0;
  int s = evaluate(q, a.interval()).certain_sign();
  if (s != 0) return s;
  QPoly g = gcd(q, a.defining_poly());
  if (g.degree() >= 1) {
    Interval iv = a.interval();
    if (sgn(g(iv.lo())) * sgn(g(iv.hi())) < 0) return 0;
  }
  for (;;) {
    a.refine();
    if (a.is_rational()) return sgn(q(a.rational_value()));
    s = evaluate(q, a.interval()).certain_sign();
    if (s != 0) return s;
  }
}

int compare(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational() && b.is_rational()) return cmp(a.rational_value(), b.rational_value()) < 0 ? -1 : (a.rational_value() == b.rational_value() ? 0 : 1);
  if (sign_at(b.defining_poly(), a) == 0) {
    if (b.is_rational()) return 0;
    // a is a root of b's polynomial, whose only root in (lo, hi) is b; the
    // endpoints are not roots, so a either lands strictly inside or outside.
    for (;;) {
      Interval ia = a.interval(), ib = b.interval();
      if (ib.lo() < ia.lo() && ia.hi() < ib.hi()) return 0;
      if (ia.hi() < ib.lo()) return -1;
      if (ib.hi() < ia.lo()) return 1;
      a.refine();
    }
  }
  for (;;) {
    Interval ia = a.interval(), ib = b.interval();
    if (ia.hi() < ib.lo()) return -1;
    if (ib.hi() < ia.lo()) return 1;
    a.refine();
    b.refine();
  }
}

}  // namespace cfe
