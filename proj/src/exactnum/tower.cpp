#include "cfe/exactnum/tower.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "cfe/error.hpp"

namespace cfe {

namespace {

// v mod m, where m is monic of degree >= 1 in the generator of the same level.
void reduce_in_place(std::vector<AlgElem>& v, const KPoly& m) {
  const std::size_t d = static_cast<std::size_t>(m.degree());
  while (v.size() > d) {
    AlgElem top = v.back();
    v.pop_back();
    if (top.is_rational() && sgn(top.rational()) == 0) continue;
    const std::size_t base = v.size() - d;
    for (std::size_t j = 0; j < d; ++j) v[base + j] = v[base + j] - top * m[j];
  }
}

}  // namespace

int AlgElem::depth() const { return level_ ? level_->depth() : 0; }

AlgElem AlgElem::generator(const LevelPtr& level) { return make(level, {AlgElem(Rational(0)), AlgElem(Rational(1))}); }

std::vector<AlgElem> AlgElem::view(const LevelPtr& level) const {
  if (level_ == level) return c_;
  assert(depth() < level->depth());
  return {*this};
}

AlgElem AlgElem::make(const LevelPtr& level, std::vector<AlgElem> coeffs) {
  if (coeffs.size() > static_cast<std::size_t>(level->minpoly_.degree())) reduce_in_place(coeffs, level->minpoly_);
  while (!coeffs.empty() && coeffs.back().structurally_zero()) coeffs.pop_back();
  if (coeffs.empty()) return {};
  if (coeffs.size() == 1) return std::move(coeffs.front());
  AlgElem e;
  e.level_ = level;
  e.c_ = std::move(coeffs);
  return e;
}

AlgElem operator+(const AlgElem& a, const AlgElem& b) {
  if (!a.level_ && !b.level_) return AlgElem(Rational(a.q_ + b.q_));
  if (a.structurally_zero()) return b;
  if (b.structurally_zero()) return a;
  const LevelPtr& level = a.depth() >= b.depth() ? a.level_ : b.level_;
  std::vector<AlgElem> va = a.view(level);
  std::vector<AlgElem> vb = b.view(level);
  if (va.size() < vb.size()) va.resize(vb.size());
  for (std::size_t i = 0; i < vb.size(); ++i) va[i] = va[i] + vb[i];
  return AlgElem::make(level, std::move(va));
}

AlgElem operator-(const AlgElem& a) {
  if (!a.level_) return AlgElem(Rational(-a.q_));
  AlgElem r = a;
  for (auto& c : r.c_) c = -c;
  return r;
}

AlgElem operator-(const AlgElem& a, const AlgElem& b) { return a + (-b); }

AlgElem operator*(const AlgElem& a, const AlgElem& b) {
  if (!a.level_ && !b.level_) return AlgElem(Rational(a.q_ * b.q_));
  if (a.structurally_zero() || b.structurally_zero()) return {};
  if (a.depth() != b.depth()) {
    const AlgElem& hi = a.depth() > b.depth() ? a : b;
    const AlgElem& lo = a.depth() > b.depth() ? b : a;
    std::vector<AlgElem> v(hi.c_.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = hi.c_[i] * lo;
    return AlgElem::make(hi.level_, std::move(v));
  }
  assert(a.level_ == b.level_ && "elements from different towers");
  std::vector<AlgElem> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].structurally_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] = v[i + j] + a.c_[i] * b.c_[j];
  }
  return AlgElem::make(a.level_, std::move(v));
}

Interval enclosure(const AlgElem& a) {
  if (!a.level_) return Interval(a.q_);
  const Interval x = a.level_->interval();
  Interval acc(Rational(0));
  for (std::size_t i = a.c_.size(); i-- > 0;) acc = acc * x + enclosure(a.c_[i]);
  return acc;
}

bool is_zero(const AlgElem& a) {
  if (!a.level_) return sgn(a.q_) == 0;
  if (enclosure(a).certain_sign() != 0) return false;
  const LevelPtr& level = a.level_;
  KPoly as_poly(a.c_);
  if (as_poly.degree() <= 0) return as_poly.is_zero();
  KPoly g = gcd(level->minpoly_, as_poly);
  if (g.degree() == 0) return false;
  if (level->generator_is_root_of(g)) {
    level->set_minpoly(std::move(g));
    return true;
  }
  level->set_minpoly(exact_quotient(level->minpoly_, g));
  return false;
}

int sign(const AlgElem& a) {
  if (!a.level_) return sgn(a.q_);
  int s = enclosure(a).certain_sign();
  if (s != 0) return s;
  if (is_zero(a)) return 0;
  for (;;) {
    a.level_->refine_chain();
    s = enclosure(a).certain_sign();
    if (s != 0) return s;
  }
}

AlgElem inverse(const AlgElem& a) {
  if (!a.level_) {
    if (sgn(a.q_) == 0) throw DomainError("inverse of zero");
    return AlgElem(Rational(1 / a.q_));
  }
  if (is_zero(a)) throw DomainError("inverse of zero");
  const LevelPtr& level = a.level_;
  for (;;) {
    KPoly as_poly(a.c_);
    if (as_poly.degree() == 0) return inverse(as_poly[0]);
    auto [g, s, t] = extended_gcd(as_poly, level->minpoly_);
    if (g.degree() == 0) return AlgElem::make(level, s.coeffs());
    // a does not vanish at the generator, so the generator is a root of the cofactor.
    level->set_minpoly(exact_quotient(level->minpoly_, g));
  }
}

std::string to_string(const AlgElem& a) {
  if (!a.level_) return to_string(a.q_);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = a.c_.size(); i-- > 0;) {
    if (a.c_[i].structurally_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << '(' << to_string(a.c_[i]) << ')';
    if (i >= 1) os << "*a" << a.depth();
    if (i >= 2) os << '^' << i;
  }
  return os.str();
}

ExtensionLevel::ExtensionLevel(LevelPtr parent, KPoly minpoly, Rational lo, Rational hi)
    : parent_(std::move(parent)), depth_(parent_ ? parent_->depth() + 1 : 1), lo_(std::move(lo)), hi_(std::move(hi)) {
  set_minpoly(std::move(minpoly));
  if (lo_ == hi_) {
    exact_ = true;
    set_minpoly(KPoly{AlgElem(Rational(-lo_)), AlgElem(Rational(1))});
  }
}

LevelPtr ExtensionLevel::from_algebraic(const AlgebraicNumber& number) {
  if (number.is_rational()) return nullptr;
  std::vector<AlgElem> c;
  for (const auto& q : number.defining_poly().coeffs()) c.emplace_back(q);
  Interval iv = number.interval();
  return std::make_shared<ExtensionLevel>(nullptr, KPoly(std::move(c)), iv.lo(), iv.hi());
}

void ExtensionLevel::set_minpoly(KPoly m) {
  assert(m.degree() >= 1);
  m = monic(m);
  std::vector<AlgElem> c = m.coeffs();
  c.back() = AlgElem(Rational(1));
  minpoly_ = KPoly::from_normalized(std::move(c));
  sign_lo_ = 0;
}

bool ExtensionLevel::generator_is_root_of(const KPoly& g) {
  if (exact_) return is_zero(g(AlgElem(lo_)));
  return sign(g(AlgElem(lo_))) * sign(g(AlgElem(hi_))) < 0;
}

void ExtensionLevel::bisect() {
  if (exact_) return;
  if (sign_lo_ == 0) sign_lo_ = sign(minpoly_(AlgElem(lo_)));
  Rational mid = (lo_ + hi_) / 2;
  int s = sign(minpoly_(AlgElem(mid)));
  if (s == 0) {
    lo_ = hi_ = mid;
    exact_ = true;
    set_minpoly(KPoly{AlgElem(Rational(-mid)), AlgElem(Rational(1))});
  } else if (s == sign_lo_) {
    lo_ = std::move(mid);
  } else {
    hi_ = std::move(mid);
  }
}

void ExtensionLevel::refine_chain() {
  for (ExtensionLevel* level = this; level != nullptr; level = level->parent_.get()) level->bisect();
}

void FieldRoot::refine() {
  if (exact) return;
  Rational mid = (lo + hi) / 2;
  int s = sign(poly(AlgElem(mid)));
  if (s == 0) {
    lo = hi = mid;
    exact = true;
    return;
  }
  if (s == sign(poly(AlgElem(lo)))) lo = std::move(mid);
  else hi = std::move(mid);
}

Interval evaluate(const KPoly& p, const Interval& x) {
  Interval acc(Rational(0));
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + enclosure(p[i]);
  return acc;
}

namespace {

Integer field_root_bound(const KPoly& p) {
  const AlgElem& lc = p.leading();
  sign(lc);  // forces the enclosure of a nonzero element to exclude zero
  Interval lc_box = enclosure(lc);
  Rational lc_min = std::min(Rational(abs(lc_box.lo())), Rational(abs(lc_box.hi())));
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(enclosure(p[static_cast<std::size_t>(i)]).magnitude() / lc_min));
  return ceil(m + 1);
}

class SturmIsolator {
 public:
  explicit SturmIsolator(const KPoly& p) : p_(p), chain_(sturm_sequence(p)) {}

  void run(std::vector<FieldRoot>& out) {
    Integer b = field_root_bound(p_);
    Rational lo(-b), hi(b);
    isolate(lo, hi, count(lo, hi), out);
  }

 private:
  int variations(const Rational& x) { return sign_variations_at(chain_, x); }
  int count(const Rational& a, const Rational& b) { return variations(a) - variations(b); }

  void isolate(const Rational& lo, const Rational& hi, int n, std::vector<FieldRoot>& out) {
    if (n == 0) return;
    if (n == 1) {
      out.push_back({p_, lo, hi, false});
      return;
    }
    Rational mid = (lo + hi) / 2;
    if (sign(p_(AlgElem(mid))) != 0) {
      isolate(lo, mid, count(lo, mid), out);
      isolate(mid, hi, count(mid, hi), out);
      return;
    }
    out.push_back({p_, mid, mid, true});
    Rational delta = (hi - lo) / 4;
    for (;;) {
      Rational l = mid - delta, r = mid + delta;
      if (sign(p_(AlgElem(l))) != 0 && sign(p_(AlgElem(r))) != 0 && count(l, r) == 1) {
        isolate(lo, l, count(lo, l), out);
        isolate(r, hi, count(r, hi), out);
        return;
      }
      delta /= 2;
    }
  }

  const KPoly& p_;
  std::vector<KPoly> chain_;
};

}  // namespace

std::vector<FieldRoot> isolate_real_roots(const KPoly& p) {
  if (p.is_zero()) throw DomainError("isolate_real_roots: zero polynomial");
  std::vector<FieldRoot> roots;
  if (p.degree() <= 0) return roots;
  KPoly m = monic(p);
  SturmIsolator(m).run(roots);
  return roots;
}

void sort_disjoint(std::vector<FieldRoot>& roots) {
  for (;;) {
    std::sort(roots.begin(), roots.end(), [](const FieldRoot& a, const FieldRoot& b) { return a.lo < b.lo; });
    bool overlap = false;
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
      if (roots[i].hi >= roots[i + 1].lo) {
        overlap = true;
        roots[i].refine();
        roots[i + 1].refine();
      }
    }
    if (!overlap) return;
  }
}

std::vector<KPoly> gcd_free_basis(const std::vector<KPoly>& polys) {
  std::vector<KPoly> basis;
  for (const auto& input : polys) {
    if (input.degree() <= 0) continue;
    KPoly f = squarefree_part(input);
    std::vector<KPoly> next;
    for (auto& b : basis) {
      if (f.degree() <= 0) {
        next.push_back(std::move(b));
        continue;
      }
      KPoly g = gcd(f, b);
      if (g.degree() == 0) {
        next.push_back(std::move(b));
        continue;
      }
      KPoly rest = monic(exact_quotient(b, g));
      f = monic(exact_quotient(f, g));
      next.push_back(std::move(g));
      if (rest.degree() >= 1) next.push_back(std::move(rest));
    }
    if (f.degree() >= 1) next.push_back(std::move(f));
    basis = std::move(next);
  }
  return basis;
}

AlgElem root_as_element(const FieldRoot& root, LevelPtr& top) {
  if (root.exact) return AlgElem(root.lo);
  if (root.poly.degree() == 1) return -(inverse(root.poly.leading()) * root.poly[0]);
  auto level = std::make_shared<ExtensionLevel>(top, root.poly, root.lo, root.hi);
  top = level;
  return AlgElem::generator(level);
}

}  // namespace cfe
