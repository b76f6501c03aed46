#include "cad_internal.hpp"

#include "cfe/polyring/resultant.hpp"

namespace cfe::cad_detail {

namespace {

// Integer-primitive with positive leading coefficient (last variable most
// significant in the term order).
MultiPoly make_primitive(const MultiPoly& p) {
  Integer g = 0, l = 1;
  for (const auto& [e, c] : p.terms()) {
    g = gcd(g, Integer(c.get_num()));
    l = lcm(l, Integer(c.get_den()));
  }
  Rational scale = Rational(l) / Rational(g);
  if (sgn(p.terms().rbegin()->second) < 0) scale = -scale;
  if (scale == 1) return p.without_program();
  return p.scaled(scale).without_program();
}

}  // namespace

void Projector::add(const MultiPoly& input) {
  if (input.is_zero() || input.is_constant()) return;
  MultiPoly p = input.remap(vars_).without_program();
  // Split off monomial factors x_i^e.
  Exponents low(vars_->size(), std::numeric_limits<std::uint32_t>::max());
  for (const auto& [e, c] : p.terms())
    for (std::size_t i = 0; i < e.size(); ++i) low[i] = std::min(low[i], e[i]);
  bool has_monomial = false;
  for (std::size_t i = 0; i < low.size(); ++i)
    if (low[i] > 0) {
      has_monomial = true;
      insert(MultiPoly::variable(vars_, i));
    }
  if (has_monomial) {
    TermMap t;
    for (const auto& [e, c] : p.terms()) {
      Exponents f = e;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] -= low[i];
      t.emplace(std::move(f), c);
    }
    p = MultiPoly::from_terms(vars_, std::move(t));
    if (p.is_constant()) return;
  }
  insert(make_primitive(p));
}

void Projector::insert(MultiPoly p) {
  int level = p.main_variable();
  auto& bucket = levels_[static_cast<std::size_t>(level)];
  for (const auto& q : bucket)
    if (q.terms() == p.terms()) return;
  bucket.push_back(std::move(p));
}

std::vector<std::vector<MultiPoly>> Projector::run() {
  for (std::size_t k = levels_.size(); k-- > 1;) {
    const std::vector<MultiPoly> level = levels_[k];
    std::vector<std::vector<MultiPoly>> reducta(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      MultiPoly r = level[i];
      while (!r.is_zero()) {
        reducta[i].push_back(r);
        if (r.leading_coefficient(k).is_constant()) break;
        r = r.reductum(k);
      }
    }
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (const auto& r : reducta[i]) {
        add(r.leading_coefficient(k));
        if (r.degree_in(k) >= 2)
          for (const auto& q : principal_subresultant_coefficients(r, r.derivative(k), k)) add(q);
      }
    }
    for (std::size_t i = 0; i < level.size(); ++i)
      for (std::size_t j = i + 1; j < level.size(); ++j)
        for (const auto& r : reducta[i])
          if (r.degree_in(k) >= 1)
            for (const auto& q : principal_subresultant_coefficients(r, level[j], k)) add(q);
  }
  return levels_;
}

}  // namespace cfe::cad_detail
