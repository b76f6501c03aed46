#include "cfe/cad/cad.hpp"
#include "cfe/error.hpp"
#include "cfe/polyring/resultant.hpp"

namespace cfe {

namespace {

// Tower element as a polynomial in the generators a1..ad (variable i-1 is
// the generator of depth i).
MultiPoly element_poly(const AlgElem& e, const VarList& vars) {
  if (e.is_rational()) return MultiPoly::constant(vars, e.rational());
  MultiPoly g = MultiPoly::variable(vars, static_cast<std::size_t>(e.depth() - 1));
  MultiPoly acc = MultiPoly::constant(vars, Rational(0));
  const auto& c = e.coefficients();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * g + element_poly(c[i], vars);
  return acc;
}

bool overlaps(const Interval& a, const Interval& b) { return a.lo() <= b.hi() && b.lo() <= a.hi(); }

}  // namespace

AlgebraicNumber to_algebraic_number(const AlgElem& value) {
  if (value.is_rational()) return AlgebraicNumber(value.rational());
  const int d = value.depth();
  std::vector<std::string> names;
  for (int i = 1; i <= d; ++i) names.push_back("a" + std::to_string(i));
  names.push_back("y");
  VarList vars = make_var_list(names);
  const std::size_t y = static_cast<std::size_t>(d);

  // Eliminate the generators from y - value, top level first.
  MultiPoly p = MultiPoly::variable(vars, y) - element_poly(value, vars);
  for (ExtensionLevel* level = value.level().get(); level; level = level->parent().get()) {
    const std::size_t a = static_cast<std::size_t>(level->depth() - 1);
    if (p.degree_in(a) <= 0) continue;
    const KPoly& m = level->minpoly();
    MultiPoly mp = MultiPoly::constant(vars, Rational(0));
    MultiPoly g = MultiPoly::variable(vars, a);
    for (std::size_t i = m.size(); i-- > 0;) mp = mp * g + element_poly(m[i], vars);
    p = resultant(p, mp, names[a]).remap(vars);
  }
  QPoly norm = p.to_univariate(y);
  std::vector<AlgebraicNumber> roots = isolate_real_roots(norm);
  for (;;) {
    Interval box = enclosure(value);
    std::vector<std::size_t> hits;
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (overlaps(roots[i].interval(), box)) hits.push_back(i);
    if (hits.size() == 1) return roots[hits[0]];
    if (hits.empty()) throw Error("norm computation lost the value");
    for (auto i : hits) roots[i].refine();
    value.level()->refine_chain();
  }
}

std::string sample_string(const AlgElem& value) { return to_algebraic_number(value).to_string(); }

}  // namespace cfe
