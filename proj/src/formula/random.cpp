#include "cfe/formula/random.hpp"

namespace cfe {

MultiPoly RandomInputs::poly(const VarList& vars, int max_degree, int max_terms) {
  for (;;) {
    MultiPoly p = MultiPoly::constant(vars, Rational(draw(-3, 3)));
    long terms = draw(1, max_terms);
    for (long t = 0; t < terms; ++t) {
      MultiPoly m = MultiPoly::constant(vars, Rational(draw(-3, 3)));
      long budget = draw(1, max_degree);
      while (budget-- > 0) {
        if (draw(0, 3) == 0) break;
        m = m * MultiPoly::variable(vars, static_cast<std::size_t>(draw(0, static_cast<long>(vars->size()) - 1)));
      }
      p = p + m;
    }
    if (!p.is_constant()) return p;
  }
}

std::vector<MultiPoly> RandomInputs::family(const VarList& vars, std::size_t max_polys, int max_degree, int max_terms) {
  std::vector<MultiPoly> out;
  long k = draw(1, static_cast<long>(max_polys));
  for (long i = 0; i < k; ++i) out.push_back(poly(vars, max_degree, max_terms));
  return out;
}

SetFormula RandomInputs::set_formula(const std::vector<MultiPoly>& family, int depth) {
  long kind = depth <= 0 ? 0 : draw(0, 3);
  switch (kind) {
    case 0: {
      const MultiPoly& p = family[static_cast<std::size_t>(draw(0, static_cast<long>(family.size()) - 1))];
      return make_set_atom(p, static_cast<SetRelation>(draw(0, 5)));
    }
    case 1: return make_not(set_formula(family, depth - 1));
    case 2: return make_and(set_formula(family, depth - 1), set_formula(family, depth - 1));
    default: return make_or(set_formula(family, depth - 1), set_formula(family, depth - 1));
  }
}

Formula RandomInputs::formula(const std::vector<MultiPoly>& family, int depth) {
  long kind = depth <= 0 ? 0 : draw(0, 3);
  switch (kind) {
    case 0: {
      const MultiPoly& p = family[static_cast<std::size_t>(draw(0, static_cast<long>(family.size()) - 1))];
      return make_atom(p, static_cast<Relation>(draw(0, 2)));
    }
    case 1: return make_sum(formula(family, depth - 1), formula(family, depth - 1));
    case 2: return make_product(formula(family, depth - 1), formula(family, depth - 1));
    default: return make_scalar_mul(Value(rational(4, 2)), formula(family, depth - 1));
  }
}

}  // namespace cfe
