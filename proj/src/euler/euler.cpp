#include "cfe/euler/euler.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "cfe/error.hpp"

namespace cfe {

namespace {

int parity(int dim) { return dim % 2 == 0 ? 1 : -1; }

VarList resolve_order(const VarList& formula_vars, const EulerOptions& options) {
  if (!options.order) return formula_vars;
  for (const auto& v : *formula_vars)
    if (std::find(options.order->begin(), options.order->end(), v) == options.order->end())
      throw DomainError("variable '" + v + "' is missing from the variable order");
  return options.order;
}

// Maps each evaluator family index to the tree family index.
std::vector<std::size_t> family_map(const CadTree& tree, const PolyFamily& fam) {
  std::vector<std::size_t> out;
  for (const auto& p : fam.polys) {
    auto it = std::find(tree.family().begin(), tree.family().end(), p);
    if (it == tree.family().end()) throw DomainError("polynomial " + p.to_string() + " is not in the decomposition family");
    out.push_back(static_cast<std::size_t>(it - tree.family().begin()));
  }
  return out;
}

std::vector<int> pick(const std::vector<int>& signs, const std::vector<std::size_t>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(signs[i]);
  return out;
}

}  // namespace

long chi_of_cells(const CadTree& tree, const std::vector<std::size_t>& cells) {
  long chi = 0;
  for (auto c : cells) chi += parity(tree.cells().at(c).dim);
  return chi;
}

long chi_of_realization(const CadTree& tree, const std::vector<std::pair<std::size_t, int>>& sigma) {
  std::vector<bool> assigned(tree.family().size(), false);
  for (const auto& [i, s] : sigma)
    if (i < assigned.size()) assigned[i] = true;
  auto cells = tree.realize_sign_condition(sigma);
  if (std::find(assigned.begin(), assigned.end(), false) != assigned.end())
    throw DomainError("sign condition must assign a sign to every polynomial of the family");
  return chi_of_cells(tree, cells);
}

std::vector<std::pair<std::vector<int>, long>> chi_by_sign_condition(const CadTree& tree) {
  std::map<std::vector<int>, long> by;
  for (const auto& c : tree.cells()) by[c.signs] += parity(c.dim);
  return {by.begin(), by.end()};
}

Value integrate_on(const CadTree& tree, const Formula& f) {
  FormulaEvaluator ev(f, tree.variables());
  std::vector<std::size_t> idx = family_map(tree, ev.family());
  Value total;
  for (const auto& c : tree.cells()) {
    Value v = ev.on_signs(pick(c.signs, idx));
    total = parity(c.dim) > 0 ? total + v : total - v;
  }
  return total;
}

EulerResult euler_integrate(const Formula& f, const EulerOptions& options) {
  VarList order = resolve_order(formula_variables(f), options);
  FormulaEvaluator ev(f, order);
  CadTree tree = build_cad(ev.family().polys, order, options.cad);
  Value total;
  for (const auto& c : tree.cells()) {
    Value v = ev.on_signs(c.signs);
    total = parity(c.dim) > 0 ? total + v : total - v;
  }
  return {total, tree.cells().size(), order};
}

long chi_of_formula_set(const SetFormula& phi, const EulerOptions& options) {
  VarList order = resolve_order(set_formula_variables(phi), options);
  SetEvaluator ev(phi, order);
  CadTree tree = build_cad(ev.family().polys, order, options.cad);
  long chi = 0;
  for (const auto& c : tree.cells())
    if (ev.on_signs(c.signs)) chi += parity(c.dim);
  return chi;
}

Pushforward pushforward(const Formula& f, std::size_t base_dim, const EulerOptions& options) {
  VarList order = resolve_order(formula_variables(f), options);
  if (base_dim > order->size())
    throw DomainError("base dimension " + std::to_string(base_dim) + " exceeds the " + std::to_string(order->size()) +
                      " variables of the formula");
  FormulaEvaluator ev(f, order);
  Pushforward out{build_cad(ev.family().polys, order, options.cad), base_dim, {}};
  const auto& base = out.tree.induced(base_dim);
  for (std::size_t b = 0; b < base.size(); ++b) {
    Value v;
    for (std::size_t i = base[b].top_begin; i < base[b].top_end; ++i) {
      const CadCell& c = out.tree.cells()[i];
      Value w = ev.on_signs(c.signs);
      v = parity(c.dim - base[b].dim) > 0 ? v + w : v - w;
    }
    out.values.push_back({b, v});
  }
  return out;
}

Value Pushforward::integral() const {
  Value total;
  for (std::size_t i = 0; i < values.size(); ++i)
    total = parity(base_cell(i).dim) > 0 ? total + values[i].value : total - values[i].value;
  return total;
}

Value Pushforward::at(const std::vector<Rational>& base_point) const {
  if (base_point.size() != base_dim)
    throw DomainError("base point has " + std::to_string(base_point.size()) + " coordinates, expected " +
                      std::to_string(base_dim));
  return values[tree.locate(base_point, base_dim)].value;
}

std::string Pushforward::to_json() const {
  nlohmann::json out;
  std::vector<std::string> base_vars(tree.variables()->begin(), tree.variables()->begin() + static_cast<long>(base_dim));
  out["base_variables"] = base_vars;
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const CadCell& c = base_cell(i);
    nlohmann::json sample = nlohmann::json::array();
    for (const auto& x : c.sample) sample.push_back(sample_string(x));
    cells.push_back({{"index", c.index}, {"dim", c.dim}, {"sample", sample}, {"value", values[i].value.to_string()}});
  }
  out["base_cells"] = cells;
  return out.dump();
}

std::optional<Formula> pushforward_formula(const Pushforward& p) {
  const std::size_t n = p.tree.dimension();
  VarList base_vars = make_var_list(
      std::vector<std::string>(p.tree.variables()->begin(), p.tree.variables()->begin() + static_cast<long>(p.base_dim)));
  std::vector<MultiPoly> polys;
  for (std::size_t k = 1; k <= p.base_dim; ++k)
    for (const auto& q : p.tree.projection(k)) polys.push_back(q);

  std::map<std::vector<int>, Value> by_signs;
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    std::vector<AlgElem> point = p.base_cell(i).sample;
    point.resize(n, AlgElem(Rational(0)));
    std::vector<int> s;
    for (const auto& q : polys) s.push_back(sign(q.evaluate_in<AlgElem>(point)));
    auto [it, fresh] = by_signs.emplace(s, p.values[i].value);
    if (!fresh && it->second != p.values[i].value) return std::nullopt;
  }

  std::optional<Formula> sum;
  for (const auto& [s, v] : by_signs) {
    if (v.is_zero()) continue;
    std::optional<Formula> prod;
    for (std::size_t j = 0; j < polys.size(); ++j) {
      Relation r = s[j] == 0 ? Relation::Eq : (s[j] > 0 ? Relation::Gt : Relation::Lt);
      Formula a = make_atom(polys[j].remap(base_vars), r);
      prod = prod ? make_product(*prod, a) : a;
    }
    Formula term = prod ? make_scalar_mul(v, *prod) : make_constant(v);
    sum = sum ? make_sum(*sum, term) : term;
  }
  return sum ? *sum : make_constant(Value(0));
}

FubiniReport fubini_check(const Formula& f, std::size_t base_dim, const EulerOptions& options) {
  FubiniReport r;
  r.total = euler_integrate(f, options).value;
  Pushforward p = pushforward(f, base_dim, options);
  r.via_pushforward = p.integral();
  r.base_cells = p.values.size();
  r.holds = r.total == r.via_pushforward;
  return r;
}

ChiBound eval_chi_bound(long s, long d, long n) {
  if (s < 1) throw DomainError("the bound needs at least one polynomial (s >= 1)");
  if (d < 2) throw DomainError("the degree parameter must be at least 2 (use d = max(degree, 2))");
  if (n < 1) throw DomainError("the dimension must be at least 1");
  ChiBound b{s, d, n, 0, ""};
  Integer per = Integer(d) * pow(Integer(2 * d - 1), static_cast<unsigned long>(n - 1));
  Integer sum = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j <= i + 1; ++j) sum += binomial(static_cast<unsigned long>(s + 1), static_cast<unsigned long>(j));
  b.sign_condition_bound = sum * per;
  b.general_set_note =
      "applies to realizations of sign conditions; for arbitrary sets defined by the family only a bound of the "
      "form (O(sd))^(2n) is established";
  return b;
}

}  // namespace cfe
