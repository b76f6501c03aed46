#include "cfe/classes/partition.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "cfe/error.hpp"

namespace cfe {

namespace {

VarList union_order(const Formula& a, const Formula& b, const EulerOptions& options) {
  VarList va = formula_variables(a), vb = formula_variables(b);
  if (options.order) {
    for (const VarList& vs : {va, vb})
      for (const auto& v : *vs)
        if (std::find(options.order->begin(), options.order->end(), v) == options.order->end())
          throw DomainError("variable '" + v + "' is missing from the variable order");
    return options.order;
  }
  std::vector<std::string> names(va->begin(), va->end());
  names.insert(names.end(), vb->begin(), vb->end());
  return canonical_var_list(std::move(names));
}

// Two partitions over one tree: the coarse level must be a function of the
// fine level.
bool refines_on_cells(const std::vector<std::size_t>& fine, const std::vector<std::size_t>& coarse) {
  std::map<std::size_t, std::size_t> image;
  for (std::size_t c = 0; c < fine.size(); ++c) {
    auto [it, fresh] = image.emplace(fine[c], coarse[c]);
    if (!fresh && it->second != coarse[c]) return false;
  }
  return true;
}

}  // namespace

std::vector<Value> cell_values(const CadTree& tree, const Formula& f) {
  FormulaEvaluator ev(f, tree.variables());
  std::vector<std::size_t> idx;
  for (const auto& p : ev.family().polys) {
    auto it = std::find(tree.family().begin(), tree.family().end(), p);
    if (it == tree.family().end()) throw DomainError("polynomial " + p.to_string() + " is not in the decomposition family");
    idx.push_back(static_cast<std::size_t>(it - tree.family().begin()));
  }
  std::vector<Value> out;
  out.reserve(tree.cells().size());
  std::vector<int> signs(idx.size());
  for (const auto& c : tree.cells()) {
    for (std::size_t i = 0; i < idx.size(); ++i) signs[i] = c.signs[idx[i]];
    out.push_back(ev.on_signs(signs));
  }
  return out;
}

LevelPartition par_on(std::shared_ptr<const CadTree> tree, const Formula& f) {
  std::vector<Value> values = cell_values(*tree, f);
  std::map<Value, std::vector<std::size_t>> grouped;
  for (std::size_t c = 0; c < values.size(); ++c) grouped[values[c]].push_back(c);
  LevelPartition p;
  p.ambient_dim = tree->dimension();
  p.tree = std::move(tree);
  p.provenance = f;
  p.level_of_cell.resize(values.size());
  for (auto& [v, cells] : grouped) {
    for (auto c : cells) p.level_of_cell[c] = p.levels.size();
    p.levels.push_back({v, std::move(cells)});
  }
  return p;
}

LevelPartition par_of(const Formula& f, const EulerOptions& options) {
  VarList used = formula_variables(f);
  VarList order = options.order ? options.order : used;
  for (const auto& v : *used)
    if (std::find(order->begin(), order->end(), v) == order->end())
      throw DomainError("variable '" + v + "' is missing from the variable order");
  FormulaEvaluator ev(f, order);
  return par_on(std::make_shared<const CadTree>(build_cad(ev.family().polys, order, options.cad)), f);
}

std::shared_ptr<const CadTree> common_tree(const Formula& a, const Formula& b, const EulerOptions& options) {
  VarList order = union_order(a, b, options);
  PolyFamily fam{order, {}};
  for (const Formula& f : {a, b}) {
    FormulaEvaluator ev(f, order);
    for (const auto& p : ev.family().polys) fam.add(p);
  }
  return std::make_shared<const CadTree>(build_cad(fam.polys, order, options.cad));
}

bool refines(const LevelPartition& fine, const LevelPartition& coarse, const CadOptions& cad) {
  if (fine.ambient_dim != coarse.ambient_dim)
    throw DomainError("partitions live in R^" + std::to_string(fine.ambient_dim) + " and R^" +
                      std::to_string(coarse.ambient_dim));
  if (fine.tree == coarse.tree) return refines_on_cells(fine.level_of_cell, coarse.level_of_cell);
  if (*fine.tree->variables() != *coarse.tree->variables())
    throw DomainError("partitions are over different variables");
  EulerOptions options{fine.tree->variables(), cad};
  auto tree = common_tree(fine.provenance, coarse.provenance, options);
  return refines_on_cells(par_on(tree, fine.provenance).level_of_cell, par_on(tree, coarse.provenance).level_of_cell);
}

bool refines(const Formula& fbar, const Formula& f, const EulerOptions& options) {
  auto tree = common_tree(fbar, f, options);
  return refines(par_on(tree, fbar), par_on(tree, f));
}

ValuePoly lagrange_witness(const Formula& fbar, const Formula& f, const EulerOptions& options) {
  auto tree = common_tree(fbar, f, options);
  std::vector<Value> from = cell_values(*tree, fbar), to = cell_values(*tree, f);
  std::map<Rational, Value> table;
  for (std::size_t c = 0; c < from.size(); ++c) {
    if (!from[c].is_rational())
      throw DomainError("no witness: fbar takes the non-rational value " + from[c].to_string());
    auto [it, fresh] = table.emplace(from[c].rational(), to[c]);
    if (!fresh && it->second != to[c])
      throw DomainError("no witness: Par(fbar) does not refine Par(f); fbar = " + from[c].to_string() +
                        " meets f = " + it->second.to_string() + " and f = " + to[c].to_string());
  }
  ValuePoly h;
  for (const auto& [uj, wj] : table) {
    QPoly basis = QPoly::constant(Rational(1));
    for (const auto& [uk, wk] : table) {
      if (uk == uj) continue;
      basis = basis * QPoly({-uk / (uj - uk), Rational(1) / (uj - uk)});
    }
    std::vector<Value> c;
    for (const auto& q : basis.coeffs()) c.push_back(Value(q) * wj);
    h = h + ValuePoly(std::move(c));
  }
  return h;
}

std::string LevelPartition::to_json() const {
  nlohmann::json out;
  out["variables"] = *tree->variables();
  nlohmann::json cells = nlohmann::json::array();
  for (std::size_t i = 0; i < level_of_cell.size(); ++i) {
    const CadCell& c = tree->cells()[i];
    nlohmann::json sample = nlohmann::json::array();
    for (const auto& x : c.sample) sample.push_back(sample_string(x));
    cells.push_back(
        {{"index", c.index}, {"dim", c.dim}, {"sample", sample}, {"value", levels[level_of_cell[i]].value.to_string()}});
  }
  out["base_cells"] = cells;
  nlohmann::json lv = nlohmann::json::array();
  for (const auto& l : levels) lv.push_back({{"value", l.value.to_string()}, {"cells", l.cells}});
  out["levels"] = lv;
  return out.dump();
}

}  // namespace cfe
