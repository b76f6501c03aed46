#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "cad_internal.hpp"
#include "cfe/error.hpp"

namespace cfe {

namespace {

struct LevelData {
  // For each projection polynomial: coefficients in its main variable.
  std::vector<std::vector<MultiPoly>> coeffs;
};

// Sample between the isolating intervals of consecutive roots, or beyond the
// extreme ones.
Rational sector_sample(const FieldRoot* below, const FieldRoot* above) {
  if (!below && !above) return Rational(0);
  if (!below) {
    if (sgn(above->lo) > 0) return Rational(0);
    return Rational(ceil(above->lo) - 1);
  }
  if (!above) {
    if (sgn(below->hi) < 0) return Rational(0);
    return Rational(floor(below->hi) + 1);
  }
  return simplest_between(below->hi, above->lo);
}

std::vector<AlgElem> padded(const std::vector<AlgElem>& sample, std::size_t n) {
  std::vector<AlgElem> p = sample;
  p.resize(n, AlgElem(Rational(0)));
  return p;
}

}  // namespace

CadTree build_cad(const std::vector<MultiPoly>& family, const VarList& order, const CadOptions& options) {
  const std::size_t n = order->size();
  if (n > options.max_variables)
    throw BudgetExceeded("decomposition in " + std::to_string(n) + " variables exceeds the cap of " +
                         std::to_string(options.max_variables));
  CadTree tree;
  tree.vars_ = order;
  for (const auto& p : family) {
    for (const auto& v : p.used_variables())
      if (std::find(order->begin(), order->end(), v) == order->end())
        throw DomainError("variable '" + v + "' is missing from the variable order");
    tree.family_.push_back(p.remap(order));
  }

  cad_detail::Projector projector(order);
  for (const auto& p : tree.family_) projector.add(p);
  tree.projection_ = projector.run();

  std::vector<LevelData> data(n);
  for (std::size_t k = 0; k < n; ++k)
    for (const auto& p : tree.projection_[k]) data[k].coeffs.push_back(p.coefficients_in(k));

  tree.levels_.assign(n + 1, {});
  tree.levels_[0].push_back(CadCell{});
  std::vector<LevelPtr> towers{nullptr};
  for (std::size_t k = 0; k < n; ++k) {
    auto& below = tree.levels_[k];
    auto& above = tree.levels_[k + 1];
    std::vector<LevelPtr> next_towers;
    for (std::size_t b = 0; b < below.size(); ++b) {
      CadCell& base = below[b];
      const std::vector<AlgElem> point = padded(base.sample, n);
      std::vector<KPoly> polys;
      for (const auto& coeffs : data[k].coeffs) {
        std::vector<AlgElem> c;
        c.reserve(coeffs.size());
        for (const auto& m : coeffs) c.push_back(m.evaluate_in<AlgElem>(point));
        KPoly q(std::move(c));
        if (q.degree() >= 1) polys.push_back(std::move(q));
      }
      std::vector<FieldRoot> roots;
      for (const auto& f : gcd_free_basis(polys)) {
        auto r = isolate_real_roots(f);
        roots.insert(roots.end(), r.begin(), r.end());
      }
      sort_disjoint(roots);

      base.child_begin = above.size();
      const std::size_t stack = 2 * roots.size() + 1;
      if (above.size() + stack > options.max_cells)
        throw BudgetExceeded("decomposition exceeds the cell budget of " + std::to_string(options.max_cells));
      for (std::size_t pos = 0; pos < stack; ++pos) {
        CadCell cell;
        cell.index = base.index;
        cell.index.push_back(static_cast<int>(pos));
        cell.base_index = static_cast<long>(b);
        cell.sample = base.sample;
        LevelPtr top = towers[b];
        if (pos % 2 == 0) {
          const FieldRoot* lo = pos > 0 ? &roots[pos / 2 - 1] : nullptr;
          const FieldRoot* hi = pos / 2 < roots.size() ? &roots[pos / 2] : nullptr;
          cell.sample.emplace_back(sector_sample(lo, hi));
          cell.dim = base.dim + 1;
        } else {
          cell.sample.push_back(root_as_element(roots[pos / 2], top));
          cell.dim = base.dim;
        }
        above.push_back(std::move(cell));
        next_towers.push_back(top);
      }
      base.child_end = above.size();
    }
    towers = std::move(next_towers);
  }

  auto& top = tree.levels_[n];
  for (std::size_t i = 0; i < top.size(); ++i) {
    CadCell& cell = top[i];
    cell.top_begin = i;
    cell.top_end = i + 1;
    const std::vector<AlgElem> point = padded(cell.sample, n);
    for (const auto& p : tree.family_) cell.signs.push_back(sign(p.evaluate_in<AlgElem>(point)));
  }
  for (std::size_t k = n; k-- > 0;)
    for (auto& cell : tree.levels_[k]) {
      cell.top_begin = tree.levels_[k + 1][cell.child_begin].top_begin;
      cell.top_end = tree.levels_[k + 1][cell.child_end - 1].top_end;
    }
  return tree;
}

std::vector<std::size_t> CadTree::cells_over_base(std::size_t k, std::size_t base) const {
  if (k > dimension()) throw DomainError("level " + std::to_string(k) + " exceeds the dimension");
  const auto& level = levels_[k];
  if (base >= level.size()) throw DomainError("no cell " + std::to_string(base) + " at level " + std::to_string(k));
  std::vector<std::size_t> out;
  for (std::size_t i = level[base].top_begin; i < level[base].top_end; ++i) out.push_back(i);
  return out;
}

std::vector<std::size_t> CadTree::realize_sign_condition(const std::vector<std::pair<std::size_t, int>>& sigma) const {
  std::map<std::size_t, int> want;
  for (const auto& [i, s] : sigma) {
    if (i >= family_.size()) throw DomainError("sign condition names polynomial " + std::to_string(i) + ", not in the family");
    if (s < -1 || s > 1) throw DomainError("signs must be -1, 0 or 1");
    auto [it, fresh] = want.emplace(i, s);
    if (!fresh && it->second != s)
      throw DomainError("contradictory sign condition on " + family_[i].to_string());
  }
  std::vector<std::size_t> out;
  const auto& top = cells();
  for (std::size_t c = 0; c < top.size(); ++c) {
    bool ok = true;
    for (const auto& [i, s] : want) ok = ok && top[c].signs[i] == s;
    if (ok) out.push_back(c);
  }
  return out;
}

std::vector<std::size_t> CadTree::realize_sign_condition(const std::vector<std::pair<MultiPoly, int>>& sigma) const {
  std::vector<std::pair<std::size_t, int>> indexed;
  for (const auto& [p, s] : sigma) {
    auto it = std::find(family_.begin(), family_.end(), p);
    if (it == family_.end()) throw DomainError("polynomial " + p.to_string() + " is not in the family");
    indexed.emplace_back(static_cast<std::size_t>(it - family_.begin()), s);
  }
  return realize_sign_condition(indexed);
}

std::size_t CadTree::locate(const std::vector<Rational>& point) const { return locate(point, dimension()); }

std::size_t CadTree::locate(const std::vector<Rational>& point, std::size_t k) const {
  const std::size_t n = dimension();
  if (point.size() < k || k > n) throw DomainError("point has too few coordinates");
  std::vector<Rational> padded_point(point.begin(), point.begin() + static_cast<long>(k));
  padded_point.resize(n, Rational(0));
  std::size_t current = 0;
  for (std::size_t j = 0; j < k; ++j) {
    // Roots of the non-vanishing level polynomials over the point's base.
    std::vector<Rational> base(padded_point);
    for (std::size_t i = j; i < n; ++i) base[i] = 0;
    QPoly product = QPoly::constant(Rational(1));
    for (const auto& p : projection_[j]) {
      std::vector<Rational> c;
      for (const auto& m : p.coefficients_in(j)) c.push_back(m.evaluate(base));
      QPoly q(std::move(c));
      if (q.degree() >= 1) product = product * q;
    }
    std::size_t below = 0;
    bool on_root = false;
    std::size_t root_count = 0;
    if (product.degree() >= 1) {
      auto roots = isolate_real_roots(product);
      root_count = roots.size();
      AlgebraicNumber x(point[j]);
      for (const auto& r : roots) {
        int c = compare(r, x);
        if (c < 0) ++below;
        if (c == 0) on_root = true;
      }
    }
    const CadCell& cell = levels_[j][current];
    if (cell.child_end - cell.child_begin != 2 * root_count + 1)
      throw Error("stack over cell " + std::to_string(current) + " is not delineated at the given point");
    current = cell.child_begin + 2 * below + (on_root ? 1 : 0);
  }
  return current;
}

std::string CadTree::to_json() const {
  nlohmann::json out;
  out["variables"] = *vars_;
  nlohmann::json fam = nlohmann::json::array();
  for (const auto& p : family_) fam.push_back(p.to_string());
  out["family"] = fam;
  nlohmann::json cells_json = nlohmann::json::array();
  for (const auto& c : cells()) {
    nlohmann::json s = nlohmann::json::array();
    for (const auto& x : c.sample) s.push_back(sample_string(x));
    cells_json.push_back({{"index", c.index}, {"dim", c.dim}, {"sample", s}, {"signs", c.signs}, {"base_index", c.base_index}});
  }
  out["cells"] = cells_json;
  return out.dump();
}

}  // namespace cfe
