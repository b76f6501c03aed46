#include "selftest.hpp"

#include <set>

#include "cfe/classes/gadgets.hpp"
#include "cfe/classes/partition.hpp"
#include "cfe/euler/euler.hpp"
#include "cfe/formula/parse.hpp"
#include "cfe/formula/random.hpp"

using namespace cfe;

namespace {

VarList xs(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 1; i <= n; ++i) v.push_back("x" + std::to_string(i));
  return make_var_list(v);
}

EulerOptions over(VarList order) {
  EulerOptions o;
  o.order = std::move(order);
  return o;
}

SelftestCheck spheres() {
  std::string detail;
  bool ok = true;
  for (std::size_t n = 1; n <= 3; ++n) {
    std::string s;
    for (std::size_t i = 1; i <= n; ++i) s += "x" + std::to_string(i) + "^2 + ";
    s += "(-1)";
    long sphere = chi_of_formula_set(parse_set_formula(s + " = 0"), over(xs(n)));
    long open_ball = chi_of_formula_set(parse_set_formula(s + " < 0"), over(xs(n)));
    long closed_ball = chi_of_formula_set(parse_set_formula(s + " <= 0"), over(xs(n)));
    long sign = n % 2 == 0 ? 1 : -1;
    ok = ok && sphere == 1 - sign && open_ball == sign && closed_ball == 1;
    detail += "n=" + std::to_string(n) + ":" + std::to_string(sphere) + "," + std::to_string(open_ball) + "," +
              std::to_string(closed_ball) + " ";
  }
  detail.pop_back();
  return {"spheres_and_balls", ok, detail};
}

SelftestCheck additivity(RandomInputs& gen) {
  int failures = 0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    auto fam = gen.family(xs(2), 3, 2, 3);
    SetFormula a = gen.set_formula(fam, 2), b = gen.set_formula(fam, 2);
    long lhs = chi_of_formula_set(make_or(a, b), over(xs(2))) + chi_of_formula_set(make_and(a, b), over(xs(2)));
    long rhs = chi_of_formula_set(a, over(xs(2))) + chi_of_formula_set(b, over(xs(2)));
    if (lhs != rhs) ++failures;
  }
  return {"additivity", failures == 0, std::to_string(trials - failures) + "/" + std::to_string(trials)};
}

SelftestCheck fubini(RandomInputs& gen) {
  int failures = 0;
  const int trials = 20;
  std::string values;
  for (int t = 0; t < trials; ++t) {
    Formula f = gen.formula(gen.family(xs(2), 3, 2, 3), 2);
    FubiniReport r = fubini_check(f, 1, over(xs(2)));
    if (!r.holds) ++failures;
    values += r.total.to_string() + (t + 1 < trials ? "," : "");
  }
  return {"fubini", failures == 0, std::to_string(trials - failures) + "/" + std::to_string(trials) + " totals " + values};
}

SelftestCheck bound(RandomInputs& gen) {
  bool ok = eval_chi_bound(1, 2, 1).sign_condition_bound == 6 && eval_chi_bound(2, 2, 2).sign_condition_bound == 66;
  long worst = 0;
  for (int t = 0; t < 5; ++t) {
    auto fam = gen.family(xs(2), 3, 2, 3);
    long d = 2;
    for (const auto& p : fam) d = std::max<long>(d, p.total_degree());
    Integer b = eval_chi_bound(static_cast<long>(fam.size()), d, 2).sign_condition_bound;
    for (const auto& [sigma, c] : chi_by_sign_condition(build_cad(fam, xs(2)))) {
      ok = ok && Integer(std::abs(c)) <= b;
      worst = std::max(worst, std::abs(c));
    }
  }
  return {"bound", ok, "max |chi| " + std::to_string(worst)};
}

SelftestCheck refinement(RandomInputs& gen) {
  bool ok = true;
  std::string degrees;
  for (int t = 0; t < 5; ++t) {
    Formula fbar = gen.formula(gen.family(xs(2), 2, 2, 3), 2);
    ValuePoly h0({Value(Rational(gen.draw(-3, 3))), Value(Rational(gen.draw(1, 3))), Value(Rational(gen.draw(-2, 2)))});
    Formula f = make_post_compose(h0, fbar);
    ok = ok && refines(fbar, f, over(xs(2)));
    ValuePoly h = lagrange_witness(fbar, f, over(xs(2)));
    auto tree = common_tree(fbar, f, over(xs(2)));
    ok = ok && cell_values(*tree, make_post_compose(h, fbar)) == cell_values(*tree, f);
    degrees += std::to_string(h.degree()) + (t < 4 ? "," : "");
  }
  return {"refinement_and_lagrange", ok, "witness degrees " + degrees};
}

SelftestCheck gadgets() {
  bool ok = true;
  for (std::size_t n = 1; n <= 3; ++n) {
    FormulaEvaluator ev(weighted_det_generic(n), xs(n * n * n));
    std::set<Value> seen;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      // Zero matrix for a set bit, identity otherwise.
      std::vector<Rational> point;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) point.push_back(Rational(!((mask >> i) & 1u) && r == c ? 1 : 0));
      Value v = ev.at(point);
      std::vector<bool> decoded = decode_weighted_det(v, n);
      for (std::size_t i = 0; i < n; ++i) ok = ok && decoded[i] == (((mask >> i) & 1u) != 0);
      seen.insert(v);
    }
    ok = ok && seen.size() == (std::size_t{1} << n);
  }
  std::set<Integer> phi;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c) phi.insert(phi_encode({a, b, c}, 3));
  ok = ok && phi.size() == 125;
  HnResult sq = hn_gadget({{{Rational(0), Rational(0)}, {Rational(0), Rational(1)}}}, 1);
  ok = ok && sq.value == pow(sq.omega, 8) - 2 * pow(sq.omega, 16);
  return {"gadgets", ok, "phi values " + std::to_string(phi.size()) + ", hn(y^2) digits " +
                             sq.chi_by_sign.at({0}).get_str() + "," + sq.chi_by_sign.at({1}).get_str()};
}

}  // namespace

SelftestReport run_selftest(std::uint64_t seed) {
  SelftestReport r;
  r.seed = seed;
  RandomInputs gen(seed);
  r.checks.push_back(spheres());
  r.checks.push_back(additivity(gen));
  r.checks.push_back(fubini(gen));
  r.checks.push_back(bound(gen));
  r.checks.push_back(refinement(gen));
  r.checks.push_back(gadgets());
  for (const auto& c : r.checks) r.all_pass = r.all_pass && c.pass;
  return r;
}

nlohmann::json SelftestReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) checks_json.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return {{"seed", seed}, {"checks", checks_json}, {"all_pass", all_pass}};
}

std::string SelftestReport::to_text() const {
  std::string out;
  for (const auto& c : checks) out += (c.pass ? "PASS " : "FAIL ") + c.name + ": " + c.detail + "\n";
  out += all_pass ? "all checks passed" : "some checks FAILED";
  return out;
}
