#include <gtest/gtest.h>

#include <algorithm>

#include "cfe/error.hpp"
#include "cfe/euler/euler.hpp"
#include "cfe/formula/parse.hpp"
#include "cfe/formula/random.hpp"

using namespace cfe;

namespace cfe {
void PrintTo(const Value& v, std::ostream* os) { *os << v.to_string(); }
}  // namespace cfe

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

long chi(const std::string& set, std::size_t n) { return chi_of_formula_set(parse_set_formula(set), over(xs(n))); }

std::string sphere(std::size_t n) {
  std::string s;
  for (std::size_t i = 1; i <= n; ++i) s += "x" + std::to_string(i) + "^2 + ";
  return s + "(-1)";
}

std::vector<Value> pushforward_values(const Pushforward& p) {
  std::vector<Value> v;
  for (const auto& b : p.values) v.push_back(b.value);
  return v;
}

}  // namespace

TEST(Chi, RealizationExamples) {
  CadTree circle = build_cad({parse_poly("x1^2 + x2^2 - 1")}, xs(2));
  EXPECT_EQ(chi_of_realization(circle, {{0, 0}}), 0);
  EXPECT_EQ(chi_of_realization(circle, {{0, -1}}), 1);
  // The complement of the closed disk: 1 - 1.
  EXPECT_EQ(chi_of_realization(circle, {{0, 1}}), 0);
  CadTree punctured = build_cad({parse_poly("x^2 + y^2")}, make_var_list({"x", "y"}));
  EXPECT_EQ(chi_of_realization(punctured, {{0, 1}}), 0);
  EXPECT_EQ(chi_of_realization(punctured, {{0, 0}}), 1);
  EXPECT_EQ(chi_of_realization(punctured, {{0, -1}}), 0);
  CadTree two = build_cad({parse_poly("x1"), parse_poly("x2")}, xs(2));
  EXPECT_THROW(chi_of_realization(two, {{0, 1}}), DomainError);
  EXPECT_THROW(chi_of_realization(two, {{0, 1}, {0, -1}, {1, 0}}), DomainError);
}

TEST(Chi, FormulaSetExamples) {
  EXPECT_EQ(chi("x1^2 + x2^2 - 1 = 0", 2), 0);
  EXPECT_EQ(chi("x1^2 + x2^2 = 0", 2), 1);
  EXPECT_EQ(chi("x1 > 0 | x1 < 0", 1), -2);
  EXPECT_EQ(chi("0 = 0", 2), 1);
  EXPECT_EQ(chi("1 = 0", 3), 0);
}

TEST(Chi, SpheresAndBalls) {
  for (std::size_t n = 1; n <= 4; ++n) {
    long sign = n % 2 == 0 ? 1 : -1;
    EXPECT_EQ(chi(sphere(n) + " = 0", n), 1 - sign) << n;
    EXPECT_EQ(chi(sphere(n) + " < 0", n), sign) << n;
    EXPECT_EQ(chi(sphere(n) + " <= 0", n), 1) << n;
  }
}

TEST(Integrate, Examples) {
  auto disk_circle = parse_formula("[x1^2+x2^2-1 < 0] + 2*[x1^2+x2^2-1 = 0]");
  EXPECT_EQ(euler_integrate(disk_circle).value, Value(1));
  EXPECT_EQ(euler_integrate(parse_formula("[0 = 0]"), over(xs(2))).value, Value(1));
  EXPECT_EQ(euler_integrate(parse_formula("H{u^2}([x1 > 0] - [x1 < 0])")).value, Value(-2));
  auto graded = parse_formula("T*[x1^2+x2^2-1 < 0] + [x1^2+x2^2-1 > 0]");
  EXPECT_EQ(euler_integrate(graded).value, Value::T());
  EXPECT_THROW(euler_integrate(disk_circle, over(xs(1))), DomainError);
}

TEST(Integrate, OrderIndependence) {
  RandomInputs gen(17);
  VarList vars = xs(3);
  for (int trial = 0; trial < 8; ++trial) {
    auto fam = gen.family(vars, 2, 2, 2);
    Formula f = gen.formula(fam, 2);
    std::vector<std::string> names = *vars;
    Value first = euler_integrate(f, over(vars)).value;
    for (int k = 0; k < 3; ++k) {
      std::next_permutation(names.begin(), names.end());
      EXPECT_EQ(euler_integrate(f, over(make_var_list(names))).value, first) << to_string(f);
    }
  }
}

TEST(ChiProperties, Additivity) {
  RandomInputs gen(3);
  VarList vars = xs(2);
  for (int trial = 0; trial < 40; ++trial) {
    auto fam = gen.family(vars, 3, 2, 3);
    SetFormula a = gen.set_formula(fam, 2), b = gen.set_formula(fam, 2);
    long lhs = chi_of_formula_set(make_or(a, b), over(vars)) + chi_of_formula_set(make_and(a, b), over(vars));
    long rhs = chi_of_formula_set(a, over(vars)) + chi_of_formula_set(b, over(vars));
    EXPECT_EQ(lhs, rhs) << to_string(a) << " / " << to_string(b);
  }
  // Disjoint realizations add up.
  CadTree t = build_cad({parse_poly("x1^2 + x2^2 - 1")}, xs(2));
  EXPECT_EQ(chi_of_formula_set(parse_set_formula("x1^2 + x2^2 - 1 <= 0"), over(xs(2))),
            chi_of_realization(t, {{0, 0}}) + chi_of_realization(t, {{0, -1}}));
}

TEST(ChiProperties, Multiplicativity) {
  RandomInputs gen(5);
  VarList x = make_var_list({"x1"}), y = make_var_list({"x2"});
  for (int trial = 0; trial < 30; ++trial) {
    SetFormula a = gen.set_formula(gen.family(x, 2, 2, 3), 2);
    SetFormula b = gen.set_formula(gen.family(y, 2, 2, 3), 2);
    long prod = chi_of_formula_set(make_and(a, b), over(xs(2)));
    EXPECT_EQ(prod, chi_of_formula_set(a, over(x)) * chi_of_formula_set(b, over(y))) << to_string(a) << " x " << to_string(b);
  }
}

TEST(Pushforward, Examples) {
  Pushforward circle = pushforward(parse_formula("[x^2 + y^2 - 1 = 0]"), 1);
  EXPECT_EQ(pushforward_values(circle), (std::vector<Value>{0, 1, 2, 1, 0}));
  Pushforward parabola = pushforward(parse_formula("[y^2 - x = 0]"), 1);
  EXPECT_EQ(pushforward_values(parabola), (std::vector<Value>{0, 1, 2}));
  EXPECT_EQ(parabola.at({Rational(4)}), Value(2));
  EXPECT_EQ(parabola.at({Rational(-1, 3)}), Value(0));
  Pushforward plane = pushforward(parse_formula("[0 = 0]"), 1, over(make_var_list({"x", "y"})));
  EXPECT_EQ(pushforward_values(plane), (std::vector<Value>{-1}));
  EXPECT_THROW(pushforward(parse_formula("[x = 0]"), 2), DomainError);
  std::string json = circle.to_json();
  EXPECT_NE(json.find("\"base_cells\""), std::string::npos);
  EXPECT_NE(json.find("\"value\":\"2\""), std::string::npos);
}

TEST(Pushforward, FubiniExamples) {
  FubiniReport c = fubini_check(parse_formula("[x^2 + y^2 - 1 = 0]"), 1);
  EXPECT_TRUE(c.holds);
  EXPECT_EQ(c.total, Value(0));
  FubiniReport r = fubini_check(parse_formula("[0 = 0]"), 1, over(make_var_list({"x", "y"})));
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.total, Value(1));
}

TEST(Pushforward, FubiniRandomPlane) {
  RandomInputs gen(11);
  VarList vars = xs(2);
  for (int trial = 0; trial < 50; ++trial) {
    Formula f = gen.formula(gen.family(vars, 3, 2, 3), 2);
    FubiniReport r = fubini_check(f, 1, over(vars));
    EXPECT_TRUE(r.holds) << to_string(f);
  }
}

TEST(Pushforward, Locality) {
  RandomInputs gen(23);
  struct Shape {
    std::size_t n, k;
    int trials;
  };
  for (Shape shape : {Shape{2, 1, 10}, Shape{3, 2, 3}, Shape{3, 1, 3}}) {
    VarList vars = xs(shape.n);
    const std::size_t k = shape.k;
    std::vector<std::string> fiber_names(vars->begin() + static_cast<long>(k), vars->end());
    VarList fiber = make_var_list(fiber_names);
    for (int trial = 0; trial < shape.trials; ++trial) {
      Formula f = gen.formula(gen.family(vars, 2, 2, 2), 2);
      Pushforward p = pushforward(f, k, over(vars));
      auto direct = [&](const std::vector<Rational>& base) {
        std::map<std::string, MultiPoly> fix;
        for (std::size_t j = 0; j < k; ++j) fix[(*vars)[j]] = MultiPoly(base[j]);
        return euler_integrate(substitute(f, fix), over(fiber)).value;
      };
      // Base cells with rational samples, at the sample itself.
      for (std::size_t i = 0; i < p.values.size(); ++i) {
        std::vector<Rational> base;
        for (const auto& c : p.base_cell(i).sample)
          if (c.is_rational()) base.push_back(c.rational());
        if (base.size() == k) EXPECT_EQ(direct(base), p.values[i].value) << to_string(f);
      }
      // Random base points, located in the induced decomposition.
      for (int i = 0; i < 40; ++i) {
        std::vector<Rational> base;
        for (std::size_t j = 0; j < k; ++j) base.push_back(gen.rational(8, 3));
        EXPECT_EQ(direct(base), p.values[p.tree.locate(base, k)].value) << to_string(f);
      }
    }
  }
}

TEST(Pushforward, EmittedFormulaMatchesTable) {
  RandomInputs gen(31);
  VarList vars = xs(2);
  int emitted = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Formula f = gen.formula(gen.family(vars, 2, 2, 3), 2);
    Pushforward p = pushforward(f, 1, over(vars));
    auto g = pushforward_formula(p);
    if (!g) continue;
    ++emitted;
    FormulaEvaluator ev(*g, make_var_list({"x1"}));
    for (int i = 0; i < 20; ++i) {
      std::vector<Rational> x{gen.rational(8, 3)};
      EXPECT_EQ(ev.at(x), p.at(x)) << to_string(f) << " => " << to_string(*g);
    }
  }
  EXPECT_GT(emitted, 10);
}

TEST(Bound, Examples) {
  EXPECT_EQ(eval_chi_bound(1, 2, 1).sign_condition_bound, 6);
  EXPECT_EQ(eval_chi_bound(2, 2, 2).sign_condition_bound, 66);
  EXPECT_THROW(eval_chi_bound(1, 1, 1), DomainError);
  EXPECT_THROW(eval_chi_bound(0, 2, 1), DomainError);
  EXPECT_THROW(eval_chi_bound(1, 2, 0), DomainError);
}

TEST(Bound, Soundness) {
  RandomInputs gen(41);
  for (int trial = 0; trial < 24; ++trial) {
    std::size_t n = static_cast<std::size_t>(1 + trial % 3);
    VarList vars = xs(n);
    auto fam = gen.family(vars, n == 3 ? 2 : 4, n == 3 ? 2 : 3, 3);
    CadTree t = build_cad(fam, vars);
    long d = 2;
    for (const auto& p : fam) d = std::max<long>(d, p.total_degree());
    Integer bound = eval_chi_bound(static_cast<long>(fam.size()), d, static_cast<long>(n)).sign_condition_bound;
    for (const auto& [sigma, c] : chi_by_sign_condition(t)) EXPECT_LE(Integer(std::abs(c)), bound);
  }
}
