#include <gtest/gtest.h>

#include <set>

#include "cfe/classes/gadgets.hpp"
#include "cfe/classes/partition.hpp"
#include "cfe/classes/reduction.hpp"
#include "cfe/error.hpp"
#include "cfe/exactnum/algebraic.hpp"
#include "cfe/formula/parse.hpp"
#include "cfe/formula/random.hpp"
#include "cfe/polyring/parse.hpp"

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

std::vector<Value> level_values(const LevelPartition& p) {
  std::vector<Value> v;
  for (const auto& l : p.levels) v.push_back(l.value);
  return v;
}

ValuePoly random_h(RandomInputs& gen) {
  std::vector<Value> c;
  long deg = gen.draw(1, 2);
  for (long i = 0; i <= deg; ++i) c.push_back(Value(Rational(gen.draw(-3, 3))));
  if (c.back().is_zero()) c.back() = Value(1);
  return ValuePoly(std::move(c));
}

RationalMatrix quadric(long a, long b, long c) {
  // a + 2 b y + c y^2.
  return {{Rational(a), Rational(b)}, {Rational(b), Rational(c)}};
}

PolyMatrix constant_matrix(const RationalMatrix& m) {
  PolyMatrix out;
  for (const auto& row : m) {
    std::vector<MultiPoly> r;
    for (const auto& e : row) r.emplace_back(e);
    out.push_back(std::move(r));
  }
  return out;
}

RationalMatrix singular(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i + 1 < n; ++i) m[i][i] = Rational(static_cast<long>(i) + 2);
  if (n >= 2) m[n - 1][0] = Rational(1);
  return m;
}

RationalMatrix nonsingular(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = Rational(1);
    if (i + 1 < n) m[i][i + 1] = Rational(3);
  }
  return m;
}

}  // namespace

TEST(Par, Examples) {
  LevelPartition step = par_of(parse_formula("[x1 > 0]"));
  ASSERT_EQ(step.levels.size(), 2u);
  EXPECT_EQ(step.levels[0].value, Value(0));
  EXPECT_EQ(step.levels[0].cells.size(), 2u);
  EXPECT_EQ(step.levels[1].value, Value(1));
  EXPECT_EQ(step.levels[1].cells.size(), 1u);

  LevelPartition disk = par_of(parse_formula("[x^2+y^2-1 < 0] + 2*[x^2+y^2-1 = 0]"));
  EXPECT_EQ(level_values(disk), (std::vector<Value>{0, 1, 2}));
  EXPECT_EQ(disk.levels[0].cells.size(), 8u);
  EXPECT_EQ(disk.levels[1].cells.size(), 1u);
  EXPECT_EQ(disk.levels[2].cells.size(), 4u);

  LevelPartition constant = par_of(parse_formula("5*[0*x1 = 0]"), over(xs(2)));
  ASSERT_EQ(constant.levels.size(), 1u);
  EXPECT_EQ(constant.levels[0].value, Value(5));
  EXPECT_EQ(constant.levels[0].cells.size(), 1u);
  EXPECT_EQ(constant.ambient_dim, 2u);

  // Levels partition the cells.
  std::size_t total = 0;
  for (const auto& l : disk.levels) total += l.cells.size();
  EXPECT_EQ(total, disk.tree->cells().size());
  EXPECT_NE(disk.to_json().find("\"levels\""), std::string::npos);
}

TEST(Refines, Examples) {
  Formula f = parse_formula("[x1^2 - 2 > 0] + 3*[x1 = 0]");
  LevelPartition p = par_of(f);
  EXPECT_TRUE(refines(p, p));
  EXPECT_TRUE(refines(f, f));
  EXPECT_TRUE(refines(parse_formula("[x > 0] + 2*[x = 0]"), parse_formula("[x > 0] + [x = 0]")));
  EXPECT_FALSE(refines(parse_formula("[x > 0]"), parse_formula("[x = 0]")));
  // Over separately built trees the partitions are compared on a common one.
  EXPECT_TRUE(refines(par_of(parse_formula("[x > 0] + 2*[x = 0]")), par_of(parse_formula("[x < 0]"))));
  EXPECT_FALSE(refines(par_of(parse_formula("[x < 0]")), par_of(parse_formula("[x > 0] + 2*[x = 0]"))));
  EXPECT_THROW(refines(par_of(parse_formula("[x1 > 0]")), par_of(parse_formula("[x1 + x2 > 0]"))), DomainError);
}

TEST(Refines, IsAPreorder) {
  RandomInputs gen(5);
  VarList vars = xs(2);
  int implications = 0;
  for (int trial = 0; trial < 15; ++trial) {
    auto fam = gen.family(vars, 3, 2, 3);
    Formula a = gen.formula(fam, 2), b = gen.formula(fam, 2), c = gen.formula(fam, 2);
    auto tree = common_tree(a, make_sum(b, c), over(vars));
    LevelPartition pa = par_on(tree, a), pb = par_on(tree, b), pc = par_on(tree, c);
    EXPECT_TRUE(refines(pa, pa));
    if (refines(pa, pb) && refines(pb, pc)) {
      ++implications;
      EXPECT_TRUE(refines(pa, pc));
    }
    // A chain built by post-composition always satisfies the hypothesis.
    Formula b2 = make_post_compose(random_h(gen), a), c2 = make_post_compose(random_h(gen), b2);
    EXPECT_TRUE(refines(a, b2, over(vars)));
    EXPECT_TRUE(refines(b2, c2, over(vars)));
    EXPECT_TRUE(refines(a, c2, over(vars)));
  }
  EXPECT_GE(implications, 1);
}

TEST(Lagrange, Examples) {
  Formula fbar = parse_formula("[x > 0]");
  ValuePoly h = lagrange_witness(fbar, parse_formula("3*[x > 0]"));
  EXPECT_EQ(h, ValuePoly({Value(0), Value(3)}));

  // Values 0, 1, 2 of fbar map to 5, 5, 7.
  Formula three = parse_formula("[x > 0] + 2*[x = 0]");
  Formula target = parse_formula("5*[x < 0] + 5*[x > 0] + 7*[x = 0]");
  ValuePoly h3 = lagrange_witness(three, target);
  EXPECT_LE(h3.degree(), 2);
  EXPECT_EQ(h3(Value(0)), Value(5));
  EXPECT_EQ(h3(Value(1)), Value(5));
  EXPECT_EQ(h3(Value(2)), Value(7));
  EXPECT_EQ(h3, ValuePoly({Value(5), Value(-1), Value(1)}));

  ValuePoly id = lagrange_witness(three, three);
  for (long u : {0, 1, 2}) EXPECT_EQ(id(Value(u)), Value(u));

  // T-valued targets are fine; T-valued sources are not.
  ValuePoly ht = lagrange_witness(fbar, parse_formula("T*[x > 0] + [x <= 0]"));
  EXPECT_EQ(ht(Value(1)), Value::T());
  EXPECT_THROW(lagrange_witness(parse_formula("T*[x > 0]"), fbar), DomainError);
  EXPECT_THROW(lagrange_witness(parse_formula("[x > 0]"), parse_formula("[x = 0]")), DomainError);
}

TEST(Lagrange, RoundTrip) {
  RandomInputs gen(9);
  VarList vars = xs(2);
  for (int trial = 0; trial < 12; ++trial) {
    Formula fbar = gen.formula(gen.family(vars, 3, 2, 3), 2);
    Formula f = make_post_compose(random_h(gen), fbar);
    ASSERT_TRUE(refines(fbar, f, over(vars)));
    ValuePoly h = lagrange_witness(fbar, f, over(vars));
    Formula composed = make_post_compose(h, fbar);
    EXPECT_EQ(formula_size(composed), formula_size(fbar));
    auto tree = common_tree(fbar, f, over(vars));
    EXPECT_EQ(cell_values(*tree, composed), cell_values(*tree, f)) << to_string(f);
    EXPECT_LT(h.degree(), static_cast<int>(par_on(tree, fbar).levels.size()));
  }
}

TEST(Reduction, Examples) {
  Formula g = parse_formula("[y1*y2 = 0]");
  SubstitutionMap z{{"y1", "y2"}, {std::string("x1"), Rational(1)}};
  Formula fbar = apply_reduction(g, z);
  EXPECT_TRUE(formula_equal(fbar, parse_formula("[x1 = 0]")));
  EXPECT_LE(formula_size(fbar), formula_size(g));

  SubstitutionMap partial{{"y1", "y2"}, {std::string("x1")}};
  EXPECT_THROW(apply_reduction(g, partial), DomainError);
  SubstitutionMap missing{{"y1"}, {std::string("x1")}};
  EXPECT_THROW(apply_reduction(g, missing), DomainError);

  ReductionReport r = reduce_check(parse_formula("[x1 = 0]"), g, z);
  EXPECT_TRUE(r.refines);
  ReductionReport bad = reduce_check(parse_formula("[x1 > 0]"), g, z);
  EXPECT_FALSE(bad.refines);
}

TEST(Reduction, FixingOneMatrixOfWeightedDet) {
  Formula g = weighted_det_generic(2);
  SubstitutionMap z;
  for (int i = 1; i <= 8; ++i) z.target_vars.push_back("x" + std::to_string(i));
  z.assignment = {std::string("a"), std::string("b"), std::string("c"), std::string("d"),
                  Rational(1),      Rational(0),      Rational(0),      Rational(1)};
  Formula fbar = apply_reduction(g, z);
  EXPECT_LE(formula_size(fbar), formula_size(g));
  VarList abcd = make_var_list({"a", "b", "c", "d"});
  FormulaEvaluator ev(fbar, abcd);
  EXPECT_EQ(ev.at({Rational(1), Rational(2), Rational(2), Rational(4)}), Value(2));
  EXPECT_EQ(ev.at({Rational(1), Rational(2), Rational(3), Rational(4)}), Value(0));
  EXPECT_EQ(ev.at({Rational(0), Rational(0), Rational(0), Rational(0)}), Value(2));
}

TEST(Reduction, CompositionMatchesSequentialApplication) {
  RandomInputs gen(13);
  VarList ys = make_var_list({"y1", "y2", "y3"});
  for (int trial = 0; trial < 20; ++trial) {
    Formula g = gen.formula(gen.family(ys, 3, 2, 3), 2);
    SubstitutionMap first{{"y1", "y2", "y3"}, {}}, second{{"w1", "w2"}, {}};
    for (int i = 0; i < 3; ++i) {
      if (gen.draw(0, 3) == 0) first.assignment.emplace_back(gen.rational(3, 2));
      else first.assignment.emplace_back("w" + std::to_string(gen.draw(1, 2)));
    }
    for (int i = 0; i < 2; ++i) {
      if (gen.draw(0, 3) == 0) second.assignment.emplace_back(gen.rational(3, 2));
      else second.assignment.emplace_back("x" + std::to_string(gen.draw(1, 2)));
    }
    Formula seq = apply_reduction(apply_reduction(g, first), second);
    Formula direct = apply_reduction(g, compose(first, second));
    EXPECT_LE(formula_size(direct), formula_size(g));
    for (int i = 0; i < 10; ++i) {
      std::vector<Rational> x{gen.rational(6, 3), gen.rational(6, 3)};
      FormulaEvaluator a(seq, xs(2)), b(direct, xs(2));
      EXPECT_EQ(a.at(x), b.at(x)) << to_string(g);
    }
  }
  SubstitutionMap first{{"y1"}, {std::string("w9")}}, second{{"w1"}, {std::string("x1")}};
  EXPECT_THROW(compose(first, second), DomainError);
}

TEST(WeightedDet, Examples) {
  Formula one = weighted_det({constant_matrix({{Rational(0)}})});
  EXPECT_EQ(FormulaEvaluator(one, xs(1)).at({Rational(0)}), Value(2));
  auto two = [](const RationalMatrix& a, const RationalMatrix& b) {
    return FormulaEvaluator(weighted_det({constant_matrix(a), constant_matrix(b)}), xs(1)).at({Rational(0)});
  };
  EXPECT_EQ(two(singular(2), nonsingular(2)), Value(2));
  EXPECT_EQ(two(singular(2), singular(2)), Value(6));
  EXPECT_EQ(two(nonsingular(2), nonsingular(2)), Value(0));
  EXPECT_THROW(weighted_det({PolyMatrix{{MultiPoly(1), MultiPoly(2)}}, PolyMatrix{{MultiPoly(1)}}}), DomainError);
  EXPECT_THROW(weighted_det_generic(5), DomainError);
  EXPECT_EQ(determinant(constant_matrix(nonsingular(4))), MultiPoly(Rational(1)));
  EXPECT_EQ(determinant(constant_matrix(singular(4))), MultiPoly(Rational(0)));
  EXPECT_EQ(determinant({{parse_poly("a"), parse_poly("b")}, {parse_poly("c"), parse_poly("d")}}), parse_poly("a*d - b*c"));
}

TEST(WeightedDet, DecodingIsExhaustive) {
  for (std::size_t n = 1; n <= 4; ++n) {
    Formula g = weighted_det_generic(n);
    FormulaEvaluator ev(g, xs(n * n * n));
    std::set<Value> seen;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Rational> point;
      std::vector<bool> pattern;
      for (std::size_t i = 0; i < n; ++i) {
        bool zero = (mask >> i) & 1u;
        pattern.push_back(zero);
        for (const auto& row : zero ? singular(n) : nonsingular(n)) point.insert(point.end(), row.begin(), row.end());
      }
      Value v = ev.at(point);
      EXPECT_EQ(decode_weighted_det(v, n), pattern);
      seen.insert(v);
    }
    EXPECT_EQ(seen.size(), std::size_t{1} << n);
  }
  EXPECT_THROW(decode_weighted_det(Value(3), 2), DomainError);
  EXPECT_THROW(decode_weighted_det(Value(8), 2), DomainError);
}

TEST(Hn, Examples) {
  Integer omega = hn_default_omega(1);
  EXPECT_EQ(omega, 10000);
  HnResult sq = hn_gadget({quadric(0, 0, 1)}, 1);
  EXPECT_EQ(sq.value, pow(omega, 8) - 2 * pow(omega, 16));
  EXPECT_EQ(sq.chi_bound, 6);
  EXPECT_EQ(sq.chi_by_sign.at({0}), 1);
  EXPECT_EQ(sq.chi_by_sign.at({1}), -2);
  EXPECT_EQ(sq.chi_by_sign.at({-1}), 0);
  HnResult pos = hn_gadget({quadric(1, 0, 1)}, 1);
  EXPECT_EQ(pos.value, -pow(omega, 16));
  EXPECT_THROW(hn_gadget({quadric(0, 0, 1)}, 1, Integer(36)), DomainError);
  EXPECT_NO_THROW(hn_gadget({quadric(0, 0, 1)}, 1, Integer(37)));
  EXPECT_THROW(hn_gadget({RationalMatrix{{Rational(1), Rational(2)}, {Rational(3), Rational(1)}}}, 1), DomainError);
  EXPECT_THROW(hn_gadget({quadric(0, 0, 1)}, 2), DomainError);
}

TEST(Hn, DecodedDigitsMatchSignConditions) {
  // Two quadrics in the plane: the unit circle and the line y1 = y2.
  RationalMatrix circle = {{Rational(-1), Rational(0), Rational(0)},
                           {Rational(0), Rational(1), Rational(0)},
                           {Rational(0), Rational(0), Rational(1)}};
  RationalMatrix line = {{Rational(0), Rational(1, 2), Rational(-1, 2)},
                         {Rational(1, 2), Rational(0), Rational(0)},
                         {Rational(-1, 2), Rational(0), Rational(0)}};
  HnResult r = hn_gadget({circle, line}, 2);
  CadTree t = build_cad({dehomogenize(circle), dehomogenize(line)}, make_var_list({"y1", "y2"}));
  std::map<std::vector<int>, Integer> oracle;
  for (const auto& [sigma, chi] : chi_by_sign_condition(t)) oracle[sigma] = chi;
  for (const auto& [sigma, chi] : r.chi_by_sign) {
    auto it = oracle.find(sigma);
    EXPECT_EQ(chi, it == oracle.end() ? Integer(0) : it->second);
  }
  // Circle meets the line in two points; the open disk is cut in two.
  EXPECT_EQ(r.chi_by_sign.at({0, 0}), 2);
  EXPECT_EQ(r.chi_by_sign.at({-1, 1}), 1);
}

TEST(Hn, DigitSeparation) {
  std::vector<RationalMatrix> family = {quadric(1, 0, 1),  quadric(-1, 0, -1), quadric(0, 0, 1),
                                       quadric(0, 0, -1), quadric(-1, 0, 1),  quadric(1, 0, -1)};
  std::set<Integer> values;
  std::set<std::map<std::vector<int>, Integer>> vectors;
  for (const auto& q : family) {
    HnResult r = hn_gadget({q}, 1);
    values.insert(r.value);
    vectors.insert(r.chi_by_sign);
  }
  EXPECT_EQ(vectors.size(), family.size());
  EXPECT_EQ(values.size(), family.size());
}

TEST(Phi, Examples) {
  EXPECT_EQ(phi_encode({0, 0, 0}, 5), 0);
  EXPECT_EQ(phi_encode({1, -1}, 2), -3);
  EXPECT_EQ(phi_encode({1, -2, 0}, 3), -17);
  EXPECT_THROW(phi_encode({2}, 2), DomainError);
  EXPECT_THROW(phi_encode({0}, 1), DomainError);
}

TEST(Phi, InjectiveExhaustive) {
  for (long m = 2; m <= 4; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      std::set<Integer> seen;
      std::vector<Integer> a(n, Integer(-(m - 1)));
      std::size_t count = 0;
      while (true) {
        seen.insert(phi_encode(a, m));
        ++count;
        std::size_t i = 0;
        while (i < n && a[i] == m - 1) a[i++] = -(m - 1);
        if (i == n) break;
        ++a[i];
      }
      EXPECT_EQ(seen.size(), count);
    }
  std::set<Integer> m3;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long c = -2; c <= 2; ++c) m3.insert(phi_encode({a, b, c}, 3));
  EXPECT_EQ(m3.size(), 125u);
}

TEST(Phi, TopDigitDecidesOrder) {
  // a > b compared from the top entry gives phi(a) > phi(b).
  std::vector<std::vector<Integer>> all;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b) all.push_back({a, b});
  for (const auto& a : all)
    for (const auto& b : all) {
      bool greater = a[1] != b[1] ? a[1] > b[1] : a[0] > b[0];
      if (greater) EXPECT_GT(phi_encode(a, 3), phi_encode(b, 3));
    }
}
