#include <gtest/gtest.h>

#include <random>

#include "cfe/error.hpp"
#include "cfe/polyring/multipoly.hpp"
#include "cfe/polyring/parse.hpp"
#include "cfe/polyring/resultant.hpp"
#include "oracles.hpp"

namespace cfe {
namespace {

MultiPoly P(const char* text) { return parse_poly(text); }

MultiPoly random_poly(std::mt19937_64& rng, const std::vector<std::string>& vars, int max_deg, int terms) {
  std::uniform_int_distribution<int> coef(-4, 4);
  std::uniform_int_distribution<int> var(0, static_cast<int>(vars.size()) - 1);
  std::uniform_int_distribution<int> deg(0, max_deg);
  MultiPoly acc(Rational(0));
  for (int t = 0; t < terms; ++t) {
    MultiPoly mono(Rational(coef(rng)));
    int d = deg(rng);
    for (int k = 0; k < d; ++k) mono = mono * MultiPoly::variable(vars[static_cast<std::size_t>(var(rng))]);
    acc = acc + mono;
  }
  return acc;
}

TEST(NaturalOrderTest, NumericSuffixes) {
  EXPECT_TRUE(natural_less("x2", "x10"));
  EXPECT_TRUE(natural_less("x9", "y1"));
  EXPECT_FALSE(natural_less("x10", "x2"));
  EXPECT_TRUE(natural_less("x", "x1"));
}

TEST(MultiPolyTest, Arithmetic) {
  EXPECT_EQ(P("x+y") + P("x-y"), P("2*x"));
  EXPECT_EQ(P("x+1") * P("x-1"), P("x^2-1"));
  EXPECT_TRUE((P("x*y") - P("y*x")).is_zero());
  EXPECT_EQ(P("(x+1)^3"), P("x^3+3x^2+3x+1"));
  EXPECT_EQ(P("3/2*x1^2*x2 - x3 + 1").total_degree(), 3);
  EXPECT_EQ(P("x1^2*x2 + x2^5").degree_in("x2"), 5);
  EXPECT_EQ(P("x/2"), P("1/2*x"));
}

TEST(MultiPolyTest, ProductMatchesConvolutionOracle) {
  std::mt19937_64 rng(11);
  std::vector<std::string> vars{"x1", "x2", "x3"};
  for (int trial = 0; trial < 50; ++trial) {
    MultiPoly a = random_poly(rng, vars, 3, 5), b = random_poly(rng, vars, 3, 5);
    MultiPoly prod = a * b;
    // Convolution over the common canonical list.
    VarList joint = canonical_var_list(vars);
    MultiPoly ar = a.remap(joint), br = b.remap(joint);
    std::map<std::vector<std::uint32_t>, Rational> expect;
    for (const auto& [ea, ca] : ar.terms())
      for (const auto& [eb, cb] : br.terms()) {
        std::vector<std::uint32_t> e(3);
        for (int i = 0; i < 3; ++i) e[i] = ea[i] + eb[i];
        expect[e] += ca * cb;
      }
    std::map<std::vector<std::uint32_t>, Rational> got;
    MultiPoly pr = prod.remap(joint);
    for (const auto& [e, c] : pr.terms()) got[e] = c;
    for (auto it = expect.begin(); it != expect.end();)
      it = sgn(it->second) == 0 ? expect.erase(it) : std::next(it);
    EXPECT_EQ(got, expect);
  }
}

TEST(MultiPolyTest, ExactDivision) {
  MultiPoly a = P("x^2*y - y^3 + x*y^2 - x^3"), b = P("x - y");
  MultiPoly q = exact_divide(a, b);
  EXPECT_EQ(q * b, a);
  EXPECT_THROW(exact_divide(P("x^2+1"), P("x+1")), DomainError);
  EXPECT_THROW(exact_divide(P("x"), MultiPoly(Rational(0))), DomainError);
}

TEST(MultiPolyTest, EvaluationAndDimensionCheck) {
  MultiPoly p = P("x1^2 + x2^2 - 1");
  EXPECT_EQ(p.evaluate({Rational(0), Rational(0)}), Rational(-1));
  EXPECT_EQ(p.evaluate({Rational(1), Rational(0)}), Rational(0));
  EXPECT_THROW(p.evaluate({Rational(1)}), DomainError);
}

TEST(MultiPolyTest, SubstitutionRebuildsProgram) {
  MultiPoly p = P("y1*y2");
  MultiPoly s = p.substitute({{"y1", P("x1")}, {"y2", MultiPoly(Rational(1))}});
  EXPECT_EQ(s, P("x1"));
  EXPECT_LE(size_of_poly(s).size(), size_of_poly(p).size());
  MultiPoly q = P("(y1+y2)^2").substitute({{"y1", P("x")}, {"y2", P("x")}});
  EXPECT_EQ(q, P("4x^2"));
  EXPECT_EQ(size_of_poly(q).slp_length, 3u);
}

TEST(ParseTest, RoundTrip) {
  for (const char* text : {"3/2*x1^2*x2 - x3 + 1", "-x", "0", "7", "x1*x2*x3 - 2/3", "(x+y)^4 - x*y"}) {
    MultiPoly p = P(text);
    EXPECT_EQ(parse_poly(p.to_string()), p) << text << " -> " << p.to_string();
  }
  EXPECT_EQ(P("3/2*x1^2*x2 - x3 + 1").to_string(), "3/2*x1^2*x2 - x3 + 1");
}

TEST(ParseTest, Errors) {
  try {
    parse_poly("x1 + * x2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1);
    EXPECT_EQ(e.column(), 6);
  }
  EXPECT_THROW(parse_poly("x + t"), ParseError);
  EXPECT_THROW(parse_poly("x^"), ParseError);
  EXPECT_THROW(parse_poly("(x+1"), ParseError);
  EXPECT_THROW(parse_poly("1/0*x"), ParseError);
  EXPECT_THROW(parse_poly("x $ y"), ParseError);
}

TEST(SizeTest, Examples) {
  PolySize s = size_of_poly(MultiPoly::variable("x1"));
  EXPECT_EQ(s.degree, 1);
  EXPECT_EQ(s.slp_length, 1u);
  EXPECT_EQ(s.size(), 1u);

  MultiPoly x = MultiPoly::variable("x");
  MultiPoly sum = x + MultiPoly(Rational(1));
  EXPECT_EQ(size_of_poly(sum * sum).slp_length, 3u);
  EXPECT_EQ(size_of_poly(P("(x+1)^2")).slp_length, 3u);

  // Horner: ((c_d x + c_{d-1}) x + ...) + c_0
  for (int d = 1; d <= 6; ++d) {
    MultiPoly h(Rational(d + 1));
    for (int i = d - 1; i >= 0; --i) h = h * x + MultiPoly(Rational(i + 1));
    EXPECT_EQ(size_of_poly(h).slp_length, static_cast<std::size_t>(2 * d + 1)) << d;
    EXPECT_EQ(size_of_poly(h).degree, d);
  }
  EXPECT_EQ(size_of_poly(MultiPoly(Rational(5))).size(), 1u);
  EXPECT_EQ(size_of_poly(MultiPoly(Rational(0))).size(), 0u);
}

TEST(SizeTest, DisjointOperandsAddUp) {
  MultiPoly a = P("x1^2 + 1"), b = P("x2*x3");
  std::size_t sa = size_of_poly(a).slp_length, sb = size_of_poly(b).slp_length;
  EXPECT_EQ(size_of_poly(a + b).slp_length, sa + sb + 1);
  EXPECT_EQ(size_of_poly(a * b).slp_length, sa + sb + 1);
}

TEST(SizeTest, DegreeNeverExceedsSize) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    MultiPoly p = random_poly(rng, {"x", "y"}, 4, 4);
    PolySize s = size_of_poly(p);
    EXPECT_LE(static_cast<std::size_t>(s.degree), s.size());
    PolySize naive = size_of_poly(p.without_program());
    EXPECT_LE(static_cast<std::size_t>(naive.degree), naive.size());
  }
}

TEST(ResultantTest, Examples) {
  MultiPoly r = resultant(P("y^2 - x"), P("y"), "y");
  EXPECT_TRUE(r == P("x") || r == P("-x")) << r.to_string();
  EXPECT_TRUE(resultant(P("y-1"), P("y-1"), "y").is_zero());
  MultiPoly r2 = resultant(P("y^2+1"), P("y^2-x"), "y");
  EXPECT_TRUE(r2 == P("(x+1)^2") || r2 == -P("(x+1)^2")) << r2.to_string();
  EXPECT_THROW(resultant(P("x"), P("y"), "y"), DomainError);
}

TEST(ResultantTest, SymmetricUpToSignAndMatchesSylvesterOracle) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> pt(-3, 3);
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly a = random_poly(rng, {"x", "y"}, 3, 4) + P("y^2");
    MultiPoly b = random_poly(rng, {"x", "y"}, 3, 4) + P("x*y");
    if (a.degree_in("y") <= 0 || b.degree_in("y") <= 0) continue;
    MultiPoly ab = resultant(a, b, "y"), ba = resultant(b, a, "y");
    EXPECT_TRUE(ab == ba || ab == -ba);
    // Specialize at x = c and compare with a Leibniz determinant.
    Rational c(pt(rng));
    MultiPoly au = a, bu = b;
    unify(au, bu);
    std::size_t yi = static_cast<std::size_t>(au.var_index("y"));
    std::size_t xi = 1 - yi;
    auto specialize = [&](const MultiPoly& p) {
      std::vector<Rational> out;
      for (const auto& coeff : p.coefficients_in(yi)) {
        std::vector<Rational> point(2, Rational(0));
        point[xi] = c;
        out.push_back(coeff.evaluate(point));
      }
      return out;
    };
    std::vector<Rational> point(ab.nvars(), c);
    Rational expect = testing_oracle::sylvester_resultant(specialize(au), specialize(bu));
    Rational got = ab.nvars() == 0 ? ab.constant_term() : ab.remap(au.vars()).evaluate({c, c});
    EXPECT_EQ(got, expect);
    // Nonzero resultant at a point: the specializations share no root.
    if (sgn(got) != 0) {
      QPoly pa(specialize(au)), pb(specialize(bu));
      EXPECT_EQ(gcd(pa, pb).degree(), 0);
    }
  }
}

TEST(ResultantTest, SubresultantCoefficientsDetectGcdDegree) {
  // (y - x)(y + 1) and (y - x)(y - 2): gcd degree 1, so psc_0 = 0, psc_1 != 0.
  MultiPoly a = P("(y - x)*(y + 1)"), b = P("(y - x)*(y - 2)");
  unify(a, b);
  auto psc = principal_subresultant_coefficients(a, b, static_cast<std::size_t>(a.var_index("y")));
  ASSERT_EQ(psc.size(), 2u);
  EXPECT_TRUE(psc[0].is_zero());
  EXPECT_FALSE(psc[1].is_zero());
  EXPECT_TRUE(psc[1].is_constant());
}

TEST(BareissTest, MatchesLeibnizOnRationalMatrices) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> v(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 1 + trial % 5;
    std::vector<std::vector<MultiPoly>> m(n);
    std::vector<std::vector<Rational>> q(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational x(v(rng));
        if (trial % 3 == 0 && j == 0) x = 0;  // forces pivoting
        q[i].push_back(x);
        m[i].push_back(MultiPoly(x));
      }
    EXPECT_EQ(bareiss_determinant(m).constant_term(), testing_oracle::leibniz_determinant(q));
  }
}

}  // namespace
}  // namespace cfe
