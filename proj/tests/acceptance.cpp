// Acceptance run: one PASS/FAIL line per criterion. The first argument is
// the path of the cfe command-line binary.
#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>

#include "cfe/classes/gadgets.hpp"
#include "cfe/classes/partition.hpp"
#include "cfe/euler/euler.hpp"
#include "cfe/exactnum/algebraic.hpp"
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

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool check(Outcome& o, bool ok, const std::string& what) {
  if (!ok && o.pass) o.detail = what;
  o.pass = o.pass && ok;
  return ok;
}

Outcome spheres_and_balls() {
  Outcome o;
  for (std::size_t n = 1; n <= 4; ++n) {
    std::string s;
    for (std::size_t i = 1; i <= n; ++i) s += "x" + std::to_string(i) + "^2 + ";
    s += "(-1)";
    long sign = n % 2 == 0 ? 1 : -1;
    long sphere = chi_of_formula_set(parse_set_formula(s + " = 0"), over(xs(n)));
    long ball = chi_of_formula_set(parse_set_formula(s + " < 0"), over(xs(n)));
    long closed = chi_of_formula_set(parse_set_formula(s + " <= 0"), over(xs(n)));
    check(o, sphere == 1 - sign, "sphere n=" + std::to_string(n) + " gave " + std::to_string(sphere));
    check(o, ball == sign, "open ball n=" + std::to_string(n) + " gave " + std::to_string(ball));
    check(o, closed == 1, "closed ball n=" + std::to_string(n) + " gave " + std::to_string(closed));
  }
  if (o.pass) o.detail = "S^0..S^3, B^1..B^4 open and closed";
  return o;
}

Outcome punctured_plane() {
  Outcome o;
  long chi = chi_of_formula_set(parse_set_formula("x^2 + y^2 > 0"), over(make_var_list({"x", "y"})));
  check(o, chi == 0, "chi = " + std::to_string(chi));
  if (o.pass) o.detail = "chi = 0";
  return o;
}

Outcome additivity_multiplicativity() {
  Outcome o;
  RandomInputs gen(3003);
  VarList plane = xs(2), x = make_var_list({"x1"}), y = make_var_list({"x2"});
  for (int t = 0; t < 100; ++t) {
    auto fam = gen.family(plane, 3, 2, 3);
    SetFormula a = gen.set_formula(fam, 2), b = gen.set_formula(fam, 2);
    long defect = chi_of_formula_set(make_or(a, b), over(plane)) + chi_of_formula_set(make_and(a, b), over(plane)) -
                  chi_of_formula_set(a, over(plane)) - chi_of_formula_set(b, over(plane));
    check(o, defect == 0, "additivity: " + to_string(a) + " / " + to_string(b));
  }
  for (int t = 0; t < 100; ++t) {
    SetFormula a = gen.set_formula(gen.family(x, 3, 2, 3), 2);
    SetFormula b = gen.set_formula(gen.family(y, 3, 2, 3), 2);
    long prod = chi_of_formula_set(make_and(a, b), over(plane));
    check(o, prod == chi_of_formula_set(a, over(x)) * chi_of_formula_set(b, over(y)),
          "multiplicativity: " + to_string(a) + " x " + to_string(b));
  }
  if (o.pass) o.detail = "100 union/intersection pairs, 100 product pairs";
  return o;
}

Outcome fubini() {
  Outcome o;
  RandomInputs gen(4004);
  for (int t = 0; t < 50; ++t) {
    Formula f = gen.formula(gen.family(xs(2), 3, 2, 3), 2);
    check(o, fubini_check(f, 1, over(xs(2))).holds, "R^2: " + to_string(f));
  }
  for (int t = 0; t < 20; ++t) {
    Formula f = gen.formula(gen.family(xs(3), 2, 2, 2), 2);
    std::size_t base = t % 2 == 0 ? 1 : 2;
    check(o, fubini_check(f, base, over(xs(3))).holds, "R^3 base " + std::to_string(base) + ": " + to_string(f));
  }
  if (o.pass) o.detail = "50 formulas on R^2, 20 on R^3";
  return o;
}

// The displayed double sum, written out with plain loops and a
// multiplicative binomial.
long naive_bound(long s, long d, long n) {
  auto choose = [](long a, long b) {
    long r = 1;
    for (long i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  long per = d;
  for (long i = 1; i < n; ++i) per *= 2 * d - 1;
  long total = 0;
  for (long i = 0; i < n; ++i)
    for (long j = 0; j <= i + 1; ++j) total += choose(s + 1, j) * per;
  return total;
}

Outcome bound_soundness() {
  Outcome o;
  check(o, naive_bound(1, 2, 1) == 6 && naive_bound(2, 2, 2) == 66, "naive oracle disagrees with 6 / 66");
  check(o, eval_chi_bound(1, 2, 1).sign_condition_bound == naive_bound(1, 2, 1), "bound(1,2,1)");
  check(o, eval_chi_bound(2, 2, 2).sign_condition_bound == naive_bound(2, 2, 2), "bound(2,2,2)");
  RandomInputs gen(5005);
  std::size_t conditions = 0;
  for (int t = 0; t < 50; ++t) {
    std::size_t n = static_cast<std::size_t>(1 + t % 3);
    auto fam = gen.family(xs(n), 4, 3, 3);
    long d = 2;
    for (const auto& p : fam) d = std::max<long>(d, p.total_degree());
    long s = static_cast<long>(fam.size());
    Integer b = eval_chi_bound(s, d, static_cast<long>(n)).sign_condition_bound;
    check(o, b == naive_bound(s, d, static_cast<long>(n)), "bound disagrees with the naive sum");
    for (const auto& [sigma, c] : chi_by_sign_condition(build_cad(fam, xs(n)))) {
      ++conditions;
      check(o, Integer(std::abs(c)) <= b, "|chi| = " + std::to_string(std::abs(c)) + " above " + b.get_str());
    }
  }
  if (o.pass) o.detail = "50 families, " + std::to_string(conditions) + " realizable sign conditions";
  return o;
}

ValuePoly small_h(RandomInputs& gen) {
  std::vector<Value> c;
  long deg = gen.draw(1, 2);
  for (long i = 0; i <= deg; ++i) c.push_back(Value(Rational(gen.draw(-3, 3))));
  if (c.back().is_zero()) c.back() = Value(1);
  return ValuePoly(std::move(c));
}

Outcome refinement_and_lagrange() {
  Outcome o;
  RandomInputs gen(6006);
  VarList plane = xs(2);
  for (int t = 0; t < 30; ++t) {
    Formula fbar = gen.formula(gen.family(plane, 3, 2, 3), 2);
    Formula f = make_post_compose(small_h(gen), fbar);
    if (!check(o, refines(fbar, f, over(plane)), "positive pair rejected: " + to_string(f))) continue;
    ValuePoly h = lagrange_witness(fbar, f, over(plane));
    auto tree = common_tree(fbar, f, over(plane));
    check(o, cell_values(*tree, make_post_compose(h, fbar)) == cell_values(*tree, f),
          "witness does not reproduce " + to_string(f));
  }
  // Negative pairs: fbar merges two values that f keeps apart.
  int negatives = 0;
  while (negatives < 30) {
    Formula f = gen.formula(gen.family(plane, 3, 2, 3), 2);
    LevelPartition p = par_of(f, over(plane));
    if (p.levels.size() < 2) continue;
    Value a = p.levels[0].value, b = p.levels[1].value;
    Formula fbar = make_post_compose(ValuePoly({a * b, -(a + b), Value(1)}), f);
    check(o, !refines(fbar, f, over(plane)), "negative pair accepted: " + to_string(fbar) + " vs " + to_string(f));
    ++negatives;
  }
  if (o.pass) o.detail = "30 positive pairs with witnesses, 30 negative pairs";
  return o;
}

Outcome gadget_decoding() {
  Outcome o;
  for (std::size_t n = 1; n <= 4; ++n) {
    FormulaEvaluator ev(weighted_det_generic(n), xs(n * n * n));
    std::set<Value> seen;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<Rational> point;
      std::vector<bool> pattern;
      for (std::size_t i = 0; i < n; ++i) {
        bool zero = (mask >> i) & 1u;
        pattern.push_back(zero);
        // A singular matrix has equal first and last rows; the other is the
        // identity plus a strictly upper part.
        for (std::size_t r = 0; r < n; ++r)
          for (std::size_t c = 0; c < n; ++c) {
            std::size_t row = zero && n > 1 && r == n - 1 ? 0 : r;
            long e = (row == c ? 1 : 0) + (c > row ? static_cast<long>(c + row) : 0);
            point.push_back(zero && n == 1 ? Rational(0) : Rational(e));
          }
      }
      Value v = ev.at(point);
      check(o, decode_weighted_det(v, n) == pattern, "weighted-det n=" + std::to_string(n) + " mask " + std::to_string(mask));
      seen.insert(v);
    }
    check(o, seen.size() == (std::size_t{1} << n), "weighted-det values collide for n=" + std::to_string(n));
  }
  for (long m = 2; m <= 4; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      std::set<Integer> seen;
      std::size_t count = 0;
      std::vector<Integer> a(n, Integer(-(m - 1)));
      while (true) {
        seen.insert(phi_encode(a, m));
        ++count;
        std::size_t i = 0;
        while (i < n && a[i] == m - 1) a[i++] = -(m - 1);
        if (i == n) break;
        ++a[i];
      }
      check(o, seen.size() == count, "phi collides for M=" + std::to_string(m) + " n=" + std::to_string(n));
    }
  if (o.pass) o.detail = "weighted-det n=1..4 all patterns, phi n<=3 M<=4";
  return o;
}

// chi of {Q=0}, {Q>0}, {Q<0} on the line by root isolation.
std::map<std::vector<int>, Integer> chi_on_line(const QPoly& q) {
  std::map<std::vector<int>, Integer> out{{{0}, 0}, {{1}, 0}, {{-1}, 0}};
  if (q.is_zero()) {
    out[{0}] = -1;
    return out;
  }
  auto roots = isolate_real_roots(q);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i)
    while (!(roots[i].interval().hi() < roots[i + 1].interval().lo())) {
      roots[i].refine();
      roots[i + 1].refine();
    }
  out[{0}] = static_cast<long>(roots.size());
  std::vector<Rational> samples;
  if (roots.empty()) {
    samples.push_back(0);
  } else {
    samples.push_back(roots.front().interval().lo() - 1);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
      samples.push_back((roots[i].interval().hi() + roots[i + 1].interval().lo()) / 2);
    samples.push_back(roots.back().interval().hi() + 1);
  }
  for (const auto& x : samples) out[{sgn(q(x))}] -= 1;
  return out;
}

Outcome hn_separation() {
  Outcome o;
  auto quadric = [](long a, long b, long c) {
    return RationalMatrix{{Rational(a), Rational(b)}, {Rational(b), Rational(c)}};
  };
  std::vector<RationalMatrix> family = {quadric(1, 0, 1),  quadric(-1, 0, -1), quadric(0, 0, 1),
                                       quadric(0, 0, -1), quadric(-1, 0, 1),  quadric(1, 0, -1)};
  std::set<std::map<std::vector<int>, Integer>> oracle_vectors;
  std::set<Integer> values;
  for (const auto& m : family) {
    QPoly q({m[0][0], 2 * m[0][1], m[1][1]});
    auto oracle = chi_on_line(q);
    oracle_vectors.insert(oracle);
    HnResult r = hn_gadget({m}, 1);
    values.insert(r.value);
    check(o, r.chi_by_sign == oracle, "decoded chi vector differs from root isolation");
    Integer expect = 0;
    for (const auto& [sigma, chi] : oracle) {
      unsigned e = sigma[0] == 0 ? 0 : (sigma[0] > 0 ? 1 : 2);
      expect += chi * pow(r.omega, 1UL << (3 + e));
    }
    check(o, r.value == expect, "hn value differs from the oracle sum");
  }
  check(o, oracle_vectors.size() == 6, "instances do not have distinct chi vectors");
  check(o, values.size() == 6, "hn values are not distinct");
  if (o.pass) o.detail = "6 quadrics, 6 distinct values, Omega = " + hn_default_omega(1).get_str();
  return o;
}

std::string run_command(const std::string& cmd, int& status) {
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    status = -1;
    return out;
  }
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  status = pclose(pipe);
  return out;
}

Outcome determinism(const std::string& cli) {
  Outcome o;
  if (!check(o, !cli.empty(), "no command-line binary given")) return o;
  int s1 = 0, s2 = 0;
  std::string cmd = "\"" + cli + "\" selftest --seed 42 --json";
  std::string a = run_command(cmd, s1), b = run_command(cmd, s2);
  check(o, s1 == 0 && s2 == 0, "selftest exit status " + std::to_string(s1) + " / " + std::to_string(s2));
  check(o, !a.empty() && a == b, "outputs differ");
  if (o.pass) o.detail = std::to_string(a.size()) + " identical bytes";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    std::string name;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> criteria = {
      {1, "sphere and ball chi table", spheres_and_balls},
      {2, "chi of the punctured plane", punctured_plane},
      {3, "additivity and multiplicativity", additivity_multiplicativity},
      {4, "Fubini for pushforwards", fubini},
      {5, "chi bound soundness", bound_soundness},
      {6, "refinement and Lagrange witnesses", refinement_and_lagrange},
      {7, "gadget decoding", gadget_decoding},
      {8, "hn digit separation", hn_separation},
      {9, "selftest determinism", [&] { return determinism(cli); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && o.pass;
    std::printf("%s criterion %d (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
