#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "cfe/classes/gadgets.hpp"
#include "cfe/classes/partition.hpp"
#include "cfe/classes/reduction.hpp"
#include "cfe/error.hpp"
#include "cfe/euler/euler.hpp"
#include "cfe/formula/parse.hpp"
#include "cfe/polyring/parse.hpp"
#include "selftest.hpp"

using json = nlohmann::json;
using namespace cfe;

namespace {

struct RunConfig {
  std::string file;
  std::string set;
  std::string order;
  std::size_t dim = 0;
  std::size_t budget = 1'000'000;
  std::size_t var_cap = 4;
  bool json_out = false;
  std::uint64_t seed = 42;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    if (b == std::string::npos) throw DomainError("empty entry in list '" + text + "'");
    out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Rational parse_rational(const std::string& text) {
  MultiPoly p = parse_poly(text);
  if (!p.is_constant()) throw DomainError("expected a rational number, got '" + text + "'");
  return p.constant_term();
}

// Order from --order, else the given variables padded by x1, x2, ... up to
// --dim.
EulerOptions options_for(const RunConfig& cfg, const VarList& used) {
  EulerOptions opts;
  opts.cad.max_cells = cfg.budget;
  opts.cad.max_variables = cfg.var_cap;
  if (!cfg.order.empty()) {
    opts.order = make_var_list(split(cfg.order, ','));
    if (cfg.dim != 0 && cfg.dim != opts.order->size()) throw DomainError("--dim disagrees with --order");
    return opts;
  }
  std::vector<std::string> names(used->begin(), used->end());
  if (cfg.dim != 0 && cfg.dim < names.size())
    throw DomainError("the input uses " + std::to_string(names.size()) + " variables, more than --dim " +
                      std::to_string(cfg.dim));
  for (std::size_t i = 1; names.size() < cfg.dim; ++i) {
    std::string v = "x" + std::to_string(i);
    if (std::find(names.begin(), names.end(), v) == names.end()) names.push_back(v);
  }
  opts.order = canonical_var_list(names);
  return opts;
}

std::vector<Binding> bindings_of(const RunConfig& cfg) { return cfg.file.empty() ? std::vector<Binding>{} : load_cf_file(cfg.file); }

// A formula given as text, or as the name of a binding in --file.
Formula formula_arg(const std::string& text, const std::vector<Binding>& bindings) {
  for (const auto& b : bindings)
    if (b.name == text) return b.formula;
  return parse_formula(text);
}

Formula main_formula(const RunConfig& cfg, const std::string& text) {
  if (!text.empty()) return formula_arg(text, bindings_of(cfg));
  if (!cfg.file.empty()) return primary_binding(load_cf_file(cfg.file)).formula;
  throw DomainError("no input: pass a formula, --file or --set");
}

json order_json(const VarList& order) { return json(*order); }

void emit(const RunConfig& cfg, const json& j, const std::string& text) {
  if (cfg.json_out) std::cout << j.dump() << "\n";
  else std::cout << text << "\n";
}

std::string values_text(const Pushforward& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.values.size(); ++i) s += (i ? ", " : "") + p.values[i].value.to_string();
  return s + "]";
}

int cmd_integrate(const RunConfig& cfg, const std::string& text, bool as_chi) {
  Formula f;
  if (!cfg.set.empty()) f = indicator(parse_set_formula(cfg.set));
  else f = main_formula(cfg, text);
  EulerOptions opts = options_for(cfg, formula_variables(f));
  EulerResult r = euler_integrate(f, opts);
  json j{{as_chi && r.value.is_rational() ? "chi" : "integral", r.value.to_string()},
         {"cells", r.cells},
         {"order", order_json(r.order)}};
  emit(cfg, j, r.value.to_string());
  return 0;
}

int cmd_pushforward(const RunConfig& cfg, const std::string& text, std::size_t base, bool verify) {
  Formula f = main_formula(cfg, text);
  EulerOptions opts = options_for(cfg, formula_variables(f));
  Pushforward p = pushforward(f, base, opts);
  json j = json::parse(p.to_json());
  std::string out = values_text(p);
  int code = 0;
  if (verify) {
    FubiniReport r = fubini_check(f, base, opts);
    j["fubini"] = {{"total", r.total.to_string()}, {"via_pushforward", r.via_pushforward.to_string()}, {"holds", r.holds}};
    out += "\nfubini: " + r.total.to_string() + " = " + r.via_pushforward.to_string() + (r.holds ? " ok" : " FAILED");
    if (!r.holds) code = 1;
  }
  if (auto g = pushforward_formula(p)) {
    j["formula"] = to_string(*g);
  }
  emit(cfg, j, out);
  return code;
}

int cmd_partition(const RunConfig& cfg, const std::string& text) {
  Formula f = main_formula(cfg, text);
  LevelPartition p = par_of(f, options_for(cfg, formula_variables(f)));
  std::string out;
  for (const auto& l : p.levels) out += l.value.to_string() + ": " + std::to_string(l.cells.size()) + " cells\n";
  out.pop_back();
  emit(cfg, json::parse(p.to_json()), out);
  return 0;
}

int cmd_refines(const RunConfig& cfg, const std::string& fine_text, const std::string& coarse_text, bool witness) {
  auto bindings = bindings_of(cfg);
  Formula fine = formula_arg(fine_text, bindings), coarse = formula_arg(coarse_text, bindings);
  VarList fv = formula_variables(fine);
  std::vector<std::string> names(fv->begin(), fv->end());
  VarList cv = formula_variables(coarse);
  names.insert(names.end(), cv->begin(), cv->end());
  EulerOptions opts = options_for(cfg, canonical_var_list(names));
  bool r = refines(fine, coarse, opts);
  json j{{"refines", r}};
  std::string out = r ? "true" : "false";
  if (r && witness) {
    ValuePoly h = lagrange_witness(fine, coarse, opts);
    j["witness"] = to_string(h);
    out += "\nh(u) = " + to_string(h);
  }
  emit(cfg, j, out);
  return 0;
}

SubstitutionMap parse_map(const std::string& text) {
  SubstitutionMap z;
  for (const auto& entry : split(text, ',')) {
    auto eq = entry.find('=');
    if (eq == std::string::npos) throw DomainError("map entry '" + entry + "' is not of the form var=value");
    std::string lhs = split(entry.substr(0, eq), ' ').front(), rhs = split(entry.substr(eq + 1), ' ').front();
    z.target_vars.push_back(lhs);
    MultiPoly p = parse_poly(rhs);
    if (p.is_constant()) z.assignment.emplace_back(p.constant_term());
    else if (p == MultiPoly::variable(rhs)) z.assignment.emplace_back(rhs);
    else throw DomainError("map entry '" + entry + "' must assign a variable or a rational constant");
  }
  return z;
}

int cmd_reduce_check(const RunConfig& cfg, const std::string& f_text, const std::string& g_text, const std::string& map) {
  auto bindings = bindings_of(cfg);
  Formula f = formula_arg(f_text, bindings), g = formula_arg(g_text, bindings);
  SubstitutionMap z = parse_map(map);
  EulerOptions opts;
  opts.cad.max_cells = cfg.budget;
  opts.cad.max_variables = cfg.var_cap;
  if (!cfg.order.empty()) opts.order = make_var_list(split(cfg.order, ','));
  ReductionReport r = reduce_check(f, g, z, opts);
  json j{{"fbar", to_string(r.fbar)},
         {"refines", r.refines},
         {"size_f", r.size_f},
         {"size_g", r.size_g},
         {"size_fbar", r.size_fbar}};
  emit(cfg, j, std::string("fbar = ") + to_string(r.fbar) + "\nPar(fbar) refines Par(f): " + (r.refines ? "true" : "false"));
  return 0;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON in ") + path + ": " + e.what(), 1, 1);
  }
}

MultiPoly entry_poly(const json& e) {
  if (e.is_number_integer()) return MultiPoly(Rational(e.get<long>()));
  if (e.is_string()) return parse_poly(e.get<std::string>());
  throw DomainError("matrix entries must be integers or strings, got " + e.dump());
}

std::vector<json> matrix_list(const json& j, std::size_t n) {
  if (!j.is_array()) throw DomainError("expected a JSON array of matrices");
  if (j.size() != n) throw DomainError("expected " + std::to_string(n) + " matrices, got " + std::to_string(j.size()));
  for (const auto& m : j)
    if (!m.is_array()) throw DomainError("each matrix must be an array of rows");
  return {j.begin(), j.end()};
}

int cmd_weighted_det(const RunConfig& cfg, std::size_t n, const std::string& path) {
  std::vector<PolyMatrix> ms;
  for (const auto& m : matrix_list(read_json_file(path), n)) {
    PolyMatrix a;
    for (const auto& row : m) {
      if (!row.is_array()) throw DomainError("each row must be an array");
      std::vector<MultiPoly> r;
      for (const auto& e : row) r.push_back(entry_poly(e));
      a.push_back(std::move(r));
    }
    ms.push_back(std::move(a));
  }
  Formula g = weighted_det(ms);
  VarList vars = formula_variables(g);
  json j{{"formula", to_string(g)}};
  if (vars->empty()) {
    Value v = FormulaEvaluator(g).at({});
    j["value"] = v.to_string();
    std::vector<bool> pattern = decode_weighted_det(v, n);
    j["zero_pattern"] = pattern;
    emit(cfg, j, v.to_string());
  } else {
    emit(cfg, j, to_string(g));
  }
  return 0;
}

int cmd_hn(const RunConfig& cfg, std::size_t n, std::size_t m, const std::string& path, const std::string& omega) {
  std::vector<RationalMatrix> qs;
  for (const auto& q : matrix_list(read_json_file(path), n)) {
    RationalMatrix a;
    for (const auto& row : q) {
      if (!row.is_array()) throw DomainError("each row must be an array");
      std::vector<Rational> r;
      for (const auto& e : row) {
        MultiPoly p = entry_poly(e);
        if (!p.is_constant()) throw DomainError("quadric entries must be rational");
        r.push_back(p.constant_term());
      }
      a.push_back(std::move(r));
    }
    qs.push_back(std::move(a));
  }
  std::optional<Integer> om;
  if (!omega.empty()) {
    Rational o = parse_rational(omega);
    if (o.get_den() != 1) throw DomainError("Omega must be an integer");
    om = o.get_num();
  }
  HnResult r = hn_gadget(qs, m, om);
  json chi = json::array();
  for (const auto& [sigma, c] : r.chi_by_sign) chi.push_back({{"signs", sigma}, {"chi", c.get_str()}});
  json j{{"value", r.value.get_str()},
         {"omega", r.omega.get_str()},
         {"chi_bound", r.chi_bound.get_str()},
         {"chi_by_sign", chi},
         {"diagnostic", r.diagnostic}};
  emit(cfg, j, r.value.get_str() + "\n" + r.diagnostic);
  return 0;
}

int cmd_phi(const RunConfig& cfg, const std::string& m_text, const std::string& a_text) {
  Rational m = parse_rational(m_text);
  if (m.get_den() != 1) throw DomainError("M must be an integer");
  std::vector<Integer> a;
  for (const auto& s : split(a_text, ',')) {
    Rational q = parse_rational(s);
    if (q.get_den() != 1) throw DomainError("entries of a must be integers");
    a.push_back(q.get_num());
  }
  Integer v = phi_encode(a, m.get_num());
  emit(cfg, json{{"value", v.get_str()}}, v.get_str());
  return 0;
}

int cmd_bound(const RunConfig& cfg, long s, long d, long n) {
  ChiBound b = eval_chi_bound(s, d, n);
  emit(cfg, json{{"s", s}, {"d", d}, {"n", n}, {"bound", b.sign_condition_bound.get_str()}, {"note", b.general_set_note}},
       b.sign_condition_bound.get_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Euler integration of constructible functions"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--file", cfg.file, ".cf file of formula bindings");
  app.add_option("--order", cfg.order, "comma-separated variable order");
  app.add_option("--dim", cfg.dim, "ambient dimension; pads the order with x1, x2, ...");
  app.add_option("--budget", cfg.budget, "cell budget")->check(CLI::PositiveNumber);
  app.add_option("--var-cap", cfg.var_cap, "maximum number of variables")->check(CLI::PositiveNumber);
  app.add_flag("--json", cfg.json_out, "print JSON");
  app.add_option("--seed", cfg.seed, "seed for property runs");

  std::string text, text2;
  auto* chi = app.add_subcommand("chi", "Euler characteristic of a set, or integral of a formula");
  chi->add_option("--set", cfg.set, "quantifier-free set formula");
  chi->add_option("formula", text);
  auto* integrate = app.add_subcommand("integrate", "Euler integral of a constructible function");
  integrate->add_option("formula", text);

  std::size_t base = 0;
  bool verify = false;
  auto* push = app.add_subcommand("pushforward", "fiber integrals over the first --base variables");
  push->add_option("formula", text);
  push->add_option("--base", base, "base dimension")->required();
  push->add_flag("--verify", verify, "check Fubini against the direct integral");

  auto* partition = app.add_subcommand("partition", "level sets of a formula");
  partition->add_option("formula", text);

  bool witness = false;
  auto* ref = app.add_subcommand("refines", "whether Par(fine) refines Par(coarse)");
  ref->add_option("fine", text, "formula or binding name")->required();
  ref->add_option("coarse", text2, "formula or binding name")->required();
  ref->add_flag("--witness", witness, "print a Lagrange witness h with coarse = h(fine)");

  std::string map;
  auto* red = app.add_subcommand("reduce-check", "check one instance of f <=_p g");
  red->add_option("f", text, "formula or binding name")->required();
  red->add_option("g", text2, "formula or binding name")->required();
  red->add_option("--map", map, "substitution, e.g. \"y1=x1,y2=1\"")->required();

  std::size_t gn = 0, gm = 0;
  std::string matrices, quadrics, omega, big_m, a_list;
  auto* gadget = app.add_subcommand("gadget", "completeness gadgets")->require_subcommand(1);
  auto* wd = gadget->add_subcommand("weighted-det", "sum_i 2^i [det(A_i) = 0]");
  wd->add_option("--n", gn)->required();
  wd->add_option("--matrices", matrices, "JSON array of n matrices")->required();
  auto* hn = gadget->add_subcommand("hn", "Euler integral of the quadric product gadget");
  hn->add_option("--n", gn)->required();
  hn->add_option("--m", gm)->required();
  hn->add_option("--Q", quadrics, "JSON array of n symmetric (m+1) x (m+1) matrices")->required();
  hn->add_option("--omega", omega, "Omega (default (100m)^(2m))");
  auto* phi = gadget->add_subcommand("phi", "sum_i a_i M^(2i)");
  phi->add_option("--M", big_m)->required();
  phi->add_option("--a", a_list, "comma-separated integers")->required();

  long bs = 0, bd = 0, bn = 0;
  auto* bound = app.add_subcommand("bound", "bound on |chi| of a sign condition");
  bound->add_option("--s", bs)->required();
  bound->add_option("--d", bd)->required();
  bound->add_option("--n", bn)->required();

  auto* selftest = app.add_subcommand("selftest", "deterministic property battery");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*chi) return cmd_integrate(cfg, text, true);
    if (*integrate) return cmd_integrate(cfg, text, false);
    if (*push) return cmd_pushforward(cfg, text, base, verify);
    if (*partition) return cmd_partition(cfg, text);
    if (*ref) return cmd_refines(cfg, text, text2, witness);
    if (*red) return cmd_reduce_check(cfg, text, text2, map);
    if (*wd) return cmd_weighted_det(cfg, gn, matrices);
    if (*hn) return cmd_hn(cfg, gn, gm, quadrics, omega);
    if (*phi) return cmd_phi(cfg, big_m, a_list);
    if (*bound) return cmd_bound(cfg, bs, bd, bn);
    if (*selftest) {
      SelftestReport r = run_selftest(cfg.seed);
      emit(cfg, r.to_json(), r.to_text());
      return r.all_pass ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
