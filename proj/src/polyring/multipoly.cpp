#include "cfe/polyring/multipoly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cfe/error.hpp"

namespace cfe {

namespace {

const VarList& empty_vars() {
  static const VarList empty = std::make_shared<const std::vector<std::string>>();
  return empty;
}

SlpPtr combine(SlpNode::Op op, const SlpPtr& a, const SlpPtr& b) {
  if (!a || !b) return nullptr;
  return slp_binary(op, a, b);
}

bool same_list(const VarList& a, const VarList& b) { return a == b || *a == *b; }

void add_into(TermMap& acc, const Exponents& e, const Rational& c) {
  auto [it, inserted] = acc.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) acc.erase(it);
  }
}

}  // namespace

bool natural_less(std::string_view a, std::string_view b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
    bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
    if (da && db) {
      std::size_t ei = i, ej = j;
      while (ei < a.size() && std::isdigit(static_cast<unsigned char>(a[ei]))) ++ei;
      while (ej < b.size() && std::isdigit(static_cast<unsigned char>(b[ej]))) ++ej;
      // Compare numerically: strip leading zeros, then by length, then text.
      std::string_view na = a.substr(i, ei - i), nb = b.substr(j, ej - j);
      while (na.size() > 1 && na.front() == '0') na.remove_prefix(1);
      while (nb.size() > 1 && nb.front() == '0') nb.remove_prefix(1);
      if (na.size() != nb.size()) return na.size() < nb.size();
      if (na != nb) return na < nb;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

VarList make_var_list(std::vector<std::string> names) {
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

VarList canonical_var_list(std::vector<std::string> names) {
  std::sort(names.begin(), names.end(), [](const std::string& x, const std::string& y) { return natural_less(x, y); });
  names.erase(std::unique(names.begin(), names.end()), names.end());
  return make_var_list(std::move(names));
}

MultiPoly::MultiPoly() : vars_(empty_vars()), slp_(slp_const(Rational(0))) {}

MultiPoly::MultiPoly(const Rational& c) : vars_(empty_vars()), slp_(slp_const(c)) {
  if (sgn(c) != 0) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::variable(const std::string& name) {
  MultiPoly p;
  p.vars_ = make_var_list({name});
  p.terms_.emplace(Exponents{1}, Rational(1));
  p.slp_ = slp_var(name);
  return p;
}

MultiPoly MultiPoly::variable(const VarList& vars, std::size_t index) {
  MultiPoly p;
  p.vars_ = vars;
  Exponents e(vars->size(), 0);
  e.at(index) = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  p.slp_ = nullptr;
  return p;
}

MultiPoly MultiPoly::from_terms(VarList vars, TermMap terms) {
  MultiPoly p;
  p.vars_ = std::move(vars);
  for (auto it = terms.begin(); it != terms.end();) {
    if (sgn(it->second) == 0) it = terms.erase(it);
    else ++it;
  }
  p.terms_ = std::move(terms);
  p.slp_ = nullptr;
  return p;
}

MultiPoly MultiPoly::constant(VarList vars, const Rational& c) {
  MultiPoly p(c);
  std::size_t n = vars->size();
  p.vars_ = std::move(vars);
  if (!p.terms_.empty()) {
    TermMap t;
    t.emplace(Exponents(n, 0), c);
    p.terms_ = std::move(t);
  }
  return p;
}

MultiPoly MultiPoly::without_program() const {
  MultiPoly p = *this;
  p.slp_ = nullptr;
  return p;
}

MultiPoly MultiPoly::with_program(SlpPtr prog) const {
  MultiPoly p = *this;
  p.slp_ = std::move(prog);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

Rational MultiPoly::constant_term() const {
  auto it = terms_.find(Exponents(nvars(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int MultiPoly::total_degree() const {
  if (terms_.empty()) return -1;
  int best = 0;
  for (const auto& [e, c] : terms_) {
    int d = 0;
    for (auto x : e) d += static_cast<int>(x);
    best = std::max(best, d);
  }
  return best;
}

int MultiPoly::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  int best = 0;
  for (const auto& [e, c] : terms_) best = std::max(best, static_cast<int>(e[var]));
  return best;
}

int MultiPoly::var_index(const std::string& name) const {
  auto it = std::find(vars_->begin(), vars_->end(), name);
  return it == vars_->end() ? -1 : static_cast<int>(it - vars_->begin());
}

int MultiPoly::degree_in(const std::string& name) const {
  int i = var_index(name);
  if (i < 0) return terms_.empty() ? -1 : 0;
  return degree_in(static_cast<std::size_t>(i));
}

std::vector<std::string> MultiPoly::used_variables() const {
  std::vector<bool> used(nvars(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < used.size(); ++i)
    if (used[i]) out.push_back((*vars_)[i]);
  return out;
}

int MultiPoly::main_variable() const {
  int best = -1;
  for (const auto& [e, c] : terms_)
    for (std::size_t i = e.size(); i-- > 0;)
      if (e[i] != 0) {
        best = std::max(best, static_cast<int>(i));
        break;
      }
  return best;
}

MultiPoly MultiPoly::remap(const VarList& target) const {
  if (vars_ == target) return *this;
  std::vector<int> where(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    auto it = std::find(target->begin(), target->end(), (*vars_)[i]);
    where[i] = it == target->end() ? -1 : static_cast<int>(it - target->begin());
  }
  TermMap out;
  for (const auto& [e, c] : terms_) {
    Exponents f(target->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (where[i] < 0) throw DomainError("variable '" + (*vars_)[i] + "' missing from target variable list");
      f[static_cast<std::size_t>(where[i])] = e[i];
    }
    out.emplace(std::move(f), c);
  }
  MultiPoly p;
  p.vars_ = target;
  p.terms_ = std::move(out);
  p.slp_ = slp_;
  return p;
}

void unify(MultiPoly& a, MultiPoly& b) {
  if (same_list(a.vars(), b.vars())) {
    if (a.vars() != b.vars()) b = b.remap(a.vars());
    return;
  }
  // A constant adopts the other list as is.
  if (a.nvars() == 0) {
    a = a.remap(b.vars());
    return;
  }
  if (b.nvars() == 0) {
    b = b.remap(a.vars());
    return;
  }
  std::vector<std::string> names(a.vars()->begin(), a.vars()->end());
  names.insert(names.end(), b.vars()->begin(), b.vars()->end());
  VarList joint = canonical_var_list(std::move(names));
  a = a.remap(joint);
  b = b.remap(joint);
}

std::vector<MultiPoly> MultiPoly::coefficients_in(std::size_t var) const {
  int d = degree_in(var);
  std::vector<TermMap> parts(static_cast<std::size_t>(std::max(d, 0)) + 1);
  for (const auto& [e, c] : terms_) {
    Exponents f = e;
    std::uint32_t k = f[var];
    f[var] = 0;
    parts[k].emplace(std::move(f), c);
  }
  std::vector<MultiPoly> out;
  out.reserve(parts.size());
  for (auto& t : parts) out.push_back(from_terms(vars_, std::move(t)));
  if (d < 0) out.clear();
  return out;
}

MultiPoly MultiPoly::from_coefficients(const VarList& vars, std::size_t var, const std::vector<MultiPoly>& coeffs) {
  TermMap t;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    MultiPoly c = coeffs[k].remap(vars);
    for (const auto& [e, v] : c.terms()) {
      Exponents f = e;
      f[var] += static_cast<std::uint32_t>(k);
      t.emplace(std::move(f), v);
    }
  }
  return from_terms(vars, std::move(t));
}

MultiPoly MultiPoly::leading_coefficient(std::size_t var) const {
  int d = degree_in(var);
  if (d < 0) return from_terms(vars_, {});
  TermMap t;
  for (const auto& [e, c] : terms_)
    if (static_cast<int>(e[var]) == d) {
      Exponents f = e;
      f[var] = 0;
      t.emplace(std::move(f), c);
    }
  return from_terms(vars_, std::move(t));
}

MultiPoly MultiPoly::reductum(std::size_t var) const {
  int d = degree_in(var);
  TermMap t;
  for (const auto& [e, c] : terms_)
    if (static_cast<int>(e[var]) != d) t.emplace(e, c);
  return from_terms(vars_, std::move(t));
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
  TermMap t;
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponents f = e;
    Rational k(static_cast<long>(f[var]));
    f[var] -= 1;
    t.emplace(std::move(f), c * k);
  }
  return from_terms(vars_, std::move(t));
}

MultiPoly MultiPoly::pow(unsigned k) const {
  // Square-and-multiply, so the recorded program has O(log k) nodes.
  MultiPoly result = MultiPoly::constant(vars_, Rational(1));
  if (!slp_) result = result.without_program();
  MultiPoly base = *this;
  bool first = true;
  while (k > 0) {
    if (k & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

MultiPoly operator+(const MultiPoly& a0, const MultiPoly& b0) {
  MultiPoly a = a0, b = b0;
  unify(a, b);
  TermMap t = a.terms_;
  for (const auto& [e, c] : b.terms_) add_into(t, e, c);
  MultiPoly r;
  r.vars_ = a.vars_;
  r.terms_ = std::move(t);
  r.slp_ = combine(SlpNode::Op::Add, a.slp_, b.slp_);
  return r;
}

MultiPoly operator-(const MultiPoly& a0, const MultiPoly& b0) {
  MultiPoly a = a0, b = b0;
  unify(a, b);
  TermMap t = a.terms_;
  for (const auto& [e, c] : b.terms_) add_into(t, e, -c);
  MultiPoly r;
  r.vars_ = a.vars_;
  r.terms_ = std::move(t);
  r.slp_ = combine(SlpNode::Op::Sub, a.slp_, b.slp_);
  return r;
}

MultiPoly operator-(const MultiPoly& a) {
  MultiPoly r = a;
  for (auto& [e, c] : r.terms_) c = -c;
  r.slp_ = combine(SlpNode::Op::Mul, slp_const(Rational(-1)), a.slp_);
  return r;
}

MultiPoly operator*(const MultiPoly& a0, const MultiPoly& b0) {
  MultiPoly a = a0, b = b0;
  unify(a, b);
  TermMap t;
  const std::size_t n = a.nvars();
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      add_into(t, e, ca * cb);
    }
  MultiPoly r;
  r.vars_ = a.vars_;
  r.terms_ = std::move(t);
  r.slp_ = combine(SlpNode::Op::Mul, a.slp_, b.slp_);
  return r;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return MultiPoly::constant(vars_, Rational(0)).with_program(slp_ ? slp_const(Rational(0)) : nullptr);
  MultiPoly r = *this;
  for (auto& [e, v] : r.terms_) v *= c;
  r.slp_ = combine(SlpNode::Op::Mul, slp_const(c), slp_);
  return r;
}

bool operator==(const MultiPoly& a0, const MultiPoly& b0) {
  if (a0.vars_ == b0.vars_) return a0.terms_ == b0.terms_;
  if (a0.terms_.size() != b0.terms_.size()) return false;
  MultiPoly a = a0, b = b0;
  std::vector<std::string> names(a.vars()->begin(), a.vars()->end());
  names.insert(names.end(), b.vars()->begin(), b.vars()->end());
  VarList joint = canonical_var_list(std::move(names));
  return a.remap(joint).terms_ == b.remap(joint).terms_;
}

Rational MultiPoly::evaluate(const std::vector<Rational>& point) const {
  if (point.size() != nvars())
    throw DomainError("point has " + std::to_string(point.size()) + " coordinates, polynomial has " +
                      std::to_string(nvars()) + " variables");
  return evaluate_in<Rational>(point);
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& replacement) const {
  // Expand term by term over the union of all variable lists.
  std::vector<MultiPoly> image(nvars());
  for (std::size_t i = 0; i < nvars(); ++i) {
    auto it = replacement.find((*vars_)[i]);
    image[i] = it != replacement.end() ? it->second : MultiPoly::variable((*vars_)[i]);
  }
  MultiPoly acc(Rational(0));
  for (const auto& [e, c] : terms_) {
    MultiPoly term(c);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) term = term * image[i].without_program().pow(e[i]);
    acc = acc.without_program() + term.without_program();
  }
  // Keep variables that survive the substitution in the list.
  std::vector<std::string> names;
  for (const auto& v : *vars_)
    if (!replacement.count(v)) names.push_back(v);
  for (const auto& [v, p] : replacement)
    if (std::find(vars_->begin(), vars_->end(), v) != vars_->end())
      names.insert(names.end(), p.vars()->begin(), p.vars()->end());
  names.insert(names.end(), acc.vars()->begin(), acc.vars()->end());
  MultiPoly out = acc.remap(canonical_var_list(std::move(names)));
  out.slp_ = nullptr;
  if (slp_) {
    std::map<std::string, SlpPtr> progs;
    bool all = true;
    for (const auto& [v, p] : replacement) {
      if (!p.program()) all = false;
      progs.emplace(v, p.program());
    }
    if (all) out.slp_ = slp_substitute(slp_, progs);
  }
  return out;
}

QPoly MultiPoly::to_univariate(std::size_t var) const {
  std::vector<Rational> c(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1, Rational(0));
  for (const auto& [e, v] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != var && e[i] != 0) throw DomainError("polynomial is not univariate in " + (*vars_)[var]);
    c[e[var]] = v;
  }
  return QPoly(std::move(c));
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  // Graded order for display: higher total degree first, then by exponents
  // of earlier variables.
  std::vector<std::pair<Exponents, Rational>> t(terms_.begin(), terms_.end());
  auto deg = [](const Exponents& e) {
    long d = 0;
    for (auto x : e) d += x;
    return d;
  };
  std::stable_sort(t.begin(), t.end(), [&](const auto& x, const auto& y) {
    long dx = deg(x.first), dy = deg(y.first);
    if (dx != dy) return dx > dy;
    return std::lexicographical_compare(y.first.begin(), y.first.end(), x.first.begin(), x.first.end());
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c0] : t) {
    Rational c = c0;
    if (sgn(c) < 0) {
      os << (first ? "-" : " - ");
      c = -c;
    } else if (!first) {
      os << " + ";
    }
    first = false;
    bool monomial = deg(e) > 0;
    bool wrote = false;
    if (c != 1 || !monomial) {
      os << cfe::to_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << (*vars_)[i];
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

MultiPoly exact_divide(const MultiPoly& a0, const MultiPoly& b0) {
  if (b0.is_zero()) throw DomainError("division by the zero polynomial");
  MultiPoly a = a0.without_program(), b = b0.without_program();
  unify(a, b);
  if (b.is_constant()) return a.scaled(inverse(b.constant_term())).without_program();
  const std::size_t n = a.nvars();
  TermMap r = a.terms();
  TermMap q;
  const auto& [eb, cb] = *b.terms().rbegin();
  Exponents e(n), f(n);
  while (!r.empty()) {
    const auto& [er, cr] = *r.rbegin();
    for (std::size_t i = 0; i < n; ++i) {
      if (er[i] < eb[i]) throw DomainError("inexact multivariate division");
      e[i] = er[i] - eb[i];
    }
    Rational c = cr / cb;
    q.emplace(e, c);
    for (const auto& [ebt, cbt] : b.terms()) {
      for (std::size_t i = 0; i < n; ++i) f[i] = e[i] + ebt[i];
      add_into(r, f, -c * cbt);
    }
  }
  return MultiPoly::from_terms(a.vars(), std::move(q));
}

SlpPtr naive_program(const MultiPoly& p) {
  if (p.is_zero()) return slp_const(Rational(0));
  const auto& names = *p.vars();
  std::vector<std::vector<SlpPtr>> powers(names.size());
  auto power = [&](std::size_t v, std::uint32_t k) {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(slp_var(names[v]));
    while (cache.size() < k) cache.push_back(slp_binary(SlpNode::Op::Mul, cache.back(), cache.front()));
    return cache[k - 1];
  };
  SlpPtr acc;
  for (const auto& [e, c] : p.terms()) {
    SlpPtr mono;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      SlpPtr f = power(v, e[v]);
      mono = mono ? slp_binary(SlpNode::Op::Mul, mono, f) : f;
    }
    SlpPtr term = !mono ? slp_const(c) : (c == 1 ? mono : slp_binary(SlpNode::Op::Mul, slp_const(c), mono));
    acc = acc ? slp_binary(SlpNode::Op::Add, acc, term) : term;
  }
  return acc;
}

PolySize size_of_poly(const MultiPoly& p) {
  PolySize s;
  s.degree = std::max(p.total_degree(), 0);
  s.slp_length = slp_length(p.program() ? p.program() : naive_program(p));
  return s;
}

}  // namespace cfe
