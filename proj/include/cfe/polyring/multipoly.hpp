#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cfe/exactnum/rational.hpp"
#include "cfe/exactnum/upoly.hpp"
#include "cfe/polyring/slp.hpp"

namespace cfe {

using Exponents = std::vector<std::uint32_t>;

/// Lexicographic with the last variable most significant, so the leading term
/// is the one of highest degree in the last variable.
struct ExponentOrder {
  bool operator()(const Exponents& a, const Exponents& b) const {
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
};

using TermMap = std::map<Exponents, Rational, ExponentOrder>;
using VarList = std::shared_ptr<const std::vector<std::string>>;

/// Orders identifiers by alphabetic prefix then numeric value of digit runs,
/// so that x2 < x10 and x9 < y1.
bool natural_less(std::string_view a, std::string_view b);

VarList make_var_list(std::vector<std::string> names);
/// Sorted (natural order), duplicate-free list.
VarList canonical_var_list(std::vector<std::string> names);

/// Sparse polynomial over Q in named variables.
///
/// Exponent vectors are indexed by position in `vars()`. Binary operations on
/// polynomials with different variable lists work over the union, listed in
/// natural order; polynomials sharing one list pointer skip the remapping.
///
/// A polynomial optionally carries the straight-line program it was built
/// with. Operations on two polynomials that both carry one record the
/// operation; polynomials made directly from terms carry none, and
/// `size_of_poly` falls back to a plain sum-of-monomials program for them.
class MultiPoly {
 public:
  MultiPoly();
  MultiPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  MultiPoly(long c) : MultiPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static MultiPoly variable(const std::string& name);
  /// The variable at `index` of `vars`, without a recorded program.
  static MultiPoly variable(const VarList& vars, std::size_t index);
  static MultiPoly from_terms(VarList vars, TermMap terms);
  static MultiPoly constant(VarList vars, const Rational& c);

  const VarList& vars() const { return vars_; }
  std::size_t nvars() const { return vars_->size(); }
  const TermMap& terms() const { return terms_; }
  const SlpPtr& program() const { return slp_; }
  MultiPoly without_program() const;
  MultiPoly with_program(SlpPtr p) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant coefficient (coefficient of the zero exponent).
  Rational constant_term() const;
  std::size_t term_count() const { return terms_.size(); }

  int total_degree() const;
  int degree_in(std::size_t var) const;
  /// -1 when the variable is not in the list.
  int degree_in(const std::string& name) const;
  int var_index(const std::string& name) const;
  /// Variables with a nonzero exponent in some term, in list order.
  std::vector<std::string> used_variables() const;
  /// Highest list index with a nonzero exponent, or -1 for constants.
  int main_variable() const;

  /// Same polynomial over another variable list, which must contain every
  /// used variable.
  MultiPoly remap(const VarList& vars) const;

  /// Coefficients with respect to variable `var`, lowest degree first; each
  /// is a polynomial over the same list, free of `var`.
  std::vector<MultiPoly> coefficients_in(std::size_t var) const;
  static MultiPoly from_coefficients(const VarList& vars, std::size_t var, const std::vector<MultiPoly>& coeffs);
  MultiPoly leading_coefficient(std::size_t var) const;
  /// The polynomial minus its leading part in `var`.
  MultiPoly reductum(std::size_t var) const;
  MultiPoly derivative(std::size_t var) const;

  MultiPoly pow(unsigned k) const;

  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a);
  MultiPoly& operator+=(const MultiPoly& b) { return *this = *this + b; }
  MultiPoly& operator-=(const MultiPoly& b) { return *this = *this - b; }
  MultiPoly& operator*=(const MultiPoly& b) { return *this = *this * b; }
  MultiPoly scaled(const Rational& c) const;

  /// Equality of the polynomials (programs and unused variables ignored).
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  /// `point[i]` is the value of `vars()[i]`.
  Rational evaluate(const std::vector<Rational>& point) const;
  /// Evaluates over any commutative ring R that accepts Rational constants.
  template <class R>
  R evaluate_in(const std::vector<R>& point) const;

  /// Replaces variables by polynomials; the program is rebuilt when every
  /// participant carries one.
  MultiPoly substitute(const std::map<std::string, MultiPoly>& replacement) const;

  /// Univariate view; requires that no variable other than `var` is used.
  QPoly to_univariate(std::size_t var) const;

  /// Readable, re-parseable text such as `3/2*x1^2*x2 - x3 + 1`.
  std::string to_string() const;

 private:
  VarList vars_;
  TermMap terms_;
  SlpPtr slp_;
};

/// a = q * b exactly; throws DomainError when b does not divide a.
MultiPoly exact_divide(const MultiPoly& a, const MultiPoly& b);

/// Rewrites both polynomials over a common variable list.
void unify(MultiPoly& a, MultiPoly& b);

template <class R>
R MultiPoly::evaluate_in(const std::vector<R>& point) const {
  std::vector<std::vector<R>> powers(point.size());
  auto power = [&](std::size_t v, std::uint32_t e) -> const R& {
    auto& cache = powers[v];
    if (cache.empty()) cache.push_back(R(Rational(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * point[v]);
    return cache[e];
  };
  R acc(Rational(0));
  for (const auto& [exp, c] : terms_) {
    R term(c);
    for (std::size_t v = 0; v < exp.size(); ++v)
      if (exp[v] != 0) term = term * power(v, exp[v]);
    acc = acc + term;
  }
  return acc;
}

/// Degree and straight-line-program length of a polynomial; the size is the
/// larger of the two.
struct PolySize {
  int degree = 0;
  std::size_t slp_length = 0;
  std::size_t size() const { return std::max<std::size_t>(static_cast<std::size_t>(degree), slp_length); }
};

PolySize size_of_poly(const MultiPoly& p);

/// Program that builds p as a sum of monomials, sharing variable powers.
SlpPtr naive_program(const MultiPoly& p);

}  // namespace cfe
