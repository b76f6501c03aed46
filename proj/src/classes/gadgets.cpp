#include "cfe/classes/gadgets.hpp"

#include "cfe/error.hpp"
#include "cfe/euler/euler.hpp"

namespace cfe {

namespace {

void require_square(const PolyMatrix& a, std::size_t n) {
  if (a.size() != n) throw DomainError("expected " + std::to_string(n) + " rows, got " + std::to_string(a.size()));
  for (const auto& row : a)
    if (row.size() != n) throw DomainError("matrix is not square");
}

MultiPoly y(std::size_t i) { return MultiPoly::variable("y" + std::to_string(i)); }

}  // namespace

MultiPoly determinant(const PolyMatrix& a) {
  const std::size_t n = a.size();
  require_square(a, n);
  if (n > 4) throw DomainError("symbolic determinants are limited to 4 x 4");
  if (n == 0) return MultiPoly(Rational(1));
  if (n == 1) return a[0][0];
  MultiPoly det(Rational(0));
  for (std::size_t j = 0; j < n; ++j) {
    PolyMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<MultiPoly> row;
      for (std::size_t c = 0; c < n; ++c)
        if (c != j) row.push_back(a[r][c]);
      minor.push_back(std::move(row));
    }
    MultiPoly term = a[0][j] * determinant(minor);
    det = j % 2 == 0 ? det + term : det - term;
  }
  return det;
}

Formula weighted_det(const std::vector<PolyMatrix>& matrices) {
  const std::size_t n = matrices.size();
  if (n == 0) throw DomainError("weighted-det needs n >= 1");
  if (n > 4) throw DomainError("weighted-det is limited to n <= 4");
  std::optional<Formula> sum;
  Integer weight = 1;
  for (const auto& a : matrices) {
    require_square(a, n);
    weight *= 2;
    Formula term = make_scalar_mul(Value(Rational(weight)), make_atom(determinant(a), Relation::Eq));
    sum = sum ? make_sum(*sum, term) : term;
  }
  return *sum;
}

Formula weighted_det_generic(std::size_t n) {
  std::vector<PolyMatrix> ms(n, PolyMatrix(n, std::vector<MultiPoly>(n)));
  std::size_t k = 1;
  for (auto& m : ms)
    for (auto& row : m)
      for (auto& e : row) e = MultiPoly::variable("x" + std::to_string(k++));
  return weighted_det(ms);
}

std::vector<bool> decode_weighted_det(const Value& v, std::size_t n) {
  if (!v.is_rational() || v.rational().get_den() != 1) throw DomainError("weighted-det value must be an integer");
  Integer x = v.rational().get_num();
  if (x < 0 || x >= (Integer(1) << (n + 1)) || x % 2 != 0)
    throw DomainError("value " + x.get_str() + " is not a weighted-det code for n = " + std::to_string(n));
  std::vector<bool> pattern;
  for (std::size_t i = 1; i <= n; ++i) pattern.push_back(mpz_tstbit(x.get_mpz_t(), i) != 0);
  return pattern;
}

Integer hn_default_omega(std::size_t m) { return pow(Integer(100 * static_cast<long>(m)), 2 * static_cast<unsigned long>(m)); }

MultiPoly dehomogenize(const RationalMatrix& q) {
  const std::size_t size = q.size();
  if (size < 2) throw DomainError("a quadric matrix must be at least 2 x 2");
  MultiPoly out(Rational(0));
  for (std::size_t a = 0; a < size; ++a) {
    if (q[a].size() != size) throw DomainError("quadric matrix is not square");
    for (std::size_t b = 0; b < size; ++b) {
      if (q[a][b] != q[b][a]) throw DomainError("quadric matrix is not symmetric");
      if (sgn(q[a][b]) == 0) continue;
      MultiPoly term(q[a][b]);
      if (a > 0) term = term * y(a);
      if (b > 0) term = term * y(b);
      out = out + term;
    }
  }
  return out;
}

Formula hn_integrand(const std::vector<RationalMatrix>& quadrics, const Integer& omega) {
  std::optional<Formula> product;
  for (std::size_t i = 1; i <= quadrics.size(); ++i) {
    MultiPoly q = dehomogenize(quadrics[i - 1]);
    auto weight = [&](unsigned long shift) { return Value(Rational(pow(omega, 1UL << (3 * i + shift)))); };
    Formula factor = make_sum(make_sum(make_scalar_mul(weight(0), make_atom(q, Relation::Eq)),
                                       make_scalar_mul(weight(1), make_atom(q, Relation::Gt))),
                              make_scalar_mul(weight(2), make_atom(q, Relation::Lt)));
    product = product ? make_product(*product, factor) : factor;
  }
  return *product;
}

std::vector<Integer> balanced_digits(Integer v, const Integer& omega) {
  if (omega < 2) throw DomainError("base must be at least 2");
  std::vector<Integer> digits;
  while (v != 0) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), omega.get_mpz_t());
    if (2 * r > omega) r -= omega;
    digits.push_back(r);
    v = (v - r) / omega;
  }
  return digits;
}

HnResult hn_gadget(const std::vector<RationalMatrix>& quadrics, std::size_t m, std::optional<Integer> omega) {
  const std::size_t n = quadrics.size();
  if (n < 1 || n > 3) throw DomainError("hn instances take 1 to 3 quadrics");
  if (m < 1 || m > 3) throw DomainError("hn instances live in R^m with 1 <= m <= 3");
  for (const auto& q : quadrics)
    if (q.size() != m + 1) throw DomainError("each quadric must be a " + std::to_string(m + 1) + " x " + std::to_string(m + 1) + " matrix");

  HnResult r;
  r.omega = omega ? *omega : hn_default_omega(m);
  r.chi_bound = eval_chi_bound(static_cast<long>(n), 2, static_cast<long>(m)).sign_condition_bound;
  if (r.omega <= r.chi_bound * r.chi_bound)
    throw DomainError("Omega = " + r.omega.get_str() + " does not exceed the squared chi bound " +
                      Integer(r.chi_bound * r.chi_bound).get_str());
  r.diagnostic = "Omega = " + r.omega.get_str() + " exceeds chi_bound^2 = " + Integer(r.chi_bound * r.chi_bound).get_str();

  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i) names.push_back("y" + std::to_string(i));
  EulerOptions opts;
  opts.order = make_var_list(names);
  Value v = euler_integrate(hn_integrand(quadrics, r.omega), opts).value;
  if (!v.is_rational() || v.rational().get_den() != 1) throw Error("hn integral is not an integer");
  r.value = v.rational().get_num();

  // Sign condition sigma sits at digit sum_i 2^(3i + e_i) with e = 0, 1, 2
  // for sign 0, +, -.
  std::vector<Integer> digits = balanced_digits(r.value, r.omega);
  std::vector<bool> used(digits.size(), false);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> sigma;
    std::size_t position = 0, c = code;
    for (std::size_t i = 1; i <= n; ++i, c /= 3) {
      std::size_t e = c % 3;
      sigma.push_back(e == 0 ? 0 : (e == 1 ? 1 : -1));
      position += std::size_t{1} << (3 * i + e);
    }
    Integer chi = position < digits.size() ? digits[position] : Integer(0);
    if (position < digits.size()) used[position] = true;
    r.chi_by_sign[sigma] = chi;
  }
  for (std::size_t i = 0; i < digits.size(); ++i)
    if (!used[i] && digits[i] != 0) throw Error("hn value has a nonzero digit outside the sign-condition positions");
  return r;
}

Integer phi_encode(const std::vector<Integer>& a, const Integer& m) {
  if (m < 2) throw DomainError("phi encoding needs M >= 2");
  Integer out = 0, base = 1, step = m * m;
  for (const auto& ai : a) {
    if (abs(ai) >= m) throw DomainError("entry " + ai.get_str() + " is outside (-M, M)");
    out += ai * base;
    base *= step;
  }
  return out;
}

}  // namespace cfe
