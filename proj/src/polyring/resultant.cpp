#include "cfe/polyring/resultant.hpp"

#include "cfe/error.hpp"

namespace cfe {

MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m) {
  const std::size_t n = m.size();
  if (n == 0) return MultiPoly(Rational(1));
  for (const auto& row : m)
    if (row.size() != n) throw DomainError("determinant of a non-square matrix");
  VarList vars = m[0][0].vars();
  bool negate = false;
  MultiPoly prev = MultiPoly::constant(vars, Rational(1)).without_program();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_with = k + 1;
      while (swap_with < n && m[swap_with][k].is_zero()) ++swap_with;
      if (swap_with == n) return MultiPoly::constant(vars, Rational(0)).without_program();
      std::swap(m[k], m[swap_with]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        MultiPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        m[i][j] = exact_divide(num, prev);
      }
      m[i][k] = MultiPoly::constant(vars, Rational(0)).without_program();
    }
    prev = m[k][k];
  }
  MultiPoly det = m[n - 1][n - 1];
  return negate ? -det : det;
}

namespace {

// Rows of the j-th subresultant matrix restricted to its square part:
// shifts of a and b, columns for powers m+n-j-1 down to j.
std::vector<std::vector<MultiPoly>> subresultant_matrix(const std::vector<MultiPoly>& ca, const std::vector<MultiPoly>& cb,
                                                        std::size_t j, const VarList& vars) {
  const std::size_t m = ca.size() - 1, n = cb.size() - 1;
  const std::size_t width = m + n - 2 * j;
  const std::size_t top = m + n - j - 1;
  MultiPoly zero = MultiPoly::constant(vars, Rational(0)).without_program();
  std::vector<std::vector<MultiPoly>> rows;
  auto push_shifts = [&](const std::vector<MultiPoly>& c, std::size_t deg, std::size_t count) {
    for (std::size_t s = count; s-- > 0;) {
      // Row for y^s * poly: coefficient of y^(col power) is c[power - s].
      std::vector<MultiPoly> row(width, zero);
      for (std::size_t col = 0; col < width; ++col) {
        std::size_t power = top - col;
        if (power >= s && power - s <= deg) row[col] = c[power - s];
      }
      rows.push_back(std::move(row));
    }
  };
  push_shifts(ca, m, n - j);
  push_shifts(cb, n, m - j);
  return rows;
}

}  // namespace

std::vector<MultiPoly> principal_subresultant_coefficients(const MultiPoly& a, const MultiPoly& b, std::size_t var) {
  if (a.vars() != b.vars() && *a.vars() != *b.vars())
    throw DomainError("subresultants need polynomials over one variable list");
  int m = a.degree_in(var), n = b.degree_in(var);
  if (m <= 0 || n <= 0) throw DomainError("subresultants need positive degree in " + (*a.vars())[var]);
  auto ca = a.without_program().coefficients_in(var);
  auto cb = b.without_program().remap(a.vars()).coefficients_in(var);
  std::size_t k = static_cast<std::size_t>(std::min(m, n));
  std::vector<MultiPoly> out;
  out.reserve(k);
  for (std::size_t j = 0; j < k; ++j) out.push_back(bareiss_determinant(subresultant_matrix(ca, cb, j, a.vars())));
  return out;
}

MultiPoly resultant(const MultiPoly& a0, const MultiPoly& b0, const std::string& var) {
  MultiPoly a = a0.without_program(), b = b0.without_program();
  unify(a, b);
  int idx = a.var_index(var);
  if (idx < 0 || a.degree_in(static_cast<std::size_t>(idx)) <= 0 || b.degree_in(static_cast<std::size_t>(idx)) <= 0)
    throw DomainError("resultant needs positive degree in " + var + " for both polynomials");
  auto ca = a.coefficients_in(static_cast<std::size_t>(idx));
  auto cb = b.coefficients_in(static_cast<std::size_t>(idx));
  return bareiss_determinant(subresultant_matrix(ca, cb, 0, a.vars()));
}

}  // namespace cfe
