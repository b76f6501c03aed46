#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cfe/exactnum/algebraic.hpp"
#include "cfe/exactnum/interval.hpp"
#include "cfe/exactnum/rational.hpp"
#include "cfe/exactnum/upoly.hpp"

namespace cfe {

class ExtensionLevel;
using LevelPtr = std::shared_ptr<ExtensionLevel>;

/// Element of a real tower Q(a1)(a2)...(ak) in which each ai is a concrete real
/// number. Represented as a polynomial in the generator of its level whose
/// coefficients live in strictly lower levels; rationals have no level.
///
/// All arithmetic is exact. `is_zero` and `sign` are decided, never guessed:
/// an interval enclosure is tried first, then a gcd test against the defining
/// polynomial (which also splits that polynomial down to the factor carrying
/// the generator), then bisection until the enclosure excludes zero.
///
/// Elements from different towers must not be mixed.
class AlgElem {
 public:
  AlgElem() = default;
  AlgElem(Rational q) : q_(std::move(q)) {}  // NOLINT(google-explicit-constructor)

  static AlgElem generator(const LevelPtr& level);

  int depth() const;
  bool is_rational() const { return !level_; }
  /// Valid only when is_rational().
  const Rational& rational() const { return q_; }
  const LevelPtr& level() const { return level_; }
  /// Coefficients in the generator of level(), lowest degree first; empty
  /// for rationals.
  const std::vector<AlgElem>& coefficients() const { return c_; }

  friend AlgElem operator+(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator-(const AlgElem& a, const AlgElem& b);
  friend AlgElem operator-(const AlgElem& a);
  friend AlgElem operator*(const AlgElem& a, const AlgElem& b);

  friend bool is_zero(const AlgElem& a);
  friend int sign(const AlgElem& a);
  friend AlgElem inverse(const AlgElem& a);
  friend Interval enclosure(const AlgElem& a);
  friend std::string to_string(const AlgElem& a);

 private:
  friend class ExtensionLevel;
  static AlgElem make(const LevelPtr& level, std::vector<AlgElem> coeffs);
  bool structurally_zero() const { return !level_ && sgn(q_) == 0; }
  std::vector<AlgElem> view(const LevelPtr& level) const;

  LevelPtr level_;
  Rational q_;
  std::vector<AlgElem> c_;
};

using KPoly = UPoly<AlgElem>;

/// One simple real extension K(a) of the field K of its parent level.
/// The defining polynomial is monic and square-free over K, with a as its only
/// root in the isolating interval; both may shrink as computations learn more
/// (bisection, or replacement by the factor that carries a).
class ExtensionLevel {
 public:
  ExtensionLevel(LevelPtr parent, KPoly minpoly, Rational lo, Rational hi);

  /// Level for the real root of `number`; nullptr when it is rational.
  static LevelPtr from_algebraic(const AlgebraicNumber& number);

  int depth() const { return depth_; }
  const LevelPtr& parent() const { return parent_; }
  const KPoly& minpoly() const { return minpoly_; }
  Interval interval() const { return {lo_, hi_}; }
  bool exact() const { return exact_; }

  /// Halves the isolating interval.
  void bisect();
  /// Bisects this level and every ancestor once.
  void refine_chain();

 private:
  friend class AlgElem;
  friend bool is_zero(const AlgElem& a);
  friend AlgElem inverse(const AlgElem& a);
  bool generator_is_root_of(const KPoly& g);
  void set_minpoly(KPoly m);

  LevelPtr parent_;
  int depth_;
  KPoly minpoly_;
  Rational lo_;
  Rational hi_;
  bool exact_ = false;
  int sign_lo_ = 0;
};

/// A real root of a polynomial over a tower field, with an isolating interval.
/// `poly` is monic and square-free; for non-exact roots it changes sign across
/// (lo, hi) and has no other root there.
struct FieldRoot {
  KPoly poly;
  Rational lo;
  Rational hi;
  bool exact = false;

  void refine();
};

/// Distinct real roots of a nonzero square-free p over a tower field, sorted
/// (Sturm sequences with exact sign evaluation at rational points).
std::vector<FieldRoot> isolate_real_roots(const KPoly& p);

/// Sorts roots of pairwise coprime polynomials, refining until the isolating
/// intervals are pairwise disjoint.
void sort_disjoint(std::vector<FieldRoot>& roots);

/// Pairwise coprime square-free polynomials with the same roots as the inputs;
/// every nonzero input is a product of powers of the returned elements.
std::vector<KPoly> gcd_free_basis(const std::vector<KPoly>& polys);

/// Coordinate value for a root: a rational, an element of `parent`'s field
/// when the defining polynomial is linear, or the generator of a new level.
/// Returns the new level (or `parent` unchanged) through `top`.
AlgElem root_as_element(const FieldRoot& root, LevelPtr& top);

/// Enclosure of p(x) for an interval x.
Interval evaluate(const KPoly& p, const Interval& x);

}  // namespace cfe
