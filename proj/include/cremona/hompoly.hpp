#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include "cremona/univariate.hpp"

namespace cremona {

/// Exponent vector (a, b, c) of the monomial x^a y^b z^c.
using Mono = std::array<int, 3>;
using Point3 = std::array<Rational, 3>;

/// Homogeneous polynomial in x, y, z over Q. Terms are kept sorted with x^d
/// first (descending lexicographic order on exponents); zero coefficients are
/// never stored. The zero polynomial still carries a degree.
class HomPoly {
 public:
  using Terms = std::map<Mono, Rational, std::greater<Mono>>;

  HomPoly() = default;
  explicit HomPoly(int degree) : deg_(degree) {}
  HomPoly(int degree, Terms terms);

  static HomPoly constant(const Rational& c);
  static HomPoly var(int i);  // 0 -> x, 1 -> y, 2 -> z
  static HomPoly monomial(const Rational& c, const Mono& m);

  int degree() const { return deg_; }
  bool is_zero() const { return t_.empty(); }
  const Terms& terms() const { return t_; }
  Rational coeff(const Mono& m) const;
  /// Largest k such that variable i to the power k divides this polynomial.
  int valuation(int i) const;

  Rational eval(const Point3& p) const;
  HomPoly derivative(int i) const;
  HomPoly pow(int e) const;
  /// Coprime integer coefficients, first term positive.
  HomPoly canonical() const;

  HomPoly& operator+=(const HomPoly& o);
  HomPoly& operator-=(const HomPoly& o);
  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator-(const HomPoly& a);
  friend HomPoly operator*(const HomPoly& a, const HomPoly& b);
  friend HomPoly operator*(const Rational& s, const HomPoly& a);
  friend bool operator==(const HomPoly& a, const HomPoly& b) {
    return a.deg_ == b.deg_ && a.t_ == b.t_;
  }
  friend bool operator!=(const HomPoly& a, const HomPoly& b) { return !(a == b); }

 private:
  void add_term(const Mono& m, const Rational& c);
  int deg_ = 0;
  Terms t_;
};

using Triple = std::array<HomPoly, 3>;

/// p(f1, f2, f3) without any normalisation. The fi must share one degree.
HomPoly substitute_raw(const HomPoly& p, const Triple& f);
/// p(f1, f2, f3), canonicalised.
HomPoly poly_substitute(const HomPoly& p, const HomPoly& f1, const HomPoly& f2,
                        const HomPoly& f3);

/// Exact quotient a / b, or nullopt if b does not divide a.
std::optional<HomPoly> exact_divide(const HomPoly& a, const HomPoly& b);
/// Canonical gcd; the constant 1 when the inputs are coprime.
HomPoly gcd(const HomPoly& a, const HomPoly& b);

/// Scales the triple jointly to coprime integers; the leading term of the
/// last nonzero entry becomes positive.
Triple canonical_triple(const Triple& f);
/// Divides out the common factor of the three entries and canonicalises.
Triple triple_cancel(const HomPoly& f1, const HomPoly& f2, const HomPoly& f3);

/// The factor s making s*v coprime integers whose first nonzero entry is
/// positive. Returns 1 when every entry is zero.
Rational primitive_scale(const std::vector<const Rational*>& v);

}  // namespace cremona
