#pragma once

#include <gmpxx.h>

#include <vector>

namespace cremona {

using Rational = mpq_class;
using Integer = mpz_class;

/// Dense univariate polynomial over Q, coefficients stored low degree first.
/// The zero polynomial has an empty coefficient vector.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);
  static UPoly constant(const Rational& c);
  static UPoly monomial(const Rational& c, int deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  const Rational& leading() const { return c_.back(); }

  Rational eval(const Rational& x) const;
  UPoly derivative() const;
  UPoly monic() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder of Euclidean division; b must be nonzero.
void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
UPoly operator/(const UPoly& a, const UPoly& b);  // exact quotient
UPoly operator%(const UPoly& a, const UPoly& b);

/// Monic gcd (zero if both inputs are zero).
UPoly gcd(const UPoly& a, const UPoly& b);
UPoly squarefree_part(const UPoly& a);
Rational resultant(const UPoly& a, const UPoly& b);

/// Lagrange interpolation through (xs[i], ys[i]); xs must be distinct.
UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

/// Distinct rational roots of a nonzero polynomial, sorted ascending.
std::vector<Rational> rational_roots(const UPoly& p);

}  // namespace cremona
