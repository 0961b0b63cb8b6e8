#pragma once

// Local algebra near a point of P^2 or of an iterated blow-up: polynomials in
// two chart coordinates (s, t), and truncated power series for curve germs.

#include <map>
#include <utility>
#include <vector>

#include "cremona/hompoly.hpp"
#include "cremona/projective.hpp"

namespace cremona::local {

/// Polynomial in chart coordinates s, t. Keys are (power of s, power of t).
class LocalPoly {
 public:
  using Terms = std::map<std::pair<int, int>, Rational>;

  void add(int i, int j, const Rational& c);
  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  /// Lowest total degree of a term; -1 for the zero polynomial.
  int order() const;
  /// Coefficients of the degree-m part, indexed by the power of t.
  std::vector<Rational> form(int m) const;

 private:
  Terms t_;
};

/// F in the affine chart at p: the first nonzero coordinate of p is set to 1
/// and the remaining two, shifted so that p is the origin, become (s, t).
LocalPoly localize(const HomPoly& f, const ProjPoint& p);

/// Pull back along the blow-up of the origin in the chart containing the
/// direction [a:b] (a point of the exceptional curve, moved to the origin)
/// and divide by the m-th power of the exceptional equation.
LocalPoly blow_up(const LocalPoly& f, const P1Point& dir, int m);

/// Truncated power series in one variable.
using Series = std::vector<Rational>;
constexpr int kSeriesLength = 16;

int valuation(const Series& s);  // -1 if zero
Series series_mul(const Series& a, const Series& b);
/// a / b where b(0) != 0.
Series series_div(const Series& a, const Series& b);
/// Divides by tau^k (k must not exceed the valuation).
Series series_shift(const Series& a, int k);
Series series_eval(const HomPoly& f, const std::array<Series, 3>& x);

}  // namespace cremona::local
