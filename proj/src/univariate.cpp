#include "cremona/univariate.hpp"

#include <algorithm>
#include <stdexcept>

#include "cremona/error.hpp"

namespace cremona {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly({c}); }

UPoly UPoly::monomial(const Rational& c, int deg) {
  std::vector<Rational> v(deg + 1);
  v[deg] = c;
  return UPoly(std::move(v));
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

Rational UPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<Rational> d(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(d));
}

UPoly UPoly::monic() const {
  if (is_zero()) return {};
  Rational inv = 1 / leading();
  return inv * *this;
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
  for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  if (s == 0) return {};
  std::vector<Rational> r(a.c_);
  for (auto& x : r) x *= s;
  return UPoly(std::move(r));
}

void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem(a.coeffs());
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) {
    q = {};
    r = a;
    return;
  }
  std::vector<Rational> quo(dq + 1);
  Rational inv = 1 / b.leading();
  for (int k = dq; k >= 0; --k) {
    Rational c = rem[k + db] * inv;
    quo[k] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) rem[k + j] -= c * b.coeffs()[j];
  }
  rem.resize(db);
  q = UPoly(std::move(quo));
  r = UPoly(std::move(rem));
}

UPoly operator/(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return q;
}

UPoly operator%(const UPoly& a, const UPoly& b) {
  UPoly q, r;
  divmod(a, b, q, r);
  return r;
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

UPoly squarefree_part(const UPoly& a) {
  if (a.degree() <= 0) return a.monic();
  return (a / gcd(a, a.derivative())).monic();
}

Rational resultant(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  int m = a.degree(), n = b.degree();
  if (n == 0) {
    Rational r = 1;
    for (int i = 0; i < m; ++i) r *= b.leading();
    return r;
  }
  UPoly rem = a % b;
  if (rem.is_zero()) return 0;
  Rational scale = 1;
  for (int i = 0; i < m - rem.degree(); ++i) scale *= b.leading();
  if ((m * n) % 2 == 1) scale = -scale;
  return scale * resultant(b, rem);
}

UPoly interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  UPoly result;
  for (size_t i = 0; i < xs.size(); ++i) {
    UPoly basis = UPoly::constant(1);
    Rational denom = 1;
    for (size_t j = 0; j < xs.size(); ++j) {
      if (j == i) continue;
      basis = basis * UPoly({-xs[j], Rational(1)});
      denom *= xs[i] - xs[j];
    }
    result = result + (ys[i] / denom) * basis;
  }
  return result;
}

namespace {

// Integer coefficient vector proportional to p, with unit content.
std::vector<Integer> primitive_integer(const UPoly& p) {
  Integer l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> v;
  Integer g = 0;
  for (const auto& c : p.coeffs()) {
    Integer n = c.get_num() * (l / c.get_den());
    v.push_back(n);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  for (auto& n : v) n /= g;
  return v;
}

Integer eval_mod(const std::vector<Integer>& q, const Integer& x, const Integer& m) {
  Integer acc = 0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) {
    acc = acc * x + *it;
    acc %= m;
  }
  if (acc < 0) acc += m;
  return acc;
}

bool is_prime_small(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Integer roots of a monic squarefree integer polynomial by p-adic lifting.
std::vector<Integer> monic_integer_roots(const std::vector<Integer>& q) {
  int n = static_cast<int>(q.size()) - 1;
  std::vector<Integer> dq;
  for (int i = 1; i <= n; ++i) dq.push_back(q[i] * i);
  Integer bound = 0;
  for (const auto& c : q) bound = std::max(bound, Integer(abs(c)));
  bound += 1;
  Integer target = 2 * bound + 1;

  unsigned long p = 101;
  for (int attempt = 0; attempt < 400; ++attempt, ++p) {
    while (!is_prime_small(p)) ++p;
    Integer P = p;
    std::vector<Integer> residues;
    bool ok = true;
    for (unsigned long r = 0; r < p && ok; ++r) {
      Integer R = r;
      if (eval_mod(q, R, P) != 0) continue;
      if (eval_mod(dq, R, P) == 0) ok = false;
      residues.push_back(R);
    }
    if (!ok) continue;
    std::vector<Integer> roots;
    for (Integer r : residues) {
      Integer M = P;
      while (M <= target) {
        Integer M2 = M * M;
        Integer fv = eval_mod(q, r, M2);
        Integer dv = eval_mod(dq, r, M2);
        Integer inv;
        mpz_invert(inv.get_mpz_t(), dv.get_mpz_t(), M2.get_mpz_t());
        r = (r - fv * inv) % M2;
        if (r < 0) r += M2;
        M = M2;
      }
      if (r > M / 2) r -= M;
      Integer acc = 0;
      for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * r + *it;
      if (acc == 0) roots.push_back(r);
    }
    return roots;
  }
  throw Error(ErrorKind::InvariantViolation, "no suitable prime for root lifting");
}

}  // namespace

std::vector<Rational> rational_roots(const UPoly& p) {
  if (p.is_zero()) throw std::domain_error("roots of the zero polynomial");
  std::vector<Rational> roots;
  UPoly s = squarefree_part(p);
  if (s.degree() <= 0) return roots;
  if (s.coeff(0) == 0) {
    roots.push_back(0);
    s = s / UPoly({Rational(0), Rational(1)});
  }
  if (s.degree() >= 1) {
    std::vector<Integer> a = primitive_integer(s);
    int n = static_cast<int>(a.size()) - 1;
    Integer an = a[n];
    // Q(u) = an^(n-1) P(u / an) is monic with integer roots an * r.
    std::vector<Integer> q(n + 1);
    Integer pw = 1;
    for (int i = n - 1; i >= 0; --i) {
      q[i] = a[i] * pw;
      pw *= an;
    }
    q[n] = 1;
    for (const auto& u : monic_integer_roots(q)) roots.push_back(Rational(u, an));
  }
  for (auto& r : roots) r.canonicalize();
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace cremona
