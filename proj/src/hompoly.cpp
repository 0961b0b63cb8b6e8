#include "cremona/hompoly.hpp"

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <vector>

#include "cremona/error.hpp"

namespace cremona {

Rational primitive_scale(const std::vector<const Rational*>& v) {
  Integer l = 1;
  const Rational* first = nullptr;
  for (const Rational* c : v) {
    if (*c == 0) continue;
    if (!first) first = c;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c->get_den_mpz_t());
  }
  if (!first) return 1;
  Integer g2 = 0;
  for (const Rational* c : v) {
    if (*c == 0) continue;
    Integer n = c->get_num() * (l / c->get_den());
    mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), n.get_mpz_t());
  }
  Rational s(l, g2);
  s.canonicalize();
  if (*first < 0) s = -s;
  return s;
}

HomPoly::HomPoly(int degree, Terms terms) : deg_(degree) {
  for (auto& [m, c] : terms) {
    if (c == 0) continue;
    if (m[0] + m[1] + m[2] != degree || m[0] < 0 || m[1] < 0 || m[2] < 0)
      throw Error(ErrorKind::DegreeMismatch, "monomial of wrong degree");
    t_.emplace(m, c);
  }
}

HomPoly HomPoly::constant(const Rational& c) {
  HomPoly p(0);
  p.add_term({0, 0, 0}, c);
  return p;
}

HomPoly HomPoly::var(int i) {
  Mono m{0, 0, 0};
  m[i] = 1;
  return monomial(1, m);
}

HomPoly HomPoly::monomial(const Rational& c, const Mono& m) {
  HomPoly p(m[0] + m[1] + m[2]);
  p.add_term(m, c);
  return p;
}

void HomPoly::add_term(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

Rational HomPoly::coeff(const Mono& m) const {
  auto it = t_.find(m);
  return it == t_.end() ? Rational(0) : it->second;
}

int HomPoly::valuation(int i) const {
  if (t_.empty()) return deg_;
  int v = INT_MAX;
  for (const auto& [m, c] : t_) v = std::min(v, m[i]);
  return v;
}

Rational HomPoly::eval(const Point3& p) const {
  Rational acc = 0;
  std::array<std::vector<Rational>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(1);
    for (int k = 1; k <= deg_; ++k) pw[i].push_back(pw[i].back() * p[i]);
  }
  for (const auto& [m, c] : t_) acc += c * pw[0][m[0]] * pw[1][m[1]] * pw[2][m[2]];
  return acc;
}

HomPoly HomPoly::derivative(int i) const {
  HomPoly r(std::max(deg_ - 1, 0));
  for (const auto& [m, c] : t_) {
    if (m[i] == 0) continue;
    Mono n = m;
    n[i] -= 1;
    r.add_term(n, c * m[i]);
  }
  return r;
}

HomPoly HomPoly::pow(int e) const {
  HomPoly r = constant(1);
  for (int k = 0; k < e; ++k) r = r * *this;
  return r;
}

HomPoly HomPoly::canonical() const {
  std::vector<const Rational*> v;
  for (const auto& [m, c] : t_) v.push_back(&c);
  Rational s = primitive_scale(v);
  return s * *this;
}

HomPoly& HomPoly::operator+=(const HomPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) deg_ = o.deg_;
  if (deg_ != o.deg_) throw Error(ErrorKind::DegreeMismatch, "adding polynomials of different degree");
  for (const auto& [m, c] : o.t_) add_term(m, c);
  return *this;
}

HomPoly& HomPoly::operator-=(const HomPoly& o) { return *this += -o; }

HomPoly operator-(const HomPoly& a) { return Rational(-1) * a; }

HomPoly operator*(const HomPoly& a, const HomPoly& b) {
  HomPoly r(a.deg_ + b.deg_);
  for (const auto& [m1, c1] : a.t_)
    for (const auto& [m2, c2] : b.t_)
      r.add_term({m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]}, c1 * c2);
  return r;
}

HomPoly operator*(const Rational& s, const HomPoly& a) {
  HomPoly r(a.deg_);
  if (s == 0) return r;
  for (const auto& [m, c] : a.t_) r.t_.emplace(m, c * s);
  return r;
}

HomPoly substitute_raw(const HomPoly& p, const Triple& f) {
  int e = f[0].degree();
  if (f[1].degree() != e || f[2].degree() != e)
    throw Error(ErrorKind::DegreeMismatch, "substituted polynomials differ in degree");
  int d = p.degree();
  std::array<std::vector<HomPoly>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(HomPoly::constant(1));
    for (int k = 1; k <= d; ++k) pw[i].push_back(pw[i].back() * f[i]);
  }
  HomPoly r(d * e);
  for (const auto& [m, c] : p.terms()) r += c * (pw[0][m[0]] * pw[1][m[1]] * pw[2][m[2]]);
  return r;
}

HomPoly poly_substitute(const HomPoly& p, const HomPoly& f1, const HomPoly& f2,
                        const HomPoly& f3) {
  return substitute_raw(p, {f1, f2, f3}).canonical();
}

std::optional<HomPoly> exact_divide(const HomPoly& a, const HomPoly& b) {
  if (b.is_zero()) throw Error(ErrorKind::ZeroTriple, "division by the zero polynomial");
  if (a.is_zero()) return HomPoly(std::max(a.degree() - b.degree(), 0));
  if (a.degree() < b.degree()) return std::nullopt;
  const auto& [lm, lc] = *b.terms().begin();
  HomPoly q(a.degree() - b.degree());
  HomPoly r = a;
  while (!r.is_zero()) {
    const auto& [rm, rc] = *r.terms().begin();
    Mono qm{rm[0] - lm[0], rm[1] - lm[1], rm[2] - lm[2]};
    if (qm[0] < 0 || qm[1] < 0 || qm[2] < 0) return std::nullopt;
    HomPoly t = HomPoly::monomial(rc / lc, qm);
    q += t;
    r -= t * b;
  }
  return q;
}

namespace {

// Polynomial in y with coefficients in Q[x]; index = power of y.
using BiPoly = std::vector<UPoly>;

void trim(BiPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UPoly content(const BiPoly& p) {
  UPoly g;
  for (const auto& c : p) g = gcd(g, c);
  return g;
}

BiPoly primitive(const BiPoly& p) {
  UPoly c = content(p);
  BiPoly r;
  for (const auto& a : p) r.push_back(a / c);
  trim(r);
  return r;
}

BiPoly pseudo_remainder(BiPoly a, const BiPoly& b) {
  int n = static_cast<int>(b.size()) - 1;
  const UPoly& lb = b.back();
  trim(a);
  while (static_cast<int>(a.size()) - 1 >= n) {
    int k = static_cast<int>(a.size()) - 1 - n;
    UPoly la = a.back();
    for (auto& c : a) c = lb * c;
    for (int j = 0; j <= n; ++j) a[j + k] = a[j + k] - la * b[j];
    trim(a);
  }
  return a;
}

BiPoly bivariate_gcd(BiPoly a, BiPoly b) {
  trim(a);
  trim(b);
  if (a.empty()) return primitive(b);
  if (b.empty()) return primitive(a);
  UPoly c = gcd(content(a), content(b));
  a = primitive(a);
  b = primitive(b);
  if (a.size() < b.size()) std::swap(a, b);
  while (!b.empty()) {
    if (b.size() == 1) {
      a = {UPoly::constant(1)};
      break;
    }
    BiPoly r = pseudo_remainder(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive(r);
  }
  for (auto& x : a) x = c * x;
  return a;
}

BiPoly dehomogenize(const HomPoly& p) {
  BiPoly r;
  for (const auto& [m, c] : p.terms()) {
    if (static_cast<int>(r.size()) <= m[1]) r.resize(m[1] + 1);
    r[m[1]] = r[m[1]] + UPoly::monomial(c, m[0]);
  }
  trim(r);
  return r;
}

HomPoly homogenize(const BiPoly& p) {
  int k = 0;
  for (size_t j = 0; j < p.size(); ++j)
    if (!p[j].is_zero()) k = std::max(k, p[j].degree() + static_cast<int>(j));
  HomPoly r(k);
  for (size_t j = 0; j < p.size(); ++j)
    for (int i = 0; i <= p[j].degree(); ++i)
      if (p[j].coeff(i) != 0)
        r += HomPoly::monomial(p[j].coeff(i), {i, static_cast<int>(j), k - i - static_cast<int>(j)});
  return r;
}

// Arithmetic modulo a prime below 2^63.
struct Zp {
  std::uint64_t p;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
  }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    for (; e; e >>= 1, a = mul(a, a))
      if (e & 1) r = mul(r, a);
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  // Residue of r, or nullopt when the denominator vanishes.
  std::optional<std::uint64_t> reduce(const Rational& r) const {
    static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");
    std::uint64_t d = mpz_fdiv_ui(r.get_den_mpz_t(), p);
    if (d == 0) return std::nullopt;
    return mul(mpz_fdiv_ui(r.get_num_mpz_t(), p), inv(d));
  }
};

// The k-th prime above 2^62, fixed so results are reproducible.
constexpr int kPrimeCount = 32;

const Zp& prime_field(int k) {
  static const std::vector<Zp> fields = [] {
    std::vector<Zp> out;
    Integer q = Integer(1) << 62;
    while (static_cast<int>(out.size()) < kPrimeCount) {
      mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
      out.push_back(Zp{q.get_ui()});
    }
    return out;
  }();
  return fields.at(k);
}

using ModPoly = std::vector<std::uint64_t>;  // low degree first

void mod_trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int mod_gcd_degree(const Zp& F, ModPoly a, ModPoly b) {
  mod_trim(a);
  mod_trim(b);
  while (!b.empty()) {
    std::uint64_t inv = F.inv(b.back());
    while (a.size() >= b.size()) {
      std::uint64_t q = F.mul(a.back(), inv);
      std::size_t k = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[j + k] = F.sub(a[j + k], F.mul(q, b[j]));
      mod_trim(a);
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Restriction of p to the line s -> P + s Q, as a polynomial in s.
std::optional<ModPoly> restrict_to_line(const Zp& F, const HomPoly& p,
                                        const std::array<std::uint64_t, 3>& P,
                                        const std::array<std::uint64_t, 3>& Q) {
  int d = p.degree();
  std::vector<std::pair<Mono, std::uint64_t>> terms;
  for (const auto& [m, c] : p.terms()) {
    auto r = F.reduce(c);
    if (!r) return std::nullopt;
    terms.emplace_back(m, *r);
  }
  // Values at s = 0..d, then Newton interpolation.
  std::vector<std::uint64_t> coef(d + 1);
  for (int s = 0; s <= d; ++s) {
    std::array<std::vector<std::uint64_t>, 3> pw;
    for (int i = 0; i < 3; ++i) {
      std::uint64_t v = F.add(P[i], F.mul(s, Q[i]));
      pw[i].assign(d + 1, 1);
      for (int e = 1; e <= d; ++e) pw[i][e] = F.mul(pw[i][e - 1], v);
    }
    std::uint64_t acc = 0;
    for (const auto& [m, c] : terms)
      acc = F.add(acc, F.mul(c, F.mul(pw[0][m[0]], F.mul(pw[1][m[1]], pw[2][m[2]]))));
    coef[s] = acc;
  }
  for (int j = 1; j <= d; ++j)
    for (int i = d; i >= j; --i) coef[i] = F.mul(F.sub(coef[i], coef[i - 1]), F.inv(j));
  ModPoly f(d + 1, 0);
  for (int i = d; i >= 0; --i) {
    // f = f * (s - i) + coef[i]
    ModPoly g(d + 1, 0);
    for (int j = 0; j < d; ++j) {
      g[j + 1] = F.add(g[j + 1], f[j]);
      g[j] = F.sub(g[j], F.mul(i, f[j]));
    }
    g[0] = F.add(g[0], coef[i]);
    f = std::move(g);
  }
  return f;
}

// Upper bound for the degree of gcd(a, b) over Q, read off from the images
// of a and b on a line modulo a prime. A common factor of degree e stays a
// common factor of degree e there as long as both restrictions keep their
// full degree. Returns -1 when no usable line was found.
int gcd_degree_bound(const HomPoly& a, const HomPoly& b) {
  const Zp& F = prime_field(0);
  // Fixed pseudo-random lines keep the library deterministic.
  std::uint64_t seed = 0x9E3779B97F4A7C15ULL;
  auto next = [&] {
    seed ^= seed << 13;
    seed ^= seed >> 7;
    seed ^= seed << 17;
    return seed % F.p;
  };
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::array<std::uint64_t, 3> P{next(), next(), next()}, Q{next(), next(), next()};
    auto fa = restrict_to_line(F, a, P, Q), fb = restrict_to_line(F, b, P, Q);
    if (!fa || !fb) return -1;
    mod_trim(*fa);
    mod_trim(*fb);
    if (static_cast<int>(fa->size()) != a.degree() + 1 ||
        static_cast<int>(fb->size()) != b.degree() + 1)
      continue;
    return mod_gcd_degree(F, *fa, *fb);
  }
  return -1;
}

std::vector<Mono> monomials(int d) {
  std::vector<Mono> out;
  for (int a = d; a >= 0; --a)
    for (int b = d - a; b >= 0; --b) out.push_back({a, b, d - a - b});
  return out;
}

// Kernel of m modulo the prime when it is one-dimensional, scaled so that
// its first nonzero entry is 1.
std::optional<ModPoly> mod_kernel_line(const Zp& F, std::vector<ModPoly> m, int cols) {
  std::vector<int> pivot_col;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < m.size(); ++c) {
    std::size_t r = row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[row]);
    std::uint64_t inv = F.inv(m[row][c]);
    for (int j = c; j < cols; ++j) m[row][j] = F.mul(m[row][j], inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      std::uint64_t f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(f, m[row][j]));
    }
    pivot_col.push_back(c);
    ++row;
  }
  if (static_cast<int>(pivot_col.size()) != cols - 1) return std::nullopt;
  int free_col = 0;
  for (int c : pivot_col) {
    if (c != free_col) break;
    ++free_col;
  }
  ModPoly v(cols, 0);
  v[free_col] = 1;
  for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = F.sub(0, m[r][free_col]);
  for (std::uint64_t x : v)
    if (x != 0) {
      std::uint64_t inv = F.inv(x);
      for (auto& y : v) y = F.mul(y, inv);
      break;
    }
  return v;
}

// Rational n/d with |n|, d below sqrt(m/2) and n = r d mod m, if any.
std::optional<Rational> rational_reconstruction(const Integer& r, const Integer& m) {
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

// gcd(a, b) when it has degree exactly e. The cofactors a' = a/h and
// b' = b/h span the only solution of a*b' = b*a' in degree deg - e; the
// solution is found modulo several primes and lifted by rational
// reconstruction, and the result is confirmed by exact division.
std::optional<HomPoly> gcd_by_cofactors(const HomPoly& a, const HomPoly& b, int e) {
  int da = a.degree() - e, db = b.degree() - e;
  auto ma = monomials(da), mb = monomials(db);
  int cols = static_cast<int>(ma.size() + mb.size());
  if (cols > 400) return std::nullopt;
  auto rows = monomials(a.degree() + db);
  std::map<Mono, std::size_t> row_of;
  for (std::size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = i;
  auto shifted = [](const Mono& x, const Mono& y) { return Mono{x[0] + y[0], x[1] + y[1], x[2] + y[2]}; };

  Integer modulus = 1;
  std::vector<Integer> residues(ma.size(), 0);
  constexpr int kMaxPrimes = 24;
  for (int k = 0; k < kMaxPrimes; ++k) {
    const Zp& F = prime_field(k);
    std::vector<ModPoly> m(rows.size(), ModPoly(cols, 0));
    bool usable = true;
    // Columns: coefficients of a' then of b'.
    for (std::size_t j = 0; j < ma.size() && usable; ++j)
      for (const auto& [mono, c] : b.terms()) {
        auto r = F.reduce(c);
        if (!r) { usable = false; break; }
        auto& cell = m[row_of[shifted(mono, ma[j])]][j];
        cell = F.add(cell, *r);
      }
    for (std::size_t j = 0; j < mb.size() && usable; ++j)
      for (const auto& [mono, c] : a.terms()) {
        auto r = F.reduce(c);
        if (!r) { usable = false; break; }
        auto& cell = m[row_of[shifted(mono, mb[j])]][ma.size() + j];
        cell = F.sub(cell, *r);
      }
    if (!usable) continue;
    auto v = mod_kernel_line(F, std::move(m), cols);
    if (!v) continue;
    // Chinese remaindering of the a' part.
    Integer p(static_cast<unsigned long>(F.p));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), modulus.get_mpz_t(), p.get_mpz_t());
    for (std::size_t j = 0; j < ma.size(); ++j) {
      Integer vj(static_cast<unsigned long>((*v)[j]));
      Integer delta = ((vj - residues[j]) % p + p) % p;
      delta = (delta * inv) % p;
      residues[j] += modulus * delta;
    }
    modulus *= p;
    HomPoly cof(da);
    bool lifted = true;
    for (std::size_t j = 0; j < ma.size() && lifted; ++j) {
      if (residues[j] == 0) continue;
      auto q = rational_reconstruction(residues[j], modulus);
      if (!q) lifted = false;
      else cof += HomPoly::monomial(*q, ma[j]);
    }
    if (!lifted || cof.is_zero()) continue;
    auto h = exact_divide(a, cof);
    if (h && exact_divide(b, *h)) return h->canonical();
  }
  return std::nullopt;
}

HomPoly strip_z(const HomPoly& p, int v) {
  HomPoly r(p.degree() - v);
  for (const auto& [m, c] : p.terms()) r += HomPoly::monomial(c, {m[0], m[1], m[2] - v});
  return r;
}

}  // namespace

HomPoly gcd(const HomPoly& a, const HomPoly& b) {
  if (a.is_zero() && b.is_zero()) throw Error(ErrorKind::ZeroTriple, "gcd of two zero polynomials");
  if (a.is_zero()) return b.canonical();
  if (b.is_zero()) return a.canonical();
  int bound = gcd_degree_bound(a, b);
  if (bound == 0) return HomPoly::constant(1);
  if (bound > 0)
    if (auto h = gcd_by_cofactors(a, b, bound)) return *h;
  int va = a.valuation(2), vb = b.valuation(2);
  BiPoly g = bivariate_gcd(dehomogenize(strip_z(a, va)), dehomogenize(strip_z(b, vb)));
  HomPoly h = homogenize(g);
  int v = std::min(va, vb);
  if (v > 0) h = h * HomPoly::monomial(1, {0, 0, v});
  return h.canonical();
}

Triple canonical_triple(const Triple& f) {
  // The sign is fixed by the last nonzero component, so that the standard
  // involutions keep their usual form such as [-xy + z^2 : y^2 : yz].
  std::vector<const Rational*> v;
  for (int i = 2; i >= 0; --i)
    for (const auto& [m, c] : f[i].terms()) v.push_back(&c);
  Rational s = primitive_scale(v);
  return {s * f[0], s * f[1], s * f[2]};
}

Triple triple_cancel(const HomPoly& f1, const HomPoly& f2, const HomPoly& f3) {
  if (f1.is_zero() && f2.is_zero() && f3.is_zero())
    throw Error(ErrorKind::ZeroTriple, "all three components vanish");
  HomPoly g = f1.is_zero() ? f2 : f1;
  for (const HomPoly* p : {&f1, &f2, &f3})
    if (!p->is_zero()) g = gcd(g, *p);
  Triple out;
  const HomPoly* in[3] = {&f1, &f2, &f3};
  int d = (f1.is_zero() ? (f2.is_zero() ? f3 : f2) : f1).degree() - g.degree();
  for (int i = 0; i < 3; ++i) {
    if (in[i]->is_zero()) {
      out[i] = HomPoly(d);
      continue;
    }
    auto q = exact_divide(*in[i], g);
    CREMONA_CHECK(q.has_value(), "gcd does not divide its input");
    out[i] = *q;
  }
  return canonical_triple(out);
}

}  // namespace cremona
