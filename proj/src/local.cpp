#include "local.hpp"

#include <algorithm>

#include "cremona/error.hpp"

namespace cremona::local {

void LocalPoly::add(int i, int j, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t_.try_emplace({i, j}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t_.erase(it);
  }
}

int LocalPoly::order() const {
  int o = -1;
  for (const auto& [k, c] : t_)
    if (o < 0 || k.first + k.second < o) o = k.first + k.second;
  return o;
}

std::vector<Rational> LocalPoly::form(int m) const {
  std::vector<Rational> v(m + 1);
  for (const auto& [k, c] : t_)
    if (k.first + k.second == m) v[k.second] = c;
  return v;
}

namespace {

// Powers (c + var)^k for k = 0..n, as coefficient vectors in var.
std::vector<std::vector<Rational>> binomial_powers(const Rational& c, int n) {
  std::vector<std::vector<Rational>> p{{Rational(1)}};
  for (int k = 1; k <= n; ++k) {
    std::vector<Rational> next(k + 1);
    for (int j = 0; j < k; ++j) {
      next[j] += p.back()[j] * c;
      next[j + 1] += p.back()[j];
    }
    p.push_back(std::move(next));
  }
  return p;
}

}  // namespace

LocalPoly localize(const HomPoly& f, const ProjPoint& p) {
  int k = p.chart();
  int i1 = (k == 0) ? 1 : 0;
  int i2 = (k == 2) ? 1 : 2;
  Rational a = Rational(p[i1]) / Rational(p[k]);
  Rational b = Rational(p[i2]) / Rational(p[k]);
  int d = f.degree();
  auto pa = binomial_powers(a, d), pb = binomial_powers(b, d);
  LocalPoly r;
  for (const auto& [m, c] : f.terms()) {
    const auto& u = pa[m[i1]];
    const auto& v = pb[m[i2]];
    for (size_t i = 0; i < u.size(); ++i) {
      if (u[i] == 0) continue;
      for (size_t j = 0; j < v.size(); ++j) r.add(i, j, c * u[i] * v[j]);
    }
  }
  return r;
}

LocalPoly blow_up(const LocalPoly& f, const P1Point& dir, int m) {
  LocalPoly r;
  if (dir[0] != 0) {
    // s = u, t = u (mu + v)
    Rational mu = Rational(dir[1]) / Rational(dir[0]);
    int maxj = 0;
    for (const auto& [k, c] : f.terms()) maxj = std::max(maxj, k.second);
    auto pw = binomial_powers(mu, maxj);
    for (const auto& [k, c] : f.terms()) {
      int e = k.first + k.second - m;
      CREMONA_CHECK(e >= 0, "blow-up divides by too high a power");
      const auto& v = pw[k.second];
      for (size_t j = 0; j < v.size(); ++j) r.add(e, j, c * v[j]);
    }
  } else {
    // s = u v, t = u
    for (const auto& [k, c] : f.terms()) {
      int e = k.first + k.second - m;
      CREMONA_CHECK(e >= 0, "blow-up divides by too high a power");
      r.add(e, k.first, c);
    }
  }
  return r;
}

int valuation(const Series& s) {
  for (size_t i = 0; i < s.size(); ++i)
    if (s[i] != 0) return static_cast<int>(i);
  return -1;
}

Series series_mul(const Series& a, const Series& b) {
  Series r(kSeriesLength);
  for (size_t i = 0; i < a.size() && i < r.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size() && i + j < r.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Series series_div(const Series& a, const Series& b) {
  CREMONA_CHECK(!b.empty() && b[0] != 0, "series division by a non-unit");
  Series q(kSeriesLength);
  Rational inv = 1 / b[0];
  for (int n = 0; n < kSeriesLength; ++n) {
    Rational acc = n < static_cast<int>(a.size()) ? a[n] : Rational(0);
    for (int j = 1; j <= n && j < static_cast<int>(b.size()); ++j) acc -= b[j] * q[n - j];
    q[n] = acc * inv;
  }
  return q;
}

Series series_shift(const Series& a, int k) {
  Series r(kSeriesLength);
  for (size_t i = k; i < a.size() && i - k < r.size(); ++i) r[i - k] = a[i];
  return r;
}

Series series_eval(const HomPoly& f, const std::array<Series, 3>& x) {
  int d = f.degree();
  std::array<std::vector<Series>, 3> pw;
  Series one(kSeriesLength);
  one[0] = 1;
  for (int i = 0; i < 3; ++i) {
    pw[i].push_back(one);
    for (int k = 1; k <= d; ++k) pw[i].push_back(series_mul(pw[i].back(), x[i]));
  }
  Series r(kSeriesLength);
  for (const auto& [m, c] : f.terms()) {
    Series t = series_mul(series_mul(pw[0][m[0]], pw[1][m[1]]), pw[2][m[2]]);
    for (int n = 0; n < kSeriesLength; ++n) r[n] += c * t[n];
  }
  return r;
}

}  // namespace cremona::local
