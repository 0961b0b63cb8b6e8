#include "cremona/birmap.hpp"

#include "cremona/error.hpp"
#include "cremona/jonquieres.hpp"

namespace cremona {

namespace {

HomPoly mono(long c, int a, int b, int d) { return HomPoly::monomial(c, {a, b, d}); }

Triple identity_components() { return {HomPoly::var(0), HomPoly::var(1), HomPoly::var(2)}; }

Triple entry_components(const FactorEntry& e) {
  if (auto* m = std::get_if<LinMap>(&e)) return m->components();
  return sigma_components(std::get<Quadric>(e));
}

}  // namespace

Triple sigma_components(Quadric q) {
  switch (q) {
    case Quadric::Sigma1:
      return {mono(-1, 1, 1, 0) + mono(1, 0, 0, 2), mono(1, 0, 2, 0), mono(1, 0, 1, 1)};
    case Quadric::Sigma2:
      return {mono(1, 1, 1, 0), mono(1, 0, 0, 2), mono(1, 0, 1, 1)};
    case Quadric::Sigma3:
      return {mono(1, 0, 1, 1), mono(1, 1, 0, 1), mono(1, 1, 1, 0)};
  }
  throw Error(ErrorKind::InvariantViolation, "unknown involution");
}

Triple compose_components(const Triple& f, const Triple& g) {
  return triple_cancel(substitute_raw(f[0], g), substitute_raw(f[1], g), substitute_raw(f[2], g));
}

BirMap::BirMap() : f_(identity_components()), word_(FactorWord{}) {}

BirMap BirMap::from_components(const Triple& f) {
  BirMap m;
  m.f_ = triple_cancel(f[0], f[1], f[2]);
  if (m.degree() < 1) throw Error(ErrorKind::DegreeMismatch, "constant map");
  m.word_.reset();
  return m;
}

BirMap BirMap::from_word(const FactorWord& w) {
  Triple acc = identity_components();
  for (auto it = w.rbegin(); it != w.rend(); ++it) acc = compose_components(entry_components(*it), acc);
  BirMap m;
  m.f_ = triple_cancel(acc[0], acc[1], acc[2]);
  m.word_ = w;
  return m;
}

BirMap BirMap::with_word(const Triple& f, const FactorWord& w) {
  BirMap m = from_word(w);
  if (m.f_ != triple_cancel(f[0], f[1], f[2]))
    throw Error(ErrorKind::InvariantViolation, "factor word does not match the components");
  return m;
}

BirMap BirMap::linear(const LinMap& m) {
  BirMap b;
  b.f_ = canonical_triple(m.components());
  b.word_ = FactorWord{m};
  return b;
}

BirMap BirMap::sigma(int i) {
  if (i < 1 || i > 3) throw Error(ErrorKind::ParseError, "sigma index must be 1, 2 or 3");
  BirMap b;
  b.f_ = canonical_triple(sigma_components(static_cast<Quadric>(i)));
  b.word_ = FactorWord{static_cast<Quadric>(i)};
  return b;
}

BirMap BirMap::tau(int i, int j) {
  if (i < 1 || i > 3 || j < 1 || j > 3 || i == j)
    throw Error(ErrorKind::ParseError, "tau indices must be two distinct values in 1..3");
  return linear(LinMap::swap(i, j));
}

bool BirMap::is_identity() const { return f_ == identity_components(); }

LinMap BirMap::as_linear() const {
  if (!is_linear()) throw Error(ErrorKind::NotLinear, "map has degree " + std::to_string(degree()));
  Matrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Mono e{0, 0, 0};
      e[c] = 1;
      m[r][c] = f_[r].coeff(e);
    }
  return LinMap(m);
}

Point3 BirMap::apply(const Point3& p) const {
  return {f_[0].eval(p), f_[1].eval(p), f_[2].eval(p)};
}

ProjPoint BirMap::apply(const ProjPoint& p) const {
  Point3 v = apply(p.coords());
  if (v[0] == 0 && v[1] == 0 && v[2] == 0)
    throw Error(ErrorKind::IndeterminacyPoint, p.str());
  return ProjPoint(v);
}

BirMap compose(const BirMap& f, const BirMap& g) {
  BirMap r;
  r.f_ = compose_components(f.components(), g.components());
  if (f.factor_word() && g.factor_word()) {
    FactorWord w = *f.factor_word();
    w.insert(w.end(), g.factor_word()->begin(), g.factor_word()->end());
    r.word_ = std::move(w);
  } else {
    r.word_.reset();
  }
  return r;
}

BirMap compose(const std::vector<BirMap>& maps) {
  BirMap acc;
  for (auto it = maps.rbegin(); it != maps.rend(); ++it) acc = compose(*it, acc);
  return acc;
}

FactorWord inverse_word(const FactorWord& w) {
  FactorWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    if (auto* m = std::get_if<LinMap>(&*it))
      r.push_back(m->inverse());
    else
      r.push_back(*it);
  }
  return r;
}

BirMap inverse(const BirMap& f) {
  BirMap inv;
  if (f.factor_word()) {
    inv = BirMap::from_word(inverse_word(*f.factor_word()));
  } else if (f.is_linear()) {
    inv = BirMap::linear(f.as_linear().inverse());
  } else if (f.degree() == 2) {
    QuadraticFactorization q = factor_quadratic(f);
    inv = BirMap::from_word({q.alpha.inverse(), static_cast<Quadric>(q.i), q.beta.inverse()});
  } else {
    throw Error(ErrorKind::NoInverseRecipe, "raw map of degree " + std::to_string(f.degree()));
  }
  if (f.factor_word()) {
    // The inverse word reverses the entries and inverts each one, so the
    // per-entry identities prove f o inv = id. The full product is also
    // formed when it stays small.
    for (const auto& e : *f.factor_word()) {
      FactorWord ew{e};
      CREMONA_CHECK(compose_components(entry_components(e),
                                       entry_components(inverse_word(ew).front())) ==
                        identity_components(),
                    "entry inverse does not invert");
    }
    if (f.degree() <= 4)
      CREMONA_CHECK(compose_components(f.components(), inv.components()) == identity_components(),
                    "computed inverse does not invert");
  } else {
    CREMONA_CHECK(compose_components(f.components(), inv.components()) == identity_components(),
                  "computed inverse does not invert");
  }
  return inv;
}

int degree(const BirMap& f) { return f.degree(); }
bool is_linear(const BirMap& f) { return f.is_linear(); }
LinMap as_linear(const BirMap& f) { return f.as_linear(); }
ProjPoint apply(const BirMap& f, const ProjPoint& p) { return f.apply(p); }
BirMap make_sigma(int i) { return BirMap::sigma(i); }
BirMap make_tau(int i, int j) { return BirMap::tau(i, j); }

}  // namespace cremona
