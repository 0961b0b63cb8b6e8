#include "cremona/bubble.hpp"

#include <algorithm>
#include <optional>

#include "cremona/error.hpp"
#include "cremona/jonquieres.hpp"
#include "local.hpp"

namespace cremona {

using local::LocalPoly;
using local::Series;

BubblePoint BubblePoint::parent() const {
  CREMONA_CHECK(!tower.empty(), "a proper point has no parent");
  return BubblePoint(base, std::vector<P1Point>(tower.begin(), tower.end() - 1));
}

bool BubblePoint::above(const BubblePoint& q) const {
  if (base != q.base || q.tower.size() > tower.size()) return false;
  return std::equal(q.tower.begin(), q.tower.end(), tower.begin());
}

std::string BubblePoint::str() const {
  std::string s = base.str();
  for (const auto& d : tower) s += " ^ " + d.str();
  return s;
}

bool operator<(const BubblePoint& a, const BubblePoint& b) {
  if (a.height() != b.height()) return a.height() < b.height();
  if (a.base != b.base) return a.base < b.base;
  return a.tower < b.tower;
}

LinearSystem::LinearSystem(int d, std::vector<WeightedPoint> b) : degree(d) {
  for (auto& wp : b)
    if (wp.second != 0) base.push_back(std::move(wp));
  std::sort(base.begin(), base.end(),
            [](const WeightedPoint& x, const WeightedPoint& y) { return x.first < y.first; });
  for (size_t i = 1; i < base.size(); ++i)
    CREMONA_CHECK(base[i - 1].first != base[i].first, "repeated base point in a linear system");
  for (const auto& [p, m] : base)
    CREMONA_CHECK(m > 0, "negative multiplicity in a linear system");
}

int LinearSystem::multiplicity(const BubblePoint& p) const {
  for (const auto& [q, m] : base)
    if (q == p) return m;
  return 0;
}

std::string LinearSystem::str() const {
  std::string s = "deg=" + std::to_string(degree);
  for (const auto& [p, m] : base) s += "; (" + p.str() + ", " + std::to_string(m) + ")";
  return s;
}

namespace {

std::vector<HomPoly> nonzero(const std::vector<HomPoly>& members) {
  std::vector<HomPoly> r;
  for (const auto& m : members)
    if (!m.is_zero()) r.push_back(m);
  if (r.empty()) throw Error(ErrorKind::ZeroTriple, "linear system without nonzero members");
  return r;
}

// Deterministic small integers for the coordinate changes below.
struct Lcg {
  unsigned long long state;
  long next(long lo, long hi) {
    state = state * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((state >> 33) % static_cast<unsigned long long>(hi - lo + 1));
  }
};

struct RootSet {
  std::vector<P1Point> roots;
  bool irrational = false;
};

// Common roots [a:b] of binary forms sum_j c_j a^(m-j) b^j.
RootSet binary_common_roots(const std::vector<std::vector<Rational>>& forms) {
  RootSet out;
  UPoly g;
  bool at_infinity = true;
  for (const auto& f : forms) {
    UPoly u(f);
    if (u.is_zero()) continue;
    g = gcd(g, u);
    if (f.back() != 0) at_infinity = false;
  }
  if (g.is_zero()) return out;  // every form vanishes identically
  if (at_infinity) out.roots.emplace_back(0, 1);
  auto rs = rational_roots(g);
  if (static_cast<int>(rs.size()) < squarefree_part(g).degree()) out.irrational = true;
  for (const auto& r : rs) out.roots.emplace_back(1, r);
  return out;
}

UPoly specialize_x(const HomPoly& g, const Rational& x0) {
  // g(x0, y, 1) as a polynomial in y
  std::vector<Rational> c(g.degree() + 1);
  for (const auto& [m, a] : g.terms()) {
    Rational v = a;
    for (int k = 0; k < m[0]; ++k) v *= x0;
    c[m[1]] += v;
  }
  return UPoly(std::move(c));
}

UPoly resultant_in_y(const HomPoly& a, const HomPoly& b) {
  int n = a.degree() * b.degree();
  std::vector<Rational> xs, ys;
  for (int k = 0; k <= n; ++k) {
    xs.emplace_back(k);
    ys.push_back(resultant(specialize_x(a, k), specialize_x(b, k)));
  }
  return interpolate(xs, ys);
}

std::optional<std::vector<ProjPoint>> try_common_zeros(const std::vector<HomPoly>& members,
                                                       unsigned long long seed, bool& irrational) {
  int d = members[0].degree();
  Lcg rng{seed};
  LinMap M;
  if (seed != 0) {
    for (int tries = 0;; ++tries) {
      Matrix3 m;
      for (auto& row : m)
        for (auto& e : row) e = rng.next(-3, 3);
      if (det(m) != 0) {
        M = LinMap(m);
        break;
      }
    }
  }
  std::vector<HomPoly> g;
  for (const auto& p : members) g.push_back(substitute_raw(p, M.components()));
  HomPoly combos[3];
  for (auto& c : combos) {
    c = HomPoly(d);
    for (const auto& p : g) c += Rational(rng.next(1, 9)) * p;
  }
  Mono ylead{0, d, 0};
  if (combos[0].coeff(ylead) == 0 || combos[1].coeff(ylead) == 0 || combos[2].coeff(ylead) == 0)
    return std::nullopt;

  std::vector<ProjPoint> pts;
  // Points on the line z = 0.
  std::vector<std::vector<Rational>> forms;
  for (const auto& p : g) {
    std::vector<Rational> f(d + 1);
    for (const auto& [m, a] : p.terms())
      if (m[2] == 0) f[m[1]] = a;
    forms.push_back(f);
  }
  RootSet inf = binary_common_roots(forms);
  if (inf.irrational) {
    irrational = true;
    return std::nullopt;
  }
  for (const auto& r : inf.roots) pts.push_back(M.apply(ProjPoint(Rational(r[0]), Rational(r[1]), 0)));

  // Affine points.
  UPoly R = gcd(resultant_in_y(combos[0], combos[1]), resultant_in_y(combos[0], combos[2]));
  if (R.is_zero()) return std::nullopt;
  auto xs = rational_roots(R);
  if (static_cast<int>(xs.size()) < squarefree_part(R).degree()) {
    irrational = true;
    return std::nullopt;
  }
  for (const auto& x0 : xs) {
    UPoly h;
    for (const auto& p : g) h = gcd(h, specialize_x(p, x0));
    if (h.is_zero()) return std::nullopt;
    auto ys = rational_roots(h);
    if (static_cast<int>(ys.size()) < squarefree_part(h).degree()) {
      irrational = true;
      return std::nullopt;
    }
    for (const auto& y0 : ys) pts.push_back(M.apply(ProjPoint(x0, y0, 1)));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

int min_order(const std::vector<LocalPoly>& polys) {
  int m = -1;
  for (const auto& p : polys) {
    int o = p.order();
    if (o >= 0 && (m < 0 || o < m)) m = o;
  }
  return m;
}

void local_search(const std::vector<LocalPoly>& polys, const BubblePoint& here, int m,
                  int max_height, std::vector<WeightedPoint>& out) {
  out.emplace_back(here, m);
  std::vector<std::vector<Rational>> cones;
  for (const auto& p : polys)
    if (p.order() == m) cones.push_back(p.form(m));
  RootSet dirs = binary_common_roots(cones);
  if (dirs.irrational) throw Error(ErrorKind::IrrationalBasePoints, "irrational tangent direction at " + here.str());
  for (const auto& dir : dirs.roots) {
    std::vector<LocalPoly> next;
    for (const auto& p : polys) next.push_back(local::blow_up(p, dir, m));
    int mm = min_order(next);
    if (mm <= 0) continue;
    BubblePoint child = here;
    child.tower.push_back(dir);
    if (child.height() > max_height) throw Error(ErrorKind::TowerTooDeep, child.str());
    local_search(next, child, mm, max_height, out);
  }
}

}  // namespace

std::vector<ProjPoint> common_zeros(const std::vector<HomPoly>& members_in) {
  std::vector<HomPoly> members = nonzero(members_in);
  if (members[0].degree() == 0) return {};
  bool irrational = false;
  for (unsigned long long seed = 0; seed < 6; ++seed) {
    auto r = try_common_zeros(members, seed, irrational);
    if (r) return *r;
  }
  if (irrational) throw Error(ErrorKind::IrrationalBasePoints, "base points are not all rational");
  throw Error(ErrorKind::InvariantViolation, "could not isolate the common zeros");
}

std::vector<WeightedPoint> base_points(const std::vector<HomPoly>& members_in, int max_height) {
  std::vector<HomPoly> members = nonzero(members_in);
  std::vector<WeightedPoint> out;
  for (const auto& p : common_zeros(members)) {
    std::vector<LocalPoly> loc;
    for (const auto& g : members) loc.push_back(local::localize(g, p));
    int m = min_order(loc);
    CREMONA_CHECK(m > 0, "common zero is not a zero of every member");
    local_search(loc, BubblePoint(p), m, max_height, out);
  }
  std::sort(out.begin(), out.end(),
            [](const WeightedPoint& a, const WeightedPoint& b) { return a.first < b.first; });
  return out;
}

int multiplicity_at(const std::vector<HomPoly>& members_in, const BubblePoint& p) {
  std::vector<HomPoly> members = nonzero(members_in);
  std::vector<LocalPoly> loc;
  for (const auto& g : members) loc.push_back(local::localize(g, p.base));
  int m = min_order(loc);
  for (const auto& dir : p.tower) {
    for (auto& l : loc) l = local::blow_up(l, dir, m);
    m = min_order(loc);
  }
  return m;
}

namespace {

Series constant_series(const Rational& c) {
  Series s(local::kSeriesLength);
  s[0] = c;
  return s;
}

// Smooth germ through p whose direction at the top level is [1:lambda].
std::array<Series, 3> germ(const BubblePoint& p, long lambda) {
  Series u(local::kSeriesLength), v(local::kSeriesLength);
  u[1] = 1;
  v[1] = lambda;
  for (auto it = p.tower.rbegin(); it != p.tower.rend(); ++it) {
    const P1Point& dir = *it;
    Series s, t;
    if (dir[0] != 0) {
      Rational mu = Rational(dir[1]) / Rational(dir[0]);
      Series w = v;
      w[0] += mu;
      s = u;
      t = local::series_mul(u, w);
    } else {
      s = local::series_mul(u, v);
      t = u;
    }
    u = std::move(s);
    v = std::move(t);
  }
  int k = p.base.chart();
  int i1 = (k == 0) ? 1 : 0;
  int i2 = (k == 2) ? 1 : 2;
  std::array<Series, 3> x;
  x[k] = constant_series(1);
  x[i1] = u;
  x[i1][0] += Rational(p.base[i1]) / Rational(p.base[k]);
  x[i2] = v;
  x[i2][0] += Rational(p.base[i2]) / Rational(p.base[k]);
  return x;
}

// Chain of points traversed by the germ y (y(0) != 0), up to `depth` levels
// above the proper point. Empty optional when the germ is constant.
std::optional<BubblePoint> read_chain(const std::array<Series, 3>& y, int depth) {
  ProjPoint q(y[0][0], y[1][0], y[2][0]);
  int k = q.chart();
  int i1 = (k == 0) ? 1 : 0;
  int i2 = (k == 2) ? 1 : 2;
  Series s = local::series_div(y[i1], y[k]);
  Series t = local::series_div(y[i2], y[k]);
  s[0] = 0;
  t[0] = 0;
  if (local::valuation(s) < 0 && local::valuation(t) < 0) return std::nullopt;
  BubblePoint chain(q);
  for (int level = 0; level < depth; ++level) {
    int vs = local::valuation(s), vt = local::valuation(t);
    CREMONA_CHECK(vs >= 0 || vt >= 0, "germ collapsed while reading its chain");
    Rational a, b;
    if (vt < 0 || (vs >= 0 && vs < vt)) {
      a = 1;
      b = 0;
    } else if (vs < 0 || vt < vs) {
      a = 0;
      b = 1;
    } else {
      a = s[vs];
      b = t[vs];
    }
    P1Point dir(a, b);
    chain.tower.push_back(dir);
    Series u, v;
    if (dir[0] != 0) {
      Rational mu = Rational(dir[1]) / Rational(dir[0]);
      u = s;
      v = local::series_div(local::series_shift(t, vs), local::series_shift(s, vs));
      v[0] -= mu;
    } else {
      u = t;
      v = local::series_div(local::series_shift(s, vt), local::series_shift(t, vt));
    }
    s = std::move(u);
    t = std::move(v);
  }
  return chain;
}

}  // namespace

BubblePoint fbullet(const BirMap& f, const BubblePoint& p) {
  if (p.proper()) {
    // Off the critical curve f is a local isomorphism and p goes to f(p).
    Point3 c = p.base.coords();
    Matrix3 jac;
    for (int r = 0; r < 3; ++r)
      for (int k = 0; k < 3; ++k) jac[r][k] = f.components()[r].derivative(k).eval(c);
    if (det(jac) != 0) return BubblePoint(f.apply(p.base));
  }
  std::vector<HomPoly> comps(f.components().begin(), f.components().end());
  if (multiplicity_at(comps, p) > 0) throw Error(ErrorKind::IsBasePoint, p.str());
  const int depth = kMaxTowerHeight + 1;
  std::vector<BubblePoint> chains;
  for (long lambda = 1; lambda <= 6 && chains.size() < 3; ++lambda) {
    std::array<Series, 3> x = germ(p, lambda);
    std::array<Series, 3> y;
    int k = -1;
    for (int i = 0; i < 3; ++i) {
      y[i] = local::series_eval(f.components()[i], x);
      int v = local::valuation(y[i]);
      if (v >= 0 && (k < 0 || v < k)) k = v;
    }
    if (k < 0) continue;
    for (auto& s : y) s = local::series_shift(s, k);
    auto c = read_chain(y, depth);
    if (c) chains.push_back(*c);
  }
  CREMONA_CHECK(chains.size() >= 2, "could not transport the point");
  BubblePoint common = chains[0];
  for (size_t j = 1; j < chains.size(); ++j) {
    const BubblePoint& c = chains[j];
    CREMONA_CHECK(c.base == common.base, "transported germs disagree on the proper point");
    size_t n = 0;
    while (n < common.tower.size() && n < c.tower.size() && common.tower[n] == c.tower[n]) ++n;
    common.tower.resize(n);
  }
  if (common.height() > kMaxTowerHeight) throw Error(ErrorKind::TowerTooDeep, "image of " + p.str());
  return common;
}

ConsistentBasepoints basepoints_quadratic(const BirMap& f) {
  if (f.degree() != 2) throw Error(ErrorKind::NotQuadratic, "degree " + std::to_string(f.degree()));
  QuadraticFactorization q = factor_quadratic(f);
  auto std_pts = sigma_basepoints(q.i);
  BirMap ainv = BirMap::linear(q.alpha.inverse());
  BirMap beta = BirMap::linear(q.beta);
  ConsistentBasepoints cb;
  cb.i = q.i;
  std::array<std::pair<BubblePoint, BubblePoint>, 3> pairs;
  for (int j = 0; j < 3; ++j) pairs[j] = {fbullet(ainv, std_pts[j]), fbullet(beta, std_pts[j])};
  if (q.i == 3)
    std::sort(pairs.begin(), pairs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  for (int j = 0; j < 3; ++j) {
    cb.source[j] = pairs[j].first;
    cb.target[j] = pairs[j].second;
  }
  return cb;
}

namespace {

void check_towers(const LinearSystem& delta) {
  for (const auto& [p, m] : delta.base)
    if (!p.proper() && delta.multiplicity(p.parent()) == 0)
      throw Error(ErrorKind::MultiplicityUndefined, p.str() + " lies over a point outside the system");
}

}  // namespace

LinearSystem image_system(const BirMap& f, const LinearSystem& delta) {
  check_towers(delta);
  if (f.is_linear()) {
    std::vector<WeightedPoint> b;
    for (const auto& [p, m] : delta.base) b.emplace_back(fbullet(f, p), m);
    return LinearSystem(delta.degree, std::move(b));
  }
  if (f.degree() != 2) throw Error(ErrorKind::NotQuadratic, "image_system needs a map of degree at most 2");
  ConsistentBasepoints cb = basepoints_quadratic(f);
  int d = delta.degree;
  int a[3], eps = 0;
  for (int j = 0; j < 3; ++j) {
    a[j] = delta.multiplicity(cb.source[j]);
    eps += a[j];
  }
  std::vector<WeightedPoint> b;
  for (int j = 0; j < 3; ++j) {
    int bj = d - eps + a[j];
    CREMONA_CHECK(bj >= 0, "negative multiplicity from the degree formula");
    if (bj > 0) b.emplace_back(cb.target[j], bj);
  }
  for (const auto& [p, m] : delta.base) {
    if (std::find(cb.source.begin(), cb.source.end(), p) != cb.source.end()) continue;
    b.emplace_back(fbullet(f, p), m);
  }
  LinearSystem out(2 * d - eps, std::move(b));
  CREMONA_CHECK(out.degree >= 1, "image system has non-positive degree");
  if (is_dejonquieres_system(delta) && is_dejonquieres(f))
    CREMONA_CHECK(is_dejonquieres_system(out), "de Jonquieres system not preserved");
  return out;
}

bool is_dejonquieres_system(const LinearSystem& delta) {
  int d = delta.degree;
  if (d < 1) return false;
  BubblePoint e1(ProjPoint(1, 0, 0));
  if (delta.multiplicity(e1) != d - 1) return false;
  long s1 = 0, s2 = 0;
  for (const auto& [p, m] : delta.base) {
    if (p != e1 && m != 1) return false;
    s1 += m;
    s2 += static_cast<long>(m) * m;
  }
  return s2 == static_cast<long>(d) * d - 1 && s1 == 3L * (d - 1);
}

LinearSystem system_of_word(const std::vector<BirMap>& letters) {
  LinearSystem delta;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) delta = image_system(*it, delta);
  return delta;
}

}  // namespace cremona
