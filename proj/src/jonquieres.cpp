#include "cremona/jonquieres.hpp"

#include <algorithm>

#include "cremona/error.hpp"

namespace cremona {

namespace {

const ProjPoint kE1(1, 0, 0), kE2(0, 1, 0), kE3(0, 0, 1);

// A point on the line through p in the tangent direction dir, distinct from p.
Point3 direction_point(const ProjPoint& p, const P1Point& dir) {
  int k = p.chart();
  int i1 = (k == 0) ? 1 : 0;
  int i2 = (k == 2) ? 1 : 2;
  Point3 r{0, 0, 0};
  r[i1] = dir[0];
  r[i2] = dir[1];
  return r;
}

void check_aligned(const LinMap& alpha, int i, const std::array<BubblePoint, 3>& pts) {
  BirMap a = BirMap::linear(alpha);
  auto target = sigma_basepoints(i);
  for (int j = 0; j < 3; ++j)
    CREMONA_CHECK(fbullet(a, pts[j]) == target[j], "alignment does not reach the standard base points");
}

}  // namespace

std::string_view tag_name(GroupTag t) {
  switch (t) {
    case GroupTag::P2: return "P2";
    case GroupTag::F0: return "F0";
    case GroupTag::F2: return "F2";
  }
  return "?";
}

std::string_view dj_kind_name(DJKind k) {
  switch (k) {
    case DJKind::Sigma1: return "sigma1";
    case DJKind::Sigma2: return "sigma2";
    case DJKind::Tau12Sigma2Tau12: return "tau12*sigma2*tau12";
    case DJKind::Sigma3: return "sigma3";
  }
  return "?";
}

BirMap dj_kind_map(DJKind k) {
  switch (k) {
    case DJKind::Sigma1: return BirMap::sigma(1);
    case DJKind::Sigma2: return BirMap::sigma(2);
    case DJKind::Tau12Sigma2Tau12:
      return BirMap::from_word({LinMap::swap(1, 2), Quadric::Sigma2, LinMap::swap(1, 2)});
    case DJKind::Sigma3: return BirMap::sigma(3);
  }
  throw Error(ErrorKind::InvariantViolation, "unknown normal form");
}

bool Classification::contains(GroupTag t) const {
  switch (t) {
    case GroupTag::P2: return p2;
    case GroupTag::F0: return f0;
    case GroupTag::F2: return f2;
  }
  return false;
}

std::string Classification::str() const {
  std::string s;
  auto add = [&s](const char* part) { s += s.empty() ? part : std::string(", ") + part; };
  if (p2) add("P2");
  if (f0) add("F0");
  if (f2) add("F2");
  if (dejonquieres) add("deJonquieres");
  return s.empty() ? "none" : s;
}

bool is_dejonquieres(const BirMap& f) {
  const HomPoly& a = f.components()[1];
  const HomPoly& b = f.components()[2];
  if (a.is_zero() || b.is_zero()) return false;
  HomPoly g = gcd(a, b);
  auto qa = exact_divide(a, g), qb = exact_divide(b, g);
  CREMONA_CHECK(qa && qb, "gcd does not divide");
  if (qa->degree() != 1) return false;
  return qa->coeff({1, 0, 0}) == 0 && qb->coeff({1, 0, 0}) == 0;
}

bool linear_is_dejonquieres(const LinMap& m) { return m.at(1, 0) == 0 && m.at(2, 0) == 0; }

bool linear_in_F0(const LinMap& m) {
  auto in_pair = [](const ProjPoint& p) { return p == kE1 || p == kE2; };
  return in_pair(m.apply(kE1)) && in_pair(m.apply(kE2));
}

bool linear_in_F2(const LinMap& m) { return linear_is_dejonquieres(m) && m.at(1, 2) == 0; }

std::array<BubblePoint, 3> sigma_basepoints(int i) {
  BubblePoint e1(kE1), e2(kE2), e3(kE3);
  BubblePoint near(kE1, {P1Point(0, 1)});
  switch (i) {
    case 3: return {e1, e2, e3};
    case 2: return {e1, e2, near};
    case 1: return {e1, near, BubblePoint(kE1, {P1Point(0, 1), P1Point(1, 1)})};
  }
  throw Error(ErrorKind::InvariantViolation, "sigma index out of range");
}

int sigma_roles(std::array<BubblePoint, 3>& pts) {
  std::sort(pts.begin(), pts.end());
  int proper = 0;
  for (const auto& p : pts) proper += p.proper();
  if (proper == 3) {
    if (collinear(pts[0].base, pts[1].base, pts[2].base))
      throw Error(ErrorKind::NotBirational, "three collinear base points");
    return 3;
  }
  if (proper == 2 && pts[2].height() == 1) {
    BubblePoint c = pts[2];
    BubblePoint a, b;
    if (c.base == pts[0].base) {
      a = pts[0];
      b = pts[1];
    } else if (c.base == pts[1].base) {
      a = pts[1];
      b = pts[0];
    } else {
      throw Error(ErrorKind::NotBirational, "infinitely near point over no base point");
    }
    if (collinear(a.base, b.base, ProjPoint(direction_point(a.base, c.tower[0]))))
      throw Error(ErrorKind::NotBirational, "infinitely near point in the direction of the other point");
    pts = {a, b, c};
    return 2;
  }
  if (proper == 1 && pts[1].height() == 1 && pts[2].height() == 2 && pts[1].base == pts[0].base &&
      pts[2].parent() == pts[1]) {
    const P1Point& second = pts[2].tower[1];
    if (second[0] == 0 || second[1] == 0)
      throw Error(ErrorKind::NotBirational, "degenerate second-order base point");
    return 1;
  }
  throw Error(ErrorKind::NotBirational, "base points do not form a quadratic configuration");
}

LinMap align_to_sigma(int i, const std::array<BubblePoint, 3>& pts) {
  LinMap alpha;
  if (i == 3) {
    alpha = LinMap::from_columns(pts[0].base.coords(), pts[1].base.coords(), pts[2].base.coords()).inverse();
  } else if (i == 2) {
    Point3 r = direction_point(pts[0].base, pts[2].tower[0]);
    alpha = LinMap::from_columns(pts[0].base.coords(), pts[1].base.coords(), r).inverse();
  } else {
    Point3 r = direction_point(pts[0].base, pts[1].tower[0]);
    const Point3 candidates[] = {kE2.coords(), kE1.coords(), kE3.coords(), Point3{1, 1, 1}};
    std::optional<LinMap> a0;
    for (const auto& s : candidates) {
      Matrix3 m;
      for (int row = 0; row < 3; ++row) m[row] = {pts[0].base.coords()[row], s[row], r[row]};
      if (det(m) != 0) {
        a0 = LinMap(m).inverse();
        break;
      }
    }
    CREMONA_CHECK(a0.has_value(), "no auxiliary point off the tangent line");
    BubblePoint moved = fbullet(BirMap::linear(*a0), pts[2]);
    const P1Point& d2 = moved.tower.at(1);
    if (d2[0] == 0 || d2[1] == 0) throw Error(ErrorKind::NotBirational, "degenerate second-order base point");
    // diag(1, l, 1) rescales the second-order coordinate [1:c] to [1:l c].
    Rational c = Rational(d2[1]) / Rational(d2[0]);
    alpha = LinMap::diagonal(1, 1 / c, 1) * *a0;
  }
  check_aligned(alpha, i, pts);
  return alpha;
}

BirMap quadratic_with_basepoints(int i, const std::array<BubblePoint, 3>& pts) {
  LinMap alpha = align_to_sigma(i, pts);
  return BirMap::from_word({alpha.inverse(), static_cast<Quadric>(i), alpha});
}

QuadraticFactorization factor_quadratic(const BirMap& f) {
  if (f.degree() != 2) throw Error(ErrorKind::NotQuadratic, "degree " + std::to_string(f.degree()));
  std::vector<HomPoly> comps(f.components().begin(), f.components().end());
  auto bps = base_points(comps, kMaxTowerHeight);
  if (bps.size() != 3) throw Error(ErrorKind::NotBirational, "a quadratic map needs three base points");
  std::array<BubblePoint, 3> pts;
  for (int j = 0; j < 3; ++j) {
    if (bps[j].second != 1) throw Error(ErrorKind::NotBirational, "base point of multiplicity > 1");
    pts[j] = bps[j].first;
  }
  int i = sigma_roles(pts);
  LinMap alpha = align_to_sigma(i, pts);
  Triple g = compose_components(compose_components(f.components(), alpha.inverse().components()),
                                sigma_components(static_cast<Quadric>(i)));
  if (g[0].degree() != 1) throw Error(ErrorKind::NotBirational, "residual map is not linear");
  LinMap beta = BirMap::from_components(g).as_linear();
  QuadraticFactorization q{beta, i, alpha};
  BirMap check = BirMap::from_word({beta, static_cast<Quadric>(i), alpha});
  CREMONA_CHECK(check == f, "factorisation does not recompose");
  return q;
}

DJFactorization factor_quadratic_dJ(const BirMap& f) {
  if (f.degree() != 2) throw Error(ErrorKind::NotQuadratic, "degree " + std::to_string(f.degree()));
  if (!is_dejonquieres(f)) throw Error(ErrorKind::NotDeJonquieres, "map does not preserve the pencil");
  std::vector<HomPoly> comps(f.components().begin(), f.components().end());
  auto bps = base_points(comps, kMaxTowerHeight);
  if (bps.size() != 3) throw Error(ErrorKind::NotBirational, "a quadratic map needs three base points");
  std::array<BubblePoint, 3> pts;
  for (int j = 0; j < 3; ++j) pts[j] = bps[j].first;
  int i = sigma_roles(pts);
  BubblePoint e1(kE1);
  DJFactorization out;
  bool swapped = false;
  if (i == 3) {
    auto it = std::find(pts.begin(), pts.end(), e1);
    CREMONA_CHECK(it != pts.end(), "de Jonquieres map without base point [1:0:0]");
    std::rotate(pts.begin(), it, it + 1);
    out.kind = DJKind::Sigma3;
  } else if (i == 2) {
    if (pts[0] == e1) {
      out.kind = DJKind::Sigma2;
    } else {
      CREMONA_CHECK(pts[1] == e1, "de Jonquieres map without base point [1:0:0]");
      out.kind = DJKind::Tau12Sigma2Tau12;
      swapped = true;
    }
  } else {
    CREMONA_CHECK(pts[0] == e1, "de Jonquieres map without base point [1:0:0]");
    out.kind = DJKind::Sigma1;
  }
  LinMap alpha = align_to_sigma(i, pts);
  Triple g = compose_components(compose_components(f.components(), alpha.inverse().components()),
                                sigma_components(static_cast<Quadric>(i)));
  if (g[0].degree() != 1) throw Error(ErrorKind::NotBirational, "residual map is not linear");
  LinMap beta = BirMap::from_components(g).as_linear();
  if (swapped) {
    out.alpha1 = LinMap::swap(1, 2) * alpha;
    out.alpha2 = beta * LinMap::swap(1, 2);
  } else {
    out.alpha1 = alpha;
    out.alpha2 = beta;
  }
  CREMONA_CHECK(out.alpha1.apply(kE1) == kE1 && out.alpha2.apply(kE1) == kE1,
                "linear factors do not fix [1:0:0]");
  BirMap check = compose({BirMap::linear(out.alpha2), out.tau(), BirMap::linear(out.alpha1)});
  CREMONA_CHECK(check == f, "de Jonquieres factorisation does not recompose");
  return out;
}

Classification classify_subgroups(const BirMap& f) {
  if (f.degree() >= 3) throw Error(ErrorKind::DegreeTooHigh, "degree " + std::to_string(f.degree()));
  Classification c;
  c.dejonquieres = is_dejonquieres(f);
  if (f.is_linear()) {
    LinMap m = f.as_linear();
    c.p2 = true;
    c.f0 = linear_in_F0(m);
    c.f2 = linear_in_F2(m);
    return c;
  }
  ConsistentBasepoints cb = basepoints_quadratic(f);
  BubblePoint e1(kE1), e2(kE2), near(kE1, {P1Point(0, 1)});
  auto is_pair = [&](const BubblePoint& a, const BubblePoint& b) {
    return (a == e1 && b == e2) || (a == e2 && b == e1);
  };
  if (cb.i == 3) {
    for (int j = 0; j < 3 && !c.f0; ++j)
      for (int k = j + 1; k < 3; ++k)
        if (is_pair(cb.source[j], cb.source[k]) && is_pair(cb.target[j], cb.target[k])) c.f0 = true;
  } else if (cb.i == 2) {
    c.f0 = is_pair(cb.source[0], cb.source[1]) && is_pair(cb.target[0], cb.target[1]);
    c.f2 = cb.source[0] == e1 && cb.target[0] == e1 && cb.source[2] == near && cb.target[2] == near;
  } else {
    c.f2 = cb.source[0] == e1 && cb.target[0] == e1 && cb.source[1] == near && cb.target[1] == near;
  }
  return c;
}

namespace {

// Arranges {e1, a, b} into sigma roles if they support a quadratic de
// Jonquieres map; returns 0 otherwise.
int dj_configuration(const BubblePoint& a, const BubblePoint& b, std::array<BubblePoint, 3>& roles) {
  std::array<BubblePoint, 3> pts{BubblePoint(kE1), a, b};
  try {
    int i = sigma_roles(pts);
    roles = pts;
    return i;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotBirational) return 0;
    throw;
  }
}

}  // namespace

std::vector<BirMap> decompose_dejonquieres(const BirMap& f) {
  if (!is_dejonquieres(f)) throw Error(ErrorKind::NotDeJonquieres, "map does not preserve the pencil");
  try {
    LinearSystem delta;
    if (f.factor_word()) {
      std::vector<BirMap> letters;
      for (const auto& e : inverse_word(*f.factor_word())) {
        if (auto* m = std::get_if<LinMap>(&e))
          letters.push_back(BirMap::linear(*m));
        else
          letters.push_back(BirMap::sigma(static_cast<int>(std::get<Quadric>(e))));
      }
      delta = system_of_word(letters);
    } else {
      std::vector<HomPoly> comps(f.components().begin(), f.components().end());
      delta = LinearSystem(f.degree(), base_points(comps, kMaxTowerHeight));
    }
    CREMONA_CHECK(delta.degree == f.degree(), "linear system degree differs from the map degree");

    BirMap cur = f;
    std::vector<BirMap> rhos;
    BubblePoint e1(kE1);
    while (cur.degree() > 1) {
      std::vector<BubblePoint> simple;
      for (const auto& [p, m] : delta.base)
        if (p != e1) simple.push_back(p);
      std::sort(simple.begin(), simple.end());
      std::optional<BirMap> rho;
      for (size_t x = 0; x < simple.size() && !rho; ++x)
        for (size_t y = x + 1; y < simple.size() && !rho; ++y) {
          std::array<BubblePoint, 3> roles;
          int i = dj_configuration(simple[x], simple[y], roles);
          if (i != 0) rho = quadratic_with_basepoints(i, roles);
        }
      if (!rho)
        throw Error(ErrorKind::UnsupportedBasePointConfiguration,
                    "no admissible pair of simple base points in " + delta.str());
      CREMONA_CHECK(is_dejonquieres(*rho), "auxiliary quadratic map is not de Jonquieres");
      int before = cur.degree();
      cur = compose(cur, inverse(*rho));
      delta = image_system(*rho, delta);
      CREMONA_CHECK(cur.degree() == before - 1 && delta.degree == cur.degree(),
                    "degree did not drop by one");
      rhos.push_back(*rho);
    }
    std::vector<BirMap> out{BirMap::linear(cur.as_linear())};
    for (auto it = rhos.rbegin(); it != rhos.rend(); ++it) out.push_back(*it);
    CREMONA_CHECK(compose(out) == f, "decomposition does not recompose");
    return out;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::TowerTooDeep)
      throw Error(ErrorKind::UnsupportedBasePointConfiguration, e.what());
    throw;
  }
}

}  // namespace cremona
