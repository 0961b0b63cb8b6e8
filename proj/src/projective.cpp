#include "cremona/projective.hpp"

#include <sstream>

#include "cremona/error.hpp"

namespace cremona {

namespace {

Integer as_integer(const Rational& r) {
  CREMONA_CHECK(r.get_den() == 1, "expected an integer after scaling");
  return r.get_num();
}

}  // namespace

ProjPoint::ProjPoint(const Rational& x, const Rational& y, const Rational& z) {
  Rational s = primitive_scale({&x, &y, &z});
  if (x == 0 && y == 0 && z == 0) throw Error(ErrorKind::ZeroTriple, "point [0:0:0]");
  c_ = {as_integer(s * x), as_integer(s * y), as_integer(s * z)};
}

int ProjPoint::chart() const { return c_[0] != 0 ? 0 : (c_[1] != 0 ? 1 : 2); }

std::string ProjPoint::str() const {
  return "[" + c_[0].get_str() + ":" + c_[1].get_str() + ":" + c_[2].get_str() + "]";
}

P1Point::P1Point(const Rational& a, const Rational& b) {
  if (a == 0 && b == 0) throw Error(ErrorKind::ZeroTriple, "point [0:0] of P1");
  Rational s = primitive_scale({&a, &b});
  c_ = {as_integer(s * a), as_integer(s * b)};
}

std::string P1Point::str() const { return "[" + c_[0].get_str() + ":" + c_[1].get_str() + "]"; }

Rational det(const Matrix3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  Matrix3 m;
  for (int i = 0; i < 3; ++i) m[i] = {Rational(a[i]), Rational(b[i]), Rational(c[i])};
  return det(m) == 0;
}

LinMap::LinMap() {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m_[r][c] = (r == c) ? 1 : 0;
}

LinMap::LinMap(const Matrix3& m) {
  if (det(m) == 0) throw Error(ErrorKind::SingularMatrix, "matrix is not invertible");
  std::vector<const Rational*> v;
  for (const auto& row : m)
    for (const auto& e : row) v.push_back(&e);
  Rational s = primitive_scale(v);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m_[r][c] = s * m[r][c];
}

LinMap LinMap::from_columns(const Point3& c0, const Point3& c1, const Point3& c2) {
  Matrix3 m;
  for (int r = 0; r < 3; ++r) m[r] = {c0[r], c1[r], c2[r]};
  return LinMap(m);
}

LinMap LinMap::diagonal(const Rational& a, const Rational& b, const Rational& c) {
  Matrix3 m{};
  for (auto& row : m) row = {0, 0, 0};
  m[0][0] = a;
  m[1][1] = b;
  m[2][2] = c;
  return LinMap(m);
}

LinMap LinMap::swap(int i, int j) {
  Matrix3 m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = (r == c) ? 1 : 0;
  std::swap(m[i - 1], m[j - 1]);
  return LinMap(m);
}

Point3 LinMap::apply(const Point3& p) const {
  Point3 r;
  for (int i = 0; i < 3; ++i) r[i] = m_[i][0] * p[0] + m_[i][1] * p[1] + m_[i][2] * p[2];
  return r;
}

ProjPoint LinMap::apply(const ProjPoint& p) const { return ProjPoint(apply(p.coords())); }

LinMap LinMap::inverse() const {
  Matrix3 adj;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      int r1 = (c + 1) % 3, r2 = (c + 2) % 3, c1 = (r + 1) % 3, c2 = (r + 2) % 3;
      adj[r][c] = m_[r1][c1] * m_[r2][c2] - m_[r1][c2] * m_[r2][c1];
    }
  return LinMap(adj);
}

bool LinMap::is_monomial() const {
  for (int r = 0; r < 3; ++r) {
    int nz = 0;
    for (int c = 0; c < 3; ++c) nz += (m_[r][c] != 0);
    if (nz != 1) return false;
  }
  return true;  // invertibility forces one entry per column as well
}

Triple LinMap::components() const {
  Triple t;
  for (int r = 0; r < 3; ++r) {
    HomPoly p(1);
    for (int c = 0; c < 3; ++c) p += m_[r][c] * HomPoly::var(c);
    t[r] = p;
  }
  return t;
}

std::string LinMap::str() const {
  std::ostringstream os;
  os << "lin(";
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      os << m_[r][c].get_str();
      if (c < 2) os << ",";
    }
    if (r < 2) os << ";";
  }
  os << ")";
  return os.str();
}

LinMap operator*(const LinMap& a, const LinMap& b) {
  Matrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      m[r][c] = a.m_[r][0] * b.m_[0][c] + a.m_[r][1] * b.m_[1][c] + a.m_[r][2] * b.m_[2][c];
  return LinMap(m);
}

TorusPermElement::TorusPermElement(std::array<int, 3> perm, std::array<Rational, 3> diag)
    : perm_(perm), diag_(diag) {
  bool seen[3] = {false, false, false};
  for (int i = 0; i < 3; ++i) {
    if (perm[i] < 0 || perm[i] > 2 || seen[perm[i]])
      throw Error(ErrorKind::NotTorusPerm, "not a permutation");
    seen[perm[i]] = true;
    if (diag[i] == 0) throw Error(ErrorKind::NotTorusPerm, "zero diagonal entry");
  }
}

TorusPermElement TorusPermElement::from_linmap(const LinMap& m) {
  if (!m.is_monomial()) throw Error(ErrorKind::NotTorusPerm, m.str());
  std::array<int, 3> perm{};
  std::array<Rational, 3> diag;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c)
      if (m.at(r, c) != 0) {
        perm[r] = c;
        diag[r] = m.at(r, c);
      }
  return TorusPermElement(perm, diag);
}

LinMap TorusPermElement::to_linmap() const {
  Matrix3 m;
  for (auto& row : m) row = {0, 0, 0};
  for (int r = 0; r < 3; ++r) m[r][perm_[r]] = diag_[r];
  return LinMap(m);
}

TorusPermElement iota(const TorusPermElement& t) {
  std::array<Rational, 3> inv;
  for (int i = 0; i < 3; ++i) inv[i] = 1 / t.diag()[i];
  return TorusPermElement(t.perm(), inv);
}

}  // namespace cremona
