#pragma once

#include <array>
#include <string>

#include "cremona/hompoly.hpp"

namespace cremona {

/// Point of P^2 with coprime integer coordinates, first nonzero positive.
class ProjPoint {
 public:
  ProjPoint() : c_{1, 0, 0} {}
  ProjPoint(const Rational& x, const Rational& y, const Rational& z);
  explicit ProjPoint(const Point3& p) : ProjPoint(p[0], p[1], p[2]) {}

  const Integer& operator[](int i) const { return c_[i]; }
  Point3 coords() const { return {Rational(c_[0]), Rational(c_[1]), Rational(c_[2])}; }
  /// Index of the first nonzero coordinate; the affine chart used locally.
  int chart() const;
  std::string str() const;

  friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.c_ == b.c_; }
  friend bool operator!=(const ProjPoint& a, const ProjPoint& b) { return !(a == b); }
  /// Points are ordered by decreasing coordinate tuple, so [1:0:0] comes first.
  friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.c_ > b.c_; }

 private:
  std::array<Integer, 3> c_;
};

/// Point of P^1 with coprime integer coordinates, first nonzero positive.
class P1Point {
 public:
  P1Point() : c_{1, 0} {}
  P1Point(const Rational& a, const Rational& b);

  const Integer& operator[](int i) const { return c_[i]; }
  std::string str() const;

  friend bool operator==(const P1Point& a, const P1Point& b) { return a.c_ == b.c_; }
  friend bool operator!=(const P1Point& a, const P1Point& b) { return !(a == b); }
  friend bool operator<(const P1Point& a, const P1Point& b) { return a.c_ > b.c_; }

 private:
  std::array<Integer, 2> c_;
};

using Matrix3 = std::array<std::array<Rational, 3>, 3>;

bool collinear(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c);
Rational det(const Matrix3& m);

/// Invertible 3x3 matrix up to scaling, stored with coprime integer entries
/// and positive first nonzero entry. Acts on column vectors.
class LinMap {
 public:
  LinMap();  // identity
  explicit LinMap(const Matrix3& m);
  static LinMap identity() { return LinMap(); }
  /// Matrix whose columns are the given points.
  static LinMap from_columns(const Point3& c0, const Point3& c1, const Point3& c2);
  static LinMap diagonal(const Rational& a, const Rational& b, const Rational& c);
  /// Coordinate swap tau_ij (1-based indices).
  static LinMap swap(int i, int j);

  const Matrix3& matrix() const { return m_; }
  const Rational& at(int r, int c) const { return m_[r][c]; }
  Point3 apply(const Point3& p) const;
  ProjPoint apply(const ProjPoint& p) const;
  LinMap inverse() const;
  bool is_identity() const { return *this == LinMap(); }
  /// Each row and column has exactly one nonzero entry.
  bool is_monomial() const;
  /// The three components as linear forms.
  Triple components() const;
  std::string str() const;

  friend LinMap operator*(const LinMap& a, const LinMap& b);
  friend bool operator==(const LinMap& a, const LinMap& b) { return a.m_ == b.m_; }
  friend bool operator!=(const LinMap& a, const LinMap& b) { return !(a == b); }
  friend bool operator<(const LinMap& a, const LinMap& b) { return a.m_ < b.m_; }

 private:
  Matrix3 m_;
};

/// Element delta * alpha of the monomial subgroup: output coordinate i equals
/// diag[i] times input coordinate perm[i].
class TorusPermElement {
 public:
  TorusPermElement(std::array<int, 3> perm, std::array<Rational, 3> diag);
  static TorusPermElement from_linmap(const LinMap& m);  // throws NotTorusPerm

  const std::array<int, 3>& perm() const { return perm_; }
  const std::array<Rational, 3>& diag() const { return diag_; }
  LinMap to_linmap() const;
  friend bool operator==(const TorusPermElement& a, const TorusPermElement& b) {
    return a.to_linmap() == b.to_linmap();
  }

 private:
  std::array<int, 3> perm_;
  std::array<Rational, 3> diag_;
};

/// Inverts the diagonal part and keeps the permutation.
TorusPermElement iota(const TorusPermElement& t);

}  // namespace cremona
