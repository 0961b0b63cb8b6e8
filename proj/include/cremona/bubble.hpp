#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "cremona/birmap.hpp"

namespace cremona {

constexpr int kMaxTowerHeight = 2;

/// A proper point of P^2 or a point infinitely near it. Level 1 of the tower
/// is the tangent direction [ds:dt] in the chart coordinates (s, t) at the
/// base; each following level is a point of the previous exceptional curve,
/// written as a direction in the chart coordinates (u, v) of that blow-up,
/// where u = 0 is the exceptional curve.
struct BubblePoint {
  ProjPoint base;
  std::vector<P1Point> tower;

  BubblePoint() = default;
  BubblePoint(ProjPoint b, std::vector<P1Point> t = {}) : base(std::move(b)), tower(std::move(t)) {}

  int height() const { return static_cast<int>(tower.size()); }
  bool proper() const { return tower.empty(); }
  BubblePoint parent() const;
  /// True when this point lies over (or equals) q.
  bool above(const BubblePoint& q) const;
  std::string str() const;

  friend bool operator==(const BubblePoint& a, const BubblePoint& b) {
    return a.base == b.base && a.tower == b.tower;
  }
  friend bool operator!=(const BubblePoint& a, const BubblePoint& b) { return !(a == b); }
  friend bool operator<(const BubblePoint& a, const BubblePoint& b);
};

using WeightedPoint = std::pair<BubblePoint, int>;

/// Degree together with base points and their (positive) multiplicities,
/// kept sorted by BubblePoint order.
struct LinearSystem {
  int degree = 1;
  std::vector<WeightedPoint> base;

  LinearSystem() = default;
  LinearSystem(int d, std::vector<WeightedPoint> b);
  int multiplicity(const BubblePoint& p) const;
  std::string str() const;
  friend bool operator==(const LinearSystem& a, const LinearSystem& b) {
    return a.degree == b.degree && a.base == b.base;
  }
};

/// Base points of a quadratic map and of its inverse, paired so that the
/// pencil of conics through source[j] corresponds to lines through target[j].
struct ConsistentBasepoints {
  int i = 3;  // index of the standard involution sigma_i in a factorisation
  std::array<BubblePoint, 3> source;
  std::array<BubblePoint, 3> target;
};

ConsistentBasepoints basepoints_quadratic(const BirMap& f);
BubblePoint fbullet(const BirMap& f, const BubblePoint& p);
LinearSystem image_system(const BirMap& f, const LinearSystem& delta);
bool is_dejonquieres_system(const LinearSystem& delta);
/// Image of the system of lines under the product of the letters, the
/// rightmost letter acting first.
LinearSystem system_of_word(const std::vector<BirMap>& letters);

/// Base points, with multiplicities, of the linear system spanned by the
/// given members of a common degree. Towers deeper than max_height raise
/// TowerTooDeep; irrational points raise IrrationalBasePoints.
std::vector<WeightedPoint> base_points(const std::vector<HomPoly>& members,
                                       int max_height = kMaxTowerHeight);
/// Multiplicity at p of the system spanned by the members.
int multiplicity_at(const std::vector<HomPoly>& members, const BubblePoint& p);
/// Proper points of P^2 where every member vanishes.
std::vector<ProjPoint> common_zeros(const std::vector<HomPoly>& members);

}  // namespace cremona
