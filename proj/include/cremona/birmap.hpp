#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cremona/projective.hpp"

namespace cremona {

/// The standard quadratic involutions sigma_1, sigma_2, sigma_3.
enum class Quadric { Sigma1 = 1, Sigma2 = 2, Sigma3 = 3 };

/// One entry of a factor word: a linear map or a standard involution.
using FactorEntry = std::variant<LinMap, Quadric>;
using FactorWord = std::vector<FactorEntry>;

Triple sigma_components(Quadric q);

/// Plane birational map stored as a coprime triple of homogeneous polynomials
/// of equal degree, optionally with a word whose product is the map. Words are
/// read left to right with the leftmost entry applied last.
class BirMap {
 public:
  BirMap();  // identity with the empty factor word

  /// Raw triple; common factors are cancelled.
  static BirMap from_components(const Triple& f);
  static BirMap from_word(const FactorWord& w);
  /// Triple together with a word; throws InvariantViolation if they differ.
  static BirMap with_word(const Triple& f, const FactorWord& w);
  static BirMap linear(const LinMap& m);
  static BirMap sigma(int i);
  static BirMap tau(int i, int j);

  const Triple& components() const { return f_; }
  const std::optional<FactorWord>& factor_word() const { return word_; }
  int degree() const { return f_[0].degree(); }
  bool is_linear() const { return degree() == 1; }
  bool is_identity() const;
  LinMap as_linear() const;  // throws NotLinear
  Point3 apply(const Point3& p) const;
  ProjPoint apply(const ProjPoint& p) const;  // throws IndeterminacyPoint

  friend bool operator==(const BirMap& a, const BirMap& b) { return a.f_ == b.f_; }
  friend bool operator!=(const BirMap& a, const BirMap& b) { return !(a == b); }

 private:
  friend BirMap compose(const BirMap& f, const BirMap& g);
  Triple f_;
  std::optional<FactorWord> word_;
};

/// f o g; the factor word is kept when both inputs carry one.
BirMap compose(const BirMap& f, const BirMap& g);
BirMap compose(const std::vector<BirMap>& maps);  // leftmost outermost
/// Substitution followed by cancellation of common factors.
Triple compose_components(const Triple& f, const Triple& g);
BirMap inverse(const BirMap& f);
FactorWord inverse_word(const FactorWord& w);

int degree(const BirMap& f);
bool is_linear(const BirMap& f);
LinMap as_linear(const BirMap& f);
ProjPoint apply(const BirMap& f, const ProjPoint& p);

BirMap make_sigma(int i);
BirMap make_tau(int i, int j);

}  // namespace cremona
