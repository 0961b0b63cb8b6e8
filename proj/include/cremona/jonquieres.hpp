#pragma once

#include <array>
#include <string>
#include <vector>

#include "cremona/birmap.hpp"
#include "cremona/bubble.hpp"

namespace cremona {

enum class GroupTag { P2, F0, F2 };
std::string_view tag_name(GroupTag t);

/// f = beta o sigma_i o alpha.
struct QuadraticFactorization {
  LinMap beta;
  int i = 3;
  LinMap alpha;
};

/// The four normal forms of a quadratic de Jonquieres map.
enum class DJKind { Sigma1, Sigma2, Tau12Sigma2Tau12, Sigma3 };
std::string_view dj_kind_name(DJKind k);
BirMap dj_kind_map(DJKind k);

/// f = alpha2 o tau o alpha1 with alpha1, alpha2 fixing [1:0:0].
struct DJFactorization {
  LinMap alpha2;
  DJKind kind = DJKind::Sigma3;
  LinMap alpha1;
  BirMap tau() const { return dj_kind_map(kind); }
};

struct Classification {
  bool p2 = false, f0 = false, f2 = false, dejonquieres = false;
  bool contains(GroupTag t) const;
  std::string str() const;  // e.g. "F2, deJonquieres"
};

bool is_dejonquieres(const BirMap& f);
QuadraticFactorization factor_quadratic(const BirMap& f);
DJFactorization factor_quadratic_dJ(const BirMap& f);
Classification classify_subgroups(const BirMap& f);
/// Quadratic and linear de Jonquieres maps whose product (leftmost
/// outermost) is f; the leftmost entry is linear.
std::vector<BirMap> decompose_dejonquieres(const BirMap& f);

/// Standard base points of sigma_i in the order used for consistent pairing.
std::array<BubblePoint, 3> sigma_basepoints(int i);
/// Linear alpha with alpha.(pts[j]) = sigma_basepoints(i)[j]; the points
/// must be given in the roles of sigma_i's base points.
LinMap align_to_sigma(int i, const std::array<BubblePoint, 3>& pts);
/// Quadratic map with the given three base points (in sigma roles), built as
/// the conjugate of sigma_i by the aligning linear map.
BirMap quadratic_with_basepoints(int i, const std::array<BubblePoint, 3>& pts);
/// Orders three base points into sigma roles and returns i. Throws
/// NotBirational when the points do not form a quadratic configuration.
int sigma_roles(std::array<BubblePoint, 3>& pts);

/// Linear maps belonging to the subgroups, on the P^2 side.
bool linear_in_F0(const LinMap& m);
bool linear_in_F2(const LinMap& m);
bool linear_is_dejonquieres(const LinMap& m);

}  // namespace cremona
