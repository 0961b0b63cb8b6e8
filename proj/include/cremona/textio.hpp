#pragma once

#include <string>
#include <string_view>

#include "cremona/birmap.hpp"
#include "cremona/bubble.hpp"

namespace cremona {

std::string to_string(const Rational& r);
std::string to_string(const HomPoly& p);
std::string to_string(const BirMap& f);  // "[P1 : P2 : P3]"
std::string to_string(const FactorWord& w);

/// Polynomial such as "-x*y + z^2" or "1/2*x^2 - (y + z)*x".
HomPoly parse_poly(std::string_view s);
ProjPoint parse_point(std::string_view s);
P1Point parse_p1(std::string_view s);
/// "[P1 : P2 : P3]", "lin(a,b,c;d,e,f;g,h,i)" or one of
/// sigma1 sigma2 sigma3 tau12 tau13 tau23 id.
BirMap parse_map(std::string_view s);
LinMap parse_lin(std::string_view s);
/// "[1:0:0] ^ [0:1] ^ [1:1]".
BubblePoint parse_bubble(std::string_view s);
/// "deg=3; ([1:0:0], 2); ([0:1:0], 1)".
LinearSystem parse_system(std::string_view s);

std::string trim(std::string_view s);

}  // namespace cremona
