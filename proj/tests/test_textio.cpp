#include "doctest.h"

#include "cremona/error.hpp"
#include "cremona/sampling.hpp"
#include "cremona/textio.hpp"
#include "cremona/wordio.hpp"

using namespace cremona;

namespace {
template <class F>
std::string parse_error(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError) return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("polynomial grammar") {
  CHECK(to_string(parse_poly("-x*y + z^2")) == "-x*y + z^2");
  CHECK(parse_poly("1/2*x^2 - (y + z)*x") == parse_poly("1/2*x^2 - x*y - x*z"));
  CHECK(parse_poly("(x+y)^2") == parse_poly("x^2 + 2*x*y + y^2"));
  CHECK(parse_poly("3") == HomPoly::constant(3));
  CHECK_FALSE(parse_error([] { parse_poly("x + y^2"); }).empty());
  CHECK_FALSE(parse_error([] { parse_poly("x + w"); }).empty());
  CHECK_FALSE(parse_error([] { parse_poly("x +"); }).empty());
}

TEST_CASE("point grammars") {
  CHECK(parse_point("[2:4:-6]") == ProjPoint(1, 2, -3));
  CHECK(parse_point("[1/2 : 0 : 1]").str() == "[1:0:2]");
  CHECK(parse_p1("[0:3]") == P1Point(0, 1));
  BubblePoint b = parse_bubble("[1:0:0] ^ [0:1] ^ [1:1]");
  CHECK(b.height() == 2);
  CHECK(b.str() == "[1:0:0] ^ [0:1] ^ [1:1]");
  CHECK_THROWS_AS(parse_point("[0:0:0]"), Error);
  CHECK_FALSE(parse_error([] { parse_point("[1:2]"); }).empty());
}

TEST_CASE("map grammar") {
  CHECK(to_string(parse_map("sigma3")) == "[y*z : x*z : x*y]");
  CHECK(parse_map("tau23") == make_tau(2, 3));
  CHECK(parse_map("id").is_identity());
  CHECK(parse_map("lin(0,1,0;1,0,0;0,0,1)") == make_tau(1, 2));
  CHECK(parse_map("[2*y*z : 2*x*z : 2*x*y]") == make_sigma(3));
  CHECK(parse_lin("lin(2,0,0;0,2,0;0,0,2)").is_identity());
  CHECK_FALSE(parse_error([] { parse_map("sigma4"); }).empty());
  CHECK_FALSE(parse_error([] { parse_map("[x : y]"); }).empty());
  CHECK_FALSE(parse_error([] { parse_lin("lin(1,0,0;0,1,0)"); }).empty());
}

TEST_CASE("linear system grammar") {
  LinearSystem s = parse_system("deg=3; ([1:0:0], 2); ([0:1:0], 1); ([0:1:1], 1); ([1:1:1], 1); ([1:2:3], 1)");
  CHECK(s.degree == 3);
  CHECK(s.multiplicity(BubblePoint(ProjPoint(1, 0, 0))) == 2);
  CHECK(is_dejonquieres_system(s));
  CHECK(parse_system(s.str()) == s);
  CHECK(parse_system("deg=1") == LinearSystem());
}

TEST_CASE("word files") {
  Word w = parse_word("# the fixed relator\nP2 tau13\nF0 sigma3   # comment\n\nP2 tau13\nF0 sigma3\n");
  REQUIRE(w.size() == 4);
  CHECK(w[1].tag == GroupTag::F0);
  CHECK(parse_word(format_word(w)) == w);

  std::string bad_tag = parse_error([] { parse_word("P2 id\nF7 sigma3\n"); });
  CHECK(bad_tag.find("line 2") != std::string::npos);
  std::string missing = parse_error([] { parse_word("sigma3\n"); });
  CHECK(missing.find("line 1") != std::string::npos);
  try {
    parse_word("F2 sigma3\n");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidLetter);
  }
}

TEST_CASE("property: print then parse is the identity") {
  Rng rng(61);
  for (int k = 0; k < 100; ++k) {
    BirMap f = random_quadratic(rng, 1 + k % 3);
    CHECK(parse_map(to_string(f)) == f);
    LinMap a = random_linmap(rng);
    CHECK(parse_lin(a.str()) == a);
    ProjPoint p(rng.uniform(-50, 50), rng.uniform(-50, 50), rng.nonzero(50));
    CHECK(parse_point(p.str()) == p);
    CHECK(to_string(parse_poly(to_string(f.components()[0]))) == to_string(f.components()[0]));
    BubblePoint b(p, {P1Point(rng.uniform(-5, 5), rng.nonzero(5))});
    CHECK(parse_bubble(b.str()) == b);
  }
}

TEST_CASE("property: parsing canonicalises") {
  Rng rng(62);
  for (int k = 0; k < 50; ++k) {
    long s = rng.nonzero(9);
    std::string scaled = "[" + std::to_string(s) + "*y*z : " + std::to_string(s) + "*x*z : " +
                         std::to_string(s) + "*x*y]";
    CHECK(to_string(parse_map(scaled)) == "[y*z : x*z : x*y]");
  }
}
