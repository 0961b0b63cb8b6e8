#include "doctest.h"

#include <algorithm>

#include "cremona/amalgam.hpp"
#include "cremona/error.hpp"
#include "cremona/textio.hpp"
#include "oracle/oracles.hpp"

using namespace cremona;

namespace {

const ProjPoint e1(1, 0, 0), e2(0, 1, 0), e3(0, 0, 1);

Letter F0(const BirMap& m) { return Letter(m, GroupTag::F0); }
Letter F2(const BirMap& m) { return Letter(m, GroupTag::F2); }
Letter P2(const char* lin) { return Letter::linear(parse_lin(lin)); }
Letter Id() { return Letter::linear(LinMap()); }

template <class F>
ErrorKind error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InvariantViolation;
}

std::vector<BirMap> maps_of(const Word& w, std::size_t from = 0) {
  std::vector<BirMap> out;
  for (std::size_t k = from; k < w.size(); ++k) out.push_back(w[k].map);
  return out;
}

// The word after each step of a trace, replayed with the documented step
// semantics.
std::vector<Word> words_along(const RewriteTrace& t) {
  std::vector<Word> out{t.initial};
  Word w = t.initial;
  for (const auto& s : t.steps) {
    if (s.rule == "rotate") {
      Word front(w.end() - static_cast<long>(s.removed.size()), w.end());
      w.erase(w.end() - static_cast<long>(s.removed.size()), w.end());
      w.insert(w.begin(), front.begin(), front.end());
    } else {
      w.erase(w.begin() + static_cast<long>(s.pos),
              w.begin() + static_cast<long>(s.pos + s.removed.size()));
      w.insert(w.begin() + static_cast<long>(s.pos), s.inserted.begin(), s.inserted.end());
    }
    out.push_back(w);
  }
  return out;
}

}  // namespace

TEST_CASE("letters check their tag") {
  CHECK_NOTHROW(F2(make_sigma(1)));
  CHECK_NOTHROW(F0(make_sigma(3)));
  CHECK(error_of([] { F0(make_sigma(1)); }) == ErrorKind::InvalidLetter);
  CHECK(error_of([] { Letter(make_sigma(3), GroupTag::P2); }) == ErrorKind::InvalidLetter);
  BirMap quartic = compose({make_sigma(3), BirMap::linear(parse_lin("lin(1,1,1;1,2,3;1,4,9)")), make_sigma(3)});
  CHECK(error_of([&] { F0(quartic); }) == ErrorKind::InvalidLetter);
  CHECK(F0(make_sigma(3)).str() == "F0 [y*z : x*z : x*y]");
}

TEST_CASE("pi examples") {
  Letter t12 = Letter::linear(LinMap::swap(1, 2)), t13 = Letter::linear(LinMap::swap(1, 3));
  CHECK(pi({t12, F0(make_sigma(2)), t12, F0(make_sigma(2))}) == make_sigma(3));
  CHECK(pi({t13, F0(make_sigma(3)), t13, F0(make_sigma(3))}).is_identity());
  CHECK(pi({}).is_identity());
}

TEST_CASE("normalize_alternating examples") {
  Word w = normalize_alternating({F0(make_sigma(3)), F0(make_sigma(3))});
  REQUIRE(w.size() == 5);
  CHECK(w[0] == Id());
  CHECK(w[1] == F0(make_sigma(3)));
  CHECK(w[2] == Id());
  CHECK(w[4] == Id());

  Word merged = normalize_alternating({Letter::linear(LinMap::swap(1, 2)), Letter::linear(LinMap::swap(1, 3))});
  REQUIRE(merged.size() == 1);
  CHECK(merged[0].map == compose(make_tau(1, 2), make_tau(1, 3)));

  Word abc{P2("lin(1,2,0;0,1,0;0,0,1)"), F0(make_sigma(2)), P2("lin(1,0,0;0,1,3;0,0,1)")};
  CHECK(normalize_alternating(abc) == abc);

  RewriteTrace t;
  t.initial = {F0(make_sigma(3)), F0(make_sigma(3))};
  normalize_alternating(t.initial, &t);
  CHECK_FALSE(t.steps.empty());
  CHECK(replay_trace(t).empty());
}

TEST_CASE("rw_torus_commute examples") {
  Letter s3 = F0(make_sigma(3));
  Letter d = Letter::linear(LinMap::diagonal(2, 3, 5));
  Word out = rw_torus_commute({d, s3}, 0, TorusDirection::Forward);
  CHECK(out[0] == s3);
  CHECK(out[1].map.as_linear() == LinMap::diagonal(Rational(1, 2), Rational(1, 3), Rational(1, 5)));

  Letter t12 = Letter::linear(LinMap::swap(1, 2));
  CHECK(rw_torus_commute({t12, s3}, 0, TorusDirection::Forward) == Word{s3, t12});
  CHECK(rw_torus_commute({Id(), s3}, 0, TorusDirection::Forward) == Word{s3, Id()});
  CHECK(rw_torus_commute({s3, d}, 0, TorusDirection::Backward)[1] == s3);

  CHECK(error_of([&] { rw_torus_commute({P2("lin(1,1,0;0,1,0;0,0,1)"), s3}, 0, TorusDirection::Forward); }) ==
        ErrorKind::NotTorusPerm);
  CHECK(error_of([&] { rw_torus_commute({d, F0(make_sigma(2))}, 0, TorusDirection::Forward); }) ==
        ErrorKind::NotSigma3Adjacent);
}

TEST_CASE("rw_collapse_deg_le2 examples") {
  Letter s3 = F0(make_sigma(3)), s2 = F0(make_sigma(2));
  Word a = rw_collapse_deg_le2({s3, Letter::linear(LinMap::swap(1, 3)), s3}, 0);
  REQUIRE(a.size() == 1);
  CHECK(a[0].map == make_tau(1, 3));

  // Fixes [1:0:0] and [0:1:0] and moves [0:0:1].
  Letter alpha = P2("lin(1,0,1;0,1,0;0,0,1)");
  Word b = rw_collapse_deg_le2({s3, alpha, s3}, 0);
  REQUIRE(b.size() == 3);
  CHECK(b[0].is_linear());
  CHECK(b[1].map.degree() == 2);
  CHECK(b[2].is_linear());
  CHECK(pi(b) == pi({s3, alpha, s3}));
  for (const auto& l : b) CHECK(is_dejonquieres(l.map));

  Word c = rw_collapse_deg_le2({s2, Id(), s2}, 0);
  REQUIRE(c.size() == 1);
  CHECK(c[0].map.is_identity());

  Letter generic = P2("lin(1,1,1;1,2,3;1,4,9)");
  CHECK(error_of([&] { rw_collapse_deg_le2({s3, generic, s3}, 0); }) == ErrorKind::DegreeTooHigh);
  CHECK(error_of([&] { rw_collapse_deg_le2({s3, s3, s3}, 0); }) == ErrorKind::PatternMismatch);
  CHECK(error_of([&] { rw_collapse_deg_le2({generic, Id(), s3}, 0); }) == ErrorKind::PatternMismatch);
}

TEST_CASE("rw_square_dJ builds the square product and moves base points") {
  Letter f = F0(make_sigma(2));
  LinMap a1 = parse_lin("lin(1,1,2;0,1,1;0,1,2)");
  LinMap a2 = parse_lin("lin(1,2,1;0,3,1;0,1,1)");
  ProjPoint q2 = a2.apply(e2), q3 = a2.apply(e3);
  LinMap a3 = LinMap::from_columns(e1.coords(), apply(f.map, q2).coords(), apply(f.map, q3).coords()).inverse();
  LinMap a4 = parse_lin("lin(1,0,3;0,2,1;0,1,1)");
  auto out = rw_square_dJ(f, {a1, a2, a3, a4});
  CHECK(out[0].is_linear());
  CHECK(out[2].is_linear());
  CHECK(out[1].map.degree() == 2);
  BirMap s3 = make_sigma(3);
  BirMap lhs = compose({BirMap::linear(a4), s3, BirMap::linear(a3), f.map, BirMap::linear(a2), s3,
                        BirMap::linear(a1)});
  CHECK(pi({out[0], out[1], out[2]}) == lhs);

  BirMap tau1inv = inverse(compose({BirMap::linear(a2), s3, BirMap::linear(a1)}));
  auto bp = basepoints_quadratic(lhs).source;
  for (const auto& p : basepoints_quadratic(f.map).source) {
    if (p == BubblePoint(e1)) continue;
    BubblePoint moved = fbullet(tau1inv, p);
    CHECK(std::find(bp.begin(), bp.end(), moved) != bp.end());
  }

  // With a2 = id the point q2 = [0:1:0] is a base point of sigma2.
  CHECK(error_of([&] { rw_square_dJ(f, {a1, LinMap(), a3, a4}); }) == ErrorKind::HypothesisViolation);
  CHECK(error_of([&] { rw_square_dJ(f, {a1, a2, LinMap(), a4}); }) == ErrorKind::HypothesisViolation);
}

TEST_CASE("complexity examples") {
  Letter s3 = F0(make_sigma(3));
  CHECK(complexity({Id(), s3, Id(), s3, Id()}) == ComplexityPair{2, 2});
  CHECK(complexity({P2("lin(1,2,0;0,1,0;0,0,1)")}) == ComplexityPair{1, 1});
  Letter a = P2("lin(1,1,2;0,1,1;0,1,2)");
  Word three{Id(), F0(make_sigma(2)), a, s3, a, F0(make_sigma(2)), Id()};
  ComplexityPair c = complexity(three);
  CHECK(c.D == 3);
  CHECK(c.N == 3);
  CHECK(ComplexityPair{2, 5} < ComplexityPair{3, 1});
  CHECK(ComplexityPair{3, 1} < ComplexityPair{3, 2});
}

TEST_CASE("reduce_identity_word examples") {
  Letter s3 = F0(make_sigma(3));
  RewriteTrace t = reduce_identity_word({s3, s3});
  CHECK(t.final_word().empty());
  CHECK(t.rounds == 1);
  CHECK(replay_trace(t).empty());

  Letter t13 = Letter::linear(LinMap::swap(1, 3));
  RewriteTrace r = reduce_identity_word({t13, s3, t13, s3});
  CHECK(r.final_word().empty());
  CHECK(replay_trace(r).empty());
  CHECK(oracle::replay_by_evaluation(r, 5).empty());

  CHECK(error_of([&] { reduce_identity_word({s3}); }) == ErrorKind::NotIdentity);
  // tau13 is not de Jonquieres, so a degree-3 step cannot be taken.
  Letter generic = P2("lin(1,1,1;1,2,3;1,4,9)");
  Word nondj{t13, s3, generic, s3, t13};
  Word inv = nondj;
  std::reverse(inv.begin(), inv.end());
  for (auto& l : inv) l = Letter(inverse(l.map), l.tag);
  Word both = nondj;
  both.insert(both.end(), inv.begin(), inv.end());
  ErrorKind k = error_of([&] { reduce_identity_word(both); });
  bool ok = k == ErrorKind::NotDeJonquieres || k == ErrorKind::InvariantViolation;
  CHECK(ok);
}

TEST_CASE("trace output format") {
  Letter s3 = F0(make_sigma(3));
  RewriteTrace t = reduce_identity_word({s3, s3});
  std::string s = t.str();
  CHECK(s.find("step 1: ") == 0);
  CHECK(s.find("| pi-check OK") != std::string::npos);
}

TEST_CASE("replay rejects a tampered trace") {
  Letter s3 = F0(make_sigma(3));
  RewriteTrace t = reduce_identity_word({s3, Letter::linear(LinMap::swap(1, 2)), s3,
                                         Letter::linear(LinMap::swap(1, 2))});
  REQUIRE(replay_trace(t).empty());
  REQUIRE_FALSE(t.steps.empty());
  RewriteTrace bad = t;
  for (auto& st : bad.steps)
    if (!st.inserted.empty()) {
      st.inserted[0] = Letter::linear(LinMap::diagonal(1, 2, 3));
      break;
    }
  CHECK_FALSE(replay_trace(bad).empty());
  CHECK_FALSE(oracle::replay_by_evaluation(bad, 9).empty());
}

TEST_CASE("verify_presentation small run") {
  PresentationReport rep = verify_presentation(20, 1);
  CHECK(rep.ok());
  CHECK(rep.families.size() >= 6);
  CHECK(rep.str().find("fixed relator") != std::string::npos);
}

TEST_CASE("property: identity words reduce with certified traces") {
  std::map<std::string, int> rules;
  for (int k = 0; k < 12; ++k) {
    Word w = oracle::identity_word_case(k);
    CHECK(pi(w).is_identity());
    RewriteTrace t = reduce_identity_word(w, {static_cast<std::uint64_t>(k)});
    CHECK(t.final_word().empty());
    CHECK(replay_trace(t).empty());
    CHECK(oracle::replay_by_evaluation(t, 100 + k).empty());
    for (std::size_t r = 1; r < t.complexities.size(); ++r)
      CHECK(t.complexities[r] < t.complexities[r - 1]);
    for (const auto& s : t.steps) {
      rules[s.rule]++;
      CHECK(s.pi_before == s.pi_after);
    }
  }
  CHECK(rules["collapse"] > 0);
  CHECK(rules["square-dJ"] + rules["deg3-proper"] > 0);
}

TEST_CASE("property: reduction is a function of the seed") {
  Word w = oracle::identity_word_case(4);
  CHECK(reduce_identity_word(w, {7}).str() == reduce_identity_word(w, {7}).str());
}

TEST_CASE("property: deg3-proper rewrites keep partial systems below the peak") {
  int seen = 0;
  for (int k = 0; k < 30 && seen < 4; ++k) {
    RewriteTrace t = reduce_identity_word(oracle::identity_word_case(k), {static_cast<std::uint64_t>(k)});
    auto words = words_along(t);
    for (std::size_t j = 0; j < t.steps.size(); ++j) {
      const TraceStep& s = t.steps[j];
      if (s.rule != "deg3-proper") continue;
      const Word& before = words[j];
      REQUIRE(s.removed.size() == 3);
      LinearSystem delta = system_of_word(maps_of(before, s.pos + 3));
      Deg3Result r = rw_deg3_proper(s.removed[0], s.removed[1], s.removed[2], delta);
      CHECK(pi(r.letters) == pi(s.removed));
      CHECK((r.raw_letter_count == 6 || r.raw_letter_count == 9));
      CHECK((r.auxiliary_maps == 1 || r.auxiliary_maps == 2));
      int peak = image_system(compose(s.removed[1].map, s.removed[2].map), delta).degree;
      LinearSystem partial = delta;
      for (auto it = r.letters.rbegin(); it != r.letters.rend(); ++it) {
        partial = image_system(it->map, partial);
        CHECK(partial.degree < peak);
      }
      for (const auto& l : r.letters) CHECK(is_dejonquieres(l.map));
      ++seen;
    }
  }
  CHECK(seen > 0);
}

TEST_CASE("random letters belong to their groups") {
  Rng rng(51);
  for (int k = 0; k < 60; ++k) {
    GroupTag tag = static_cast<GroupTag>(k % 3);
    Letter l = random_letter(rng, tag, true);
    CHECK(classify_subgroups(l.map).contains(tag));
    CHECK(is_dejonquieres(l.map));
  }
  CHECK(tag_of_sigma(1) == GroupTag::F2);
  CHECK(tag_of_sigma(3) == GroupTag::F0);
  CHECK(tag_of_kind(DJKind::Sigma1) == GroupTag::F2);
  CHECK(dejonquieres_letters(make_sigma(2)).size() == 3);
}
