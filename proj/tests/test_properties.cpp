// Cross-module properties on random words.

#include "doctest.h"

#include "cremona/amalgam.hpp"
#include "cremona/error.hpp"
#include "oracle/oracles.hpp"

using namespace cremona;

namespace {
Word random_dj_word(Rng& rng, int len) {
  Word w;
  for (int j = 0; j < len; ++j) w.push_back(random_letter(rng, static_cast<GroupTag>(rng.uniform(0, 2)), true));
  return w;
}
}  // namespace

TEST_CASE("property: normalization keeps pi and produces alternating words") {
  Rng rng(71);
  for (int k = 0; k < 40; ++k) {
    Word w = random_dj_word(rng, 1 + k % 5);
    RewriteTrace t;
    t.initial = w;
    Word n = normalize_alternating(w, &t);
    CHECK(pi(n) == pi(w));
    REQUIRE(n.size() % 2 == 1);
    for (std::size_t j = 0; j < n.size(); ++j) CHECK(n[j].is_linear() == (j % 2 == 0));
    CHECK(replay_trace(t).empty());
    CHECK(normalize_alternating(n) == n);
  }
}

TEST_CASE("property: torus moves keep pi") {
  Rng rng(72);
  Letter s3(make_sigma(3), GroupTag::F0);
  for (int k = 0; k < 60; ++k) {
    LinMap t = random_torus(rng);
    if (k % 3 == 1) t = t * LinMap::swap(1, 2);
    if (k % 3 == 2) t = LinMap::swap(2, 3) * t;
    Word w{Letter::linear(t), s3};
    Word out = rw_torus_commute(w, 0, TorusDirection::Forward);
    CHECK(pi(out) == pi(w));
    Word back = rw_torus_commute(out, 0, TorusDirection::Backward);
    CHECK(back == w);
  }
}

TEST_CASE("property: collapses of de Jonquieres triples stay in J") {
  Rng rng(73);
  int quadratic = 0;
  for (int k = 0; k < 80; ++k) {
    // f = b s a and h = a^-1 s c inside one group, g = a^-1 e a, so that
    // f g h = b s e s c lies in the group again and has degree at most 2.
    bool f2 = k % 2 == 1;
    auto lin = [&] { return f2 ? random_F2_linmap(rng) : random_F0_dj_linmap(rng); };
    BirMap s = make_sigma(f2 ? 1 : 3);
    LinMap a = lin(), b = lin(), c = lin(), e = lin();
    GroupTag tag = f2 ? GroupTag::F2 : GroupTag::F0;
    Letter f(compose({BirMap::linear(b), s, BirMap::linear(a)}), tag);
    Letter h(compose({BirMap::linear(a.inverse()), s, BirMap::linear(c)}), tag);
    Letter g = Letter::linear(a.inverse() * e * a);
    Word out = rw_collapse_deg_le2({f, g, h}, 0);
    CHECK(pi(out) == pi({f, g, h}));
    for (const auto& l : out) CHECK(is_dejonquieres(l.map));
    if (out.size() == 3) {
      CHECK(out[0].is_linear());
      CHECK(out[1].map.degree() == 2);
      CHECK(out[2].is_linear());
      ++quadratic;
    } else {
      CHECK(out.size() == 1);
    }
  }
  CHECK(quadratic > 20);
}

TEST_CASE("property: prefix systems of identity words are de Jonquieres") {
  for (int k = 0; k < 10; ++k) {
    Word w = normalize_alternating(oracle::identity_word_case(k));
    for (const auto& s : prefix_systems(w)) CHECK(is_dejonquieres_system(s));
  }
}

TEST_CASE("property: pi is a homomorphism on concatenation") {
  Rng rng(74);
  for (int k = 0; k < 30; ++k) {
    Word a = random_dj_word(rng, 1 + k % 3), b = random_dj_word(rng, 1 + (k / 3) % 3);
    Word ab = a;
    ab.insert(ab.end(), b.begin(), b.end());
    CHECK(pi(ab) == compose(pi(a), pi(b)));
    CHECK(oracle::agree_at_points(oracle::components_of(ab), {pi(ab).components()}, k));
  }
}
