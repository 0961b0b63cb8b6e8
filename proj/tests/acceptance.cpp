// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>

#include "cremona/amalgam.hpp"
#include "cremona/error.hpp"
#include "cremona/textio.hpp"
#include "oracle/oracles.hpp"

using namespace cremona;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(static_cast<int>(limit_s)) + " s budget)";
  }
  if (!o.pass) ++failures;
  std::printf("criterion %2d: %s  %s: %s [%.2f s]\n", id, o.pass ? "PASS" : "FAIL", title,
              o.detail.c_str(), secs);
  std::fflush(stdout);
}

std::string counts(int ok, int total) { return std::to_string(ok) + "/" + std::to_string(total); }

const ProjPoint kE1(1, 0, 0);

// Quadratic de Jonquieres map through [1:0:0], a and b, when they allow one.
std::optional<BirMap> dj_through(const BubblePoint& a, const BubblePoint& b) {
  std::array<BubblePoint, 3> pts{BubblePoint(kE1), a, b};
  try {
    int i = sigma_roles(pts);
    BirMap f = quadratic_with_basepoints(i, pts);
    if (is_dejonquieres(f)) return f;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotBirational) throw;
  }
  return std::nullopt;
}

BubblePoint random_proper(Rng& rng) {
  for (;;) {
    ProjPoint p(rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9) + 20);
    if (p != kE1) return BubblePoint(p);
  }
}

}  // namespace

int main() {
  run(1, "sigma_i o sigma_i = id", 1.0, [] {
    int ok = 0;
    for (int i = 1; i <= 3; ++i) {
      BirMap s = BirMap::sigma(i);
      BirMap sq = BirMap::from_components(compose_components(s.components(), s.components()));
      ok += sq.is_identity() && compose(s, s).is_identity();
    }
    return Outcome{ok == 3, counts(ok, 3) + " involutions"};
  });

  run(2, "tau12 sigma2 tau12 sigma2 = sigma3", 1.0, [] {
    BirMap t = BirMap::tau(1, 2), s2 = BirMap::sigma(2);
    BirMap p = compose({t, s2, t, s2});
    return Outcome{p == BirMap::sigma(3), "product " + to_string(p)};
  });

  run(3, "relator suite with 500 samples per family", 30.0, [] {
    PresentationReport rep = verify_presentation(500, 3);
    std::string d;
    for (const auto& f : rep.families) d += f.name + " " + counts(f.passed, f.total) + "; ";
    return Outcome{rep.ok() && rep.families.size() >= 6, d};
  });

  run(4, "image degree formula matches substitution", 120.0, [] {
    Rng rng(4);
    int ok = 0, total = 200, redrawn = 0;
    std::map<int, int> eps_seen;
    for (int k = 0; k < total; ++k) {
     for (;;) {
      int i = 1 + k % 3;
      BirMap f = random_quadratic(rng, i);
      std::vector<HomPoly> span;
      switch (k / 3 % 4) {
        case 0:
          span = {HomPoly::var(0), HomPoly::var(1), HomPoly::var(2)};
          break;
        case 1: {
          auto c = f.components();
          span.assign(c.begin(), c.end());
          break;
        }
        case 2: {
          auto c = random_quadratic(rng, 1 + static_cast<int>(rng.uniform(0, 2))).components();
          span.assign(c.begin(), c.end());
          break;
        }
        default: {
          // Conics through two base points of f and one further point.
          ConsistentBasepoints cb = basepoints_quadratic(f);
          std::array<BubblePoint, 3> pts{cb.source[0], cb.source[1], random_proper(rng)};
          if (i != 3) pts = {cb.source[0], random_proper(rng), random_proper(rng)};
          try {
            int j = sigma_roles(pts);
            auto c = inverse(quadratic_with_basepoints(j, pts)).components();
            span.assign(c.begin(), c.end());
          } catch (const Error&) {
            span = {HomPoly::var(0), HomPoly::var(1), HomPoly::var(2)};
          }
        }
      }
      auto members = oracle::generic_members(span, 100 + k);
      int formula;
      LinearSystem delta;
      try {
        delta = LinearSystem(members[0].degree(), base_points(members));
        formula = image_system(f, delta).degree;
      } catch (const Error& e) {
        // Configurations whose image needs towers above height 2 lie
        // outside the representation; draw another pair.
        if (e.kind() != ErrorKind::TowerTooDeep) throw;
        ++redrawn;
        continue;
      }
      int direct = oracle::degree_by_substitution(inverse(f), members);
      ok += formula == direct;
      eps_seen[2 * delta.degree - formula]++;
      break;
     }
    }
    std::string d = counts(ok, total) + " agree (" + std::to_string(redrawn) +
                    " pairs redrawn for tower height); epsilon values seen:";
    for (auto [e, n] : eps_seen) d += " " + std::to_string(e) + "x" + std::to_string(n);
    return Outcome{ok == total, d};
  });

  run(5, "f-bullet fixture and inverse round trips", 30.0, [] {
    BubblePoint got = fbullet(BirMap::sigma(3), BubblePoint(ProjPoint(0, 1, 1)));
    BubblePoint want(kE1, {P1Point(1, 1)});
    bool fixture = got == want && fbullet(BirMap::sigma(3), want) == BubblePoint(ProjPoint(0, 1, 1));
    Rng rng(5);
    int ok = 0, total = 200, infinitely_near = 0, redrawn = 0;
    for (int k = 0; k < total; ++k) {
      BirMap f = random_quadratic(rng, 1 + k % 3);
      BirMap g = inverse(f);
      for (;;) {
        BubblePoint p = random_proper(rng);
        if (k % 2 == 1) p.tower = {P1Point(rng.uniform(-5, 5), rng.nonzero(5))};
        try {
          BubblePoint q = fbullet(f, p);
          infinitely_near += !q.proper();
          ok += fbullet(g, q) == p;
          break;
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::TowerTooDeep) ++redrawn;
          else if (e.kind() != ErrorKind::IsBasePoint) throw;
        }
      }
    }
    return Outcome{fixture && ok == total,
                   std::string("fixture ") + (fixture ? "ok" : "wrong: " + got.str()) + ", " +
                       counts(ok, total) + " round trips (" + std::to_string(infinitely_near) +
                       " images infinitely near, " + std::to_string(redrawn) +
                       " points redrawn for tower height)"};
  });

  run(6, "quadratic de Jonquieres factorization", 60.0, [] {
    Rng rng(6);
    int ok = 0, total = 200;
    std::map<DJKind, int> seen;
    const ProjPoint e1 = kE1;
    for (int k = 0; k < total; ++k) {
      BirMap f = random_dj_quadratic(rng, static_cast<DJKind>(k % 4));
      DJFactorization q = factor_quadratic_dJ(f);
      seen[q.kind]++;
      BirMap back = compose({BirMap::linear(q.alpha2), q.tau(), BirMap::linear(q.alpha1)});
      ok += back == f && q.alpha1.apply(e1) == e1 && q.alpha2.apply(e1) == e1;
    }
    bool all_kinds = seen.size() == 4;
    std::string d = counts(ok, total) + " recompose;";
    for (auto [kind, n] : seen) {
      all_kinds = all_kinds && n >= 10;
      d += " " + std::string(dj_kind_name(kind)) + "x" + std::to_string(n);
    }
    return Outcome{ok == total && all_kinds, d};
  });

  int prefixes_checked = 0, prefixes_ok = 0;
  run(7, "identity words reduce to the empty word", 300.0, [&] {
    int ok = 0, total = 50, max_len = 0, rounds = 0, squares = 0, deg3 = 0;
    std::string first_failure;
    for (int k = 0; k < total; ++k) {
      Word w = oracle::identity_word_case(k);
      max_len = std::max<int>(max_len, static_cast<int>(w.size()));
      for (std::size_t j = 0; j <= w.size(); ++j) {
        std::vector<BirMap> suffix;
        for (std::size_t t = w.size() - j; t < w.size(); ++t) suffix.push_back(w[t].map);
        ++prefixes_checked;
        prefixes_ok += is_dejonquieres_system(system_of_word(suffix));
      }
      try {
        RewriteTrace tr = reduce_identity_word(w, {.seed = static_cast<std::uint64_t>(k)});
        bool decreasing = true;
        for (std::size_t r = 1; r < tr.complexities.size(); ++r)
          decreasing = decreasing && tr.complexities[r] < tr.complexities[r - 1];
        std::string lib = replay_trace(tr), ind = oracle::replay_by_evaluation(tr, 77 + k);
        bool good = w.size() <= 12 && tr.final_word().empty() && decreasing && lib.empty() && ind.empty();
        if (!good && first_failure.empty())
          first_failure = "word " + std::to_string(k) + ": " + lib + ind;
        ok += good;
        rounds += tr.rounds;
        for (const auto& s : tr.steps) {
          squares += s.rule == "square-dJ";
          deg3 += s.rule == "deg3-proper";
        }
      } catch (const Error& e) {
        if (first_failure.empty()) first_failure = "word " + std::to_string(k) + ": " + e.what();
      }
    }
    std::string d = counts(ok, total) + " reduced, max length " + std::to_string(max_len) + ", " +
                    std::to_string(rounds) + " rounds, " + std::to_string(deg3) +
                    " degree-3 rewrites, " + std::to_string(squares) + " square rewrites";
    if (!first_failure.empty()) d += "; " + first_failure;
    return Outcome{ok == total, d};
  });

  run(8, "de Jonquieres conditions along every prefix", 1e9, [&] {
    return Outcome{prefixes_checked > 0 && prefixes_ok == prefixes_checked,
                   counts(prefixes_ok, prefixes_checked) + " prefix systems"};
  });

  run(9, "degree trichotomy by shared simple base points", 60.0, [] {
    Rng rng(9);
    std::map<int, int> hits;
    int ok = 0, total = 300;
    for (int k = 0; k < total; ++k) {
      int shared = k % 3;
      for (;;) {
        BirMap h = random_dj_quadratic(rng, static_cast<DJKind>(rng.uniform(0, 3)));
        LinearSystem delta = image_system(h, LinearSystem(1, {}));
        if (rng.coin()) {
          BirMap h2 = random_dj_quadratic(rng, DJKind::Sigma3);
          delta = image_system(h2, delta);
          h = compose(h2, h);
        }
        std::vector<BubblePoint> simple;
        for (const auto& [p, m] : delta.base)
          if (p != BubblePoint(kE1)) simple.push_back(p);
        std::vector<BubblePoint> pick(simple.begin(), simple.begin() + std::min<int>(shared, simple.size()));
        if (static_cast<int>(pick.size()) < shared) continue;
        while (pick.size() < 2) pick.push_back(random_proper(rng));
        auto f = dj_through(pick[0], pick[1]);
        if (!f) continue;
        int common = 0;
        for (const auto& p : pick) common += delta.multiplicity(p) > 0;
        if (common != shared) continue;
        LinearSystem image = image_system(*f, delta);
        auto c = inverse(h).components();
        auto members = oracle::generic_members({c[0], c[1], c[2]}, 900 + k);
        int direct = oracle::degree_by_substitution(inverse(*f), members);
        int change = image.degree - delta.degree;
        bool good = change == 1 - shared && direct == image.degree && is_dejonquieres_system(image);
        ok += good;
        if (good) hits[change]++;
        break;
      }
    }
    bool each = hits[1] >= 30 && hits[0] >= 30 && hits[-1] >= 30;
    return Outcome{ok == total && each, counts(ok, total) + " pairs; +1 x" + std::to_string(hits[1]) +
                                            ", 0 x" + std::to_string(hits[0]) + ", -1 x" +
                                            std::to_string(hits[-1])};
  });

  run(10, "de Jonquieres decomposition round trip", 120.0, [] {
    Rng rng(10);
    int ok = 0, total = 100, max_degree = 0, redrawn = 0;
    std::string first_failure;
    for (int k = 0; k < total; ++k) {
      int len = 1 + k % 6;
      Word w;
      for (;;) {
        w.clear();
        for (int j = 0; j < len; ++j)
          w.push_back(random_letter(rng, static_cast<GroupTag>(rng.uniform(0, 2)), true));
        // The input's own linear system must be representable with towers
        // of height at most 2.
        std::vector<BirMap> inv;
        for (const auto& l : w) inv.insert(inv.begin(), inverse(l.map));
        try {
          system_of_word(inv);
          break;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::TowerTooDeep) throw;
          ++redrawn;
        }
      }
      BirMap f = pi(w);
      max_degree = std::max(max_degree, f.degree());
      try {
        auto parts = decompose_dejonquieres(f);
        bool good = compose(parts) == f;
        for (const auto& p : parts) good = good && p.degree() <= 2 && is_dejonquieres(p);
        ok += good;
      } catch (const Error& e) {
        if (first_failure.empty()) first_failure = "word " + std::to_string(k) + ": " + e.what();
      }
    }
    std::string d = counts(ok, total) + " recompose, max degree " + std::to_string(max_degree) +
                    ", " + std::to_string(redrawn) + " words redrawn for tower height";
    if (!first_failure.empty()) d += "; " + first_failure;
    return Outcome{ok == total, d};
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
