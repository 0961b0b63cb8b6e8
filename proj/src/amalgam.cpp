#include "cremona/amalgam.hpp"

#include <algorithm>
#include <sstream>

#include "cremona/error.hpp"
#include "cremona/sampling.hpp"
#include "cremona/textio.hpp"

namespace cremona {

namespace {

const ProjPoint kE1(1, 0, 0), kE2(0, 1, 0), kE3(0, 0, 1);

std::vector<BirMap> maps_of(Word::const_iterator b, Word::const_iterator e) {
  std::vector<BirMap> out;
  for (auto it = b; it != e; ++it) out.push_back(it->map);
  return out;
}

BirMap product(Word::const_iterator b, Word::const_iterator e) {
  return b == e ? BirMap() : compose(maps_of(b, e));
}

// Replaces w[pos, pos+count) by the given letters, checking that the
// product of the segment does not change, and records the step.
Word splice(const Word& w, std::size_t pos, std::size_t count, const Word& inserted,
            const std::string& rule, RewriteTrace* trace) {
  CREMONA_CHECK(pos + count <= w.size(), "splice out of range");
  BirMap seg_before = product(w.begin() + pos, w.begin() + pos + count);
  BirMap seg_after = product(inserted.begin(), inserted.end());
  if (seg_before != seg_after)
    throw Error(ErrorKind::InvariantViolation, rule + " changed the product of the word");
  Word out(w.begin(), w.begin() + pos);
  out.insert(out.end(), inserted.begin(), inserted.end());
  out.insert(out.end(), w.begin() + pos + count, w.end());
  if (trace) {
    TraceStep s;
    s.rule = rule;
    s.pos = pos;
    s.removed.assign(w.begin() + pos, w.begin() + pos + count);
    s.inserted = inserted;
    s.pi_before = pi(w);
    s.pi_after = pi(out);
    CREMONA_CHECK(s.pi_before == s.pi_after, rule + ": pi differs before and after");
    trace->steps.push_back(std::move(s));
  }
  return out;
}

Letter identity_letter() { return Letter::linear(LinMap()); }

}  // namespace

GroupTag tag_of_kind(DJKind k) { return k == DJKind::Sigma1 ? GroupTag::F2 : GroupTag::F0; }
GroupTag tag_of_sigma(int i) { return i == 1 ? GroupTag::F2 : GroupTag::F0; }

Letter::Letter(BirMap m, GroupTag t) : map(std::move(m)), tag(t) {
  if (map.degree() > 2) throw Error(ErrorKind::InvalidLetter, "letters have degree at most 2");
  if (!classify_subgroups(map).contains(t))
    throw Error(ErrorKind::InvalidLetter,
                std::string("map does not belong to ") + std::string(tag_name(t)));
}

std::string Letter::str() const { return std::string(tag_name(tag)) + " " + to_string(map); }

BirMap pi(const Word& w) { return product(w.begin(), w.end()); }

namespace {

Word apply_step(const Word& w, const TraceStep& s) {
  if (s.pos + s.removed.size() > w.size())
    throw Error(ErrorKind::InvariantViolation, "trace step out of range");
  if (s.rule == "rotate") {
    Word next = s.inserted;
    next.insert(next.end(), w.begin(), w.begin() + s.pos);
    return next;
  }
  Word next(w.begin(), w.begin() + s.pos);
  next.insert(next.end(), s.inserted.begin(), s.inserted.end());
  next.insert(next.end(), w.begin() + s.pos + s.removed.size(), w.end());
  return next;
}

}  // namespace

Word RewriteTrace::final_word() const {
  Word w = initial;
  for (const auto& s : steps) w = apply_step(w, s);
  return w;
}

std::string RewriteTrace::str() const {
  std::ostringstream os;
  for (std::size_t n = 0; n < steps.size(); ++n) {
    const auto& s = steps[n];
    os << "step " << n + 1 << ": " << s.rule << " @ " << s.pos << " | removed " << s.removed.size()
       << " letters | inserted " << s.inserted.size() << " letters | pi-check "
       << (s.pi_before == s.pi_after ? "OK" : "FAILED") << "\n";
  }
  return os.str();
}

Word normalize_alternating(const Word& w, RewriteTrace* trace) {
  Word cur = w;
  for (std::size_t i = 0; i + 1 < cur.size();) {
    if (cur[i].is_linear() && cur[i + 1].is_linear()) {
      LinMap m = cur[i].map.as_linear() * cur[i + 1].map.as_linear();
      cur = splice(cur, i, 2, {Letter::linear(m)}, "merge-linear", trace);
    } else {
      ++i;
    }
  }
  if (cur.empty() || !cur.front().is_linear())
    cur = splice(cur, 0, 0, {identity_letter()}, "insert-identity", trace);
  for (std::size_t i = 0; i + 1 < cur.size(); ++i)
    if (!cur[i].is_linear() && !cur[i + 1].is_linear())
      cur = splice(cur, i + 1, 0, {identity_letter()}, "insert-identity", trace);
  if (!cur.back().is_linear())
    cur = splice(cur, cur.size(), 0, {identity_letter()}, "insert-identity", trace);
  return cur;
}

Word rw_torus_commute(const Word& w, std::size_t pos, TorusDirection dir) {
  if (pos + 1 >= w.size()) throw Error(ErrorKind::PatternMismatch, "need two letters at position");
  std::size_t tpos = dir == TorusDirection::Forward ? pos : pos + 1;
  std::size_t spos = dir == TorusDirection::Forward ? pos + 1 : pos;
  const Letter& t = w[tpos];
  if (!t.is_linear()) throw Error(ErrorKind::NotTorusPerm, "letter is not linear");
  TorusPermElement te = TorusPermElement::from_linmap(t.map.as_linear());
  if (w[spos].map != BirMap::sigma(3))
    throw Error(ErrorKind::NotSigma3Adjacent, "neighbouring letter is not sigma3");
  Letter moved(BirMap::linear(iota(te).to_linmap()), t.tag);
  Word repl = dir == TorusDirection::Forward ? Word{w[spos], moved} : Word{moved, w[spos]};
  return splice(w, pos, 2, repl, "torus-commute", nullptr);
}

namespace {

Word collapse_letters(const Letter& f, const Letter& g, const Letter& h) {
  if (!g.is_linear()) throw Error(ErrorKind::PatternMismatch, "middle letter is not linear");
  for (const Letter* l : {&f, &h})
    if (l->tag == GroupTag::P2)
      throw Error(ErrorKind::PatternMismatch, "outer letters must come from F0 or F2");
  BirMap F = compose({f.map, g.map, h.map});
  int d = F.degree();
  if (d == 1) return {Letter::linear(F.as_linear())};
  if (d > 2) throw Error(ErrorKind::DegreeTooHigh, "product has degree " + std::to_string(d));
  if (f.is_linear())
    return {Letter::linear(f.map.as_linear() * g.map.as_linear()), h, identity_letter()};
  if (h.is_linear())
    return {identity_letter(), f, Letter::linear(g.map.as_linear() * h.map.as_linear())};
  if (is_dejonquieres(F)) {
    DJFactorization q = factor_quadratic_dJ(F);
    return {Letter::linear(q.alpha2), Letter(q.tau(), tag_of_kind(q.kind)), Letter::linear(q.alpha1)};
  }
  QuadraticFactorization q = factor_quadratic(F);
  return {Letter::linear(q.beta), Letter(BirMap::sigma(q.i), tag_of_sigma(q.i)),
          Letter::linear(q.alpha)};
}

}  // namespace

Word dejonquieres_letters(const BirMap& f) {
  DJFactorization q = factor_quadratic_dJ(f);
  return {Letter::linear(q.alpha2), Letter(q.tau(), tag_of_kind(q.kind)), Letter::linear(q.alpha1)};
}

Word rw_collapse_deg_le2(const Word& w, std::size_t pos) {
  if (pos + 2 >= w.size()) throw Error(ErrorKind::PatternMismatch, "need three letters at position");
  return splice(w, pos, 3, collapse_letters(w[pos], w[pos + 1], w[pos + 2]), "collapse", nullptr);
}

namespace {

Rational jacobian_at(const BirMap& f, const Point3& p) {
  Matrix3 m;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = f.components()[r].derivative(c).eval(p);
  return det(m);
}

bool is_quadratic_dj(const BirMap& f) { return f.degree() == 2 && is_dejonquieres(f); }

Word dj_letters(const BirMap& f) { return dejonquieres_letters(f); }

// The base points of a quadratic de Jonquieres map other than [1:0:0].
std::vector<BubblePoint> simple_points(const std::array<BubblePoint, 3>& pts) {
  std::vector<BubblePoint> out;
  for (const auto& p : pts)
    if (p != BubblePoint(kE1)) out.push_back(p);
  std::sort(out.begin(), out.end());
  return out;
}

bool same_set(std::vector<BubblePoint> a, std::vector<BubblePoint> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Roles of {[1:0:0], a, b} for a quadratic map, or 0 when they do not form
// a quadratic configuration.
int dj_roles(const BubblePoint& a, const BubblePoint& b, std::array<BubblePoint, 3>& roles) {
  std::array<BubblePoint, 3> pts{BubblePoint(kE1), a, b};
  try {
    int i = sigma_roles(pts);
    roles = pts;
    return i;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotBirational) return 0;
    throw;
  }
}

std::optional<BirMap> dj_map_through(const BubblePoint& a, const BubblePoint& b) {
  std::array<BubblePoint, 3> roles;
  int i = dj_roles(a, b, roles);
  if (i == 0) return std::nullopt;
  BirMap rho = quadratic_with_basepoints(i, roles);
  if (!is_dejonquieres(rho)) return std::nullopt;
  return rho;
}

// Proper points first, then points infinitely near [1:0:0], then the rest.
void order_candidates(std::vector<BubblePoint>& c) {
  auto rank = [](const BubblePoint& p) {
    if (p.proper()) return 0;
    return p.base == kE1 ? 1 : 2;
  };
  std::stable_sort(c.begin(), c.end(), [&](const BubblePoint& a, const BubblePoint& b) {
    return rank(a) != rank(b) ? rank(a) < rank(b) : a < b;
  });
}

bool contains(const std::vector<BubblePoint>& v, const BubblePoint& p) {
  return std::find(v.begin(), v.end(), p) != v.end();
}

}  // namespace

std::array<Letter, 3> rw_square_dJ(const Letter& f, const std::array<LinMap, 4>& a) {
  if (!is_quadratic_dj(f.map))
    throw Error(ErrorKind::HypothesisViolation, "f must be quadratic de Jonquieres");
  for (const auto& m : a)
    if (!linear_is_dejonquieres(m))
      throw Error(ErrorKind::HypothesisViolation, "linear letters must fix [1:0:0]");
  ProjPoint q2 = a[1].apply(kE2), q3 = a[1].apply(kE3);
  for (const auto& q : {q2, q3})
    if (jacobian_at(f.map, q.coords()) == 0)
      throw Error(ErrorKind::HypothesisViolation,
                  "hypothesis (1): f is not a local isomorphism at " + q.str());
  LinMap a3inv = a[2].inverse();
  std::vector<BubblePoint> want{BubblePoint(a3inv.apply(kE2)), BubblePoint(a3inv.apply(kE3))};
  std::vector<BubblePoint> got{BubblePoint(apply(f.map, q2)), BubblePoint(apply(f.map, q3))};
  if (!same_set(want, got))
    throw Error(ErrorKind::HypothesisViolation,
                "hypothesis (2): simple base points of the left conjugator are not f(q2), f(q3)");

  const BirMap s3 = BirMap::sigma(3);
  BirMap tau1 = compose({BirMap::linear(a[1]), s3, BirMap::linear(a[0])});
  BirMap tau2 = compose({BirMap::linear(a[3]), s3, BirMap::linear(a[2])});
  BirMap P = compose({tau2, f.map, tau1});
  CREMONA_CHECK(is_quadratic_dj(P), "square product is not quadratic de Jonquieres");
  Word out = dj_letters(P);
  CREMONA_CHECK(out[1].map != BirMap::sigma(1), "square product has a single proper base point");

  BirMap tau1inv = inverse(tau1);
  std::vector<BubblePoint> moved;
  for (const auto& p : simple_points(basepoints_quadratic(f.map).source))
    moved.push_back(fbullet(tau1inv, p));
  CREMONA_CHECK(same_set(moved, simple_points(basepoints_quadratic(P).source)),
                "base points of the square product are not the transported ones");
  CREMONA_CHECK(pi(out) == P, "square factorization does not recompose");
  return {out[0], out[1], out[2]};
}

Deg3Result rw_deg3_proper(const Letter& f, const Letter& g, const Letter& h,
                          const LinearSystem& delta) {
  if (!is_quadratic_dj(f.map) || !is_quadratic_dj(h.map))
    throw Error(ErrorKind::HypothesisViolation, "outer letters must be quadratic de Jonquieres");
  if (!g.is_linear() || !linear_is_dejonquieres(g.map.as_linear()))
    throw Error(ErrorKind::HypothesisViolation, "middle letter must be linear de Jonquieres");
  BirMap gh = compose(g.map, h.map);
  BirMap fgh = compose(f.map, gh);
  if (fgh.degree() != 3)
    throw Error(ErrorKind::HypothesisViolation, "deg(fgh) is not 3");
  LinearSystem mid = image_system(gh, delta);
  const int d = mid.degree;
  if (delta.degree > d)
    throw Error(ErrorKind::HypothesisViolation, "deg(delta) exceeds deg(gh(delta))");
  if (image_system(f.map, mid).degree >= d)
    throw Error(ErrorKind::HypothesisViolation, "f does not lower the degree of gh(delta)");
  std::optional<BubblePoint> s;
  for (const auto& [p, mult] : mid.base)
    if (p.proper() && p != BubblePoint(kE1) && mult == 1) {
      s = p;
      break;
    }
  if (!s) throw Error(ErrorKind::HypothesisViolation, "gh(delta) has no proper simple base point");

  std::vector<BubblePoint> p23 = simple_points(basepoints_quadratic(gh).target);
  std::vector<BubblePoint> p45 = simple_points(basepoints_quadratic(f.map).source);
  std::vector<BubblePoint> simple23;
  for (const auto& p : p23)
    if (mid.multiplicity(p) == 1) simple23.push_back(p);
  order_candidates(simple23);
  order_candidates(p45);

  // Letters are accepted when every partial product keeps delta below d.
  auto finish = [&](const Word& raw, int aux) -> std::optional<Deg3Result> {
    Word merged = normalize_alternating(raw);
    LinearSystem sys = delta;
    for (std::size_t k = 0; k < merged.size(); ++k) {
      sys = image_system(merged[merged.size() - 1 - k].map, sys);
      if (k >= 1 && sys.degree >= d) return std::nullopt;
    }
    CREMONA_CHECK(pi(merged) == fgh, "degree 3 rewrite does not recompose");
    return Deg3Result{merged, static_cast<int>(raw.size()), aux};
  };
  auto append = [](Word& w, const Word& more) { w.insert(w.end(), more.begin(), more.end()); };

  if (contains(p23, *s) || contains(p45, *s)) {
    const auto& cands = contains(p23, *s) ? p45 : simple23;
    for (const auto& r : cands) {
      auto rho = dj_map_through(*s, r);
      if (!rho) continue;
      BirMap x1 = compose(*rho, gh), x2 = compose(f.map, inverse(*rho));
      if (x1.degree() != 2 || x2.degree() != 2) continue;
      Word raw = dj_letters(x2);
      append(raw, dj_letters(x1));
      if (auto res = finish(raw, 1)) return *res;
    }
  } else {
    for (const auto& r1 : simple23)
      for (const auto& r2 : p45) {
        auto rho1 = dj_map_through(*s, r1), rho2 = dj_map_through(*s, r2);
        if (!rho1 || !rho2) continue;
        BirMap x1 = compose(*rho1, gh), x2 = compose(*rho2, inverse(*rho1)),
               x3 = compose(f.map, inverse(*rho2));
        if (x1.degree() != 2 || x2.degree() != 2 || x3.degree() != 2) continue;
        Word raw = dj_letters(x3);
        append(raw, dj_letters(x2));
        append(raw, dj_letters(x1));
        if (auto res = finish(raw, 2)) return *res;
      }
  }
  throw Error(ErrorKind::GenericityFailure, "no admissible auxiliary base points");
}

std::vector<LinearSystem> prefix_systems(const Word& w) {
  if (w.size() % 2 == 0) throw Error(ErrorKind::PatternMismatch, "word is not alternating");
  for (std::size_t k = 0; k < w.size(); ++k)
    if (w[k].is_linear() != (k % 2 == 0))
      throw Error(ErrorKind::PatternMismatch, "word is not alternating");
  const std::size_t m = (w.size() - 1) / 2;
  std::vector<LinearSystem> out;
  LinearSystem sys = image_system(w.back().map, LinearSystem(1, {}));
  out.push_back(sys);
  for (std::size_t i = 2; i <= m; ++i) {
    // Delta_i = alpha_i g_{i-1} (Delta_{i-1}); alpha_j sits at 2(m+1-j), g_j at 2(m-j)+1.
    sys = image_system(w[2 * (m - (i - 1)) + 1].map, sys);
    sys = image_system(w[2 * (m + 1 - i)].map, sys);
    out.push_back(sys);
  }
  return out;
}

namespace {

ComplexityPair complexity_of(const std::vector<LinearSystem>& systems) {
  ComplexityPair c{0, 0};
  for (std::size_t i = 0; i < systems.size(); ++i)
    if (systems[i].degree >= c.D) c = {systems[i].degree, static_cast<int>(i + 1)};
  return c;
}

bool has_proper_simple_point(const LinearSystem& sys) {
  for (const auto& [p, mult] : sys.base)
    if (p.proper() && p.base != kE1 && mult == 1) return true;
  return false;
}

Word tau_letters(const LinMap& beta) {
  return {Letter::linear(beta), Letter(BirMap::sigma(3), GroupTag::F0),
          Letter::linear(beta.inverse())};
}

Word rotate(const Word& w, std::size_t k, RewriteTrace* trace) {
  CREMONA_CHECK(k <= w.size(), "rotation longer than word");
  BirMap before = pi(w);
  CREMONA_CHECK(before.is_identity(), "rotation is only used on identity words");
  TraceStep s;
  s.rule = "rotate";
  s.pos = w.size() - k;
  s.removed.assign(w.end() - k, w.end());
  s.inserted = s.removed;
  Word out = apply_step(w, s);
  s.pi_before = before;
  s.pi_after = pi(out);
  CREMONA_CHECK(s.pi_after.is_identity(), "rotation changed the product");
  trace->steps.push_back(std::move(s));
  return out;
}

Point3 random_point(Rng& rng, long window) {
  for (;;) {
    Point3 p{Rational(rng.uniform(-window, window)), Rational(rng.uniform(-window, window)),
             Rational(rng.uniform(-window, window))};
    if (p[0] != 0 || p[1] != 0 || p[2] != 0) return p;
  }
}

// Conjugates the alternating identity word by tau_0 = beta_0 sigma3 beta_0^-1
// and rewrites every block tau_i (alpha_{i+1} g_i) tau_{i-1}^-1 with the
// square lemma, where beta_i sends the coordinate triangle to
// ([1:0:0], p_i, q_i). Steps go to `out`; throws on a non-generic choice.
Word conjugate_pass(const Word& w, const ProjPoint& p0, const ProjPoint& q0, RewriteTrace& out) {
  const std::size_t m = (w.size() - 1) / 2;
  auto alpha = [&](std::size_t j) -> const Letter& { return w[2 * (m + 1 - j)]; };
  auto g = [&](std::size_t j) -> const Letter& { return w[2 * (m - j) + 1]; };
  const ProjPoint e1 = kE1;

  std::vector<ProjPoint> p{p0}, q{q0};
  for (std::size_t i = 1; i <= m; ++i) {
    auto step = [&](const ProjPoint& x) {
      ProjPoint y = x;
      if (i == 1) y = apply(alpha(1).map, y);
      y = apply(g(i).map, y);
      return apply(alpha(i + 1).map, y);
    };
    p.push_back(step(p.back()));
    q.push_back(step(q.back()));
  }
  CREMONA_CHECK(p[m] == p0 && q[m] == q0, "identity word moved a generic point");
  std::vector<LinMap> beta;
  for (std::size_t i = 0; i <= m; ++i) {
    if (p[i] == e1 || q[i] == e1 || p[i] == q[i] || collinear(e1, p[i], q[i]))
      throw Error(ErrorKind::GenericityFailure, "points collinear with [1:0:0]");
    beta.push_back(LinMap::from_columns(e1.coords(), p[i].coords(), q[i].coords()));
  }

  Word cur = w;
  Word pair = tau_letters(beta[0]);
  Word twice = pair;
  twice.insert(twice.end(), pair.begin(), pair.end());
  cur = splice(cur, cur.size(), 0, twice, "insert-conjugator-pair", &out);
  cur = rotate(cur, 3, &out);
  for (std::size_t i = 1; i + 1 <= m; ++i) {
    Word t = tau_letters(beta[i]);
    Word tt = t;
    tt.insert(tt.end(), t.begin(), t.end());
    cur = splice(cur, 3 + 2 * (m - i), 0, tt, "insert-conjugator-pair", &out);
  }
  // Blocks now read [b_i, s3, b_i^-1, alpha_{i+1}, g_i, (alpha_1,) b_{i-1}, s3, b_{i-1}^-1]
  // from block m on the left to block 1 on the right.
  for (std::size_t i = 1; i <= m; ++i) {
    std::size_t start = 8 * (m - i);
    auto merge = [&](std::size_t at) {
      LinMap prod = cur[at].map.as_linear() * cur[at + 1].map.as_linear();
      cur = splice(cur, at, 2, {Letter::linear(prod)}, "merge-linear", &out);
    };
    merge(start + 2);
    if (i == 1) merge(start + 4);
    std::array<LinMap, 4> a{cur[start + 6].map.as_linear(), cur[start + 4].map.as_linear(),
                            cur[start + 2].map.as_linear(), cur[start].map.as_linear()};
    auto b = rw_square_dJ(cur[start + 3], a);
    cur = splice(cur, start, 7, {b[0], b[1], b[2]}, "square-dJ", &out);
  }
  return normalize_alternating(cur, &out);
}

}  // namespace

ComplexityPair complexity(const Word& w) { return complexity_of(prefix_systems(w)); }

RewriteTrace reduce_identity_word(const Word& w, const ReduceOptions& opts) {
  RewriteTrace trace;
  trace.initial = w;
  if (!pi(w).is_identity()) throw Error(ErrorKind::NotIdentity, "product of the word is not the identity");
  Rng rng(opts.seed);
  Word cur = normalize_alternating(w, &trace);
  std::optional<ComplexityPair> prev;
  for (;;) {
    const std::size_t m = (cur.size() - 1) / 2;
    if (m == 0) {
      CREMONA_CHECK(cur.size() == 1 && cur[0].map.is_identity(), "leftover letter is not the identity");
      cur = splice(cur, 0, 1, {}, "drop-identity", &trace);
      break;
    }
    auto systems = prefix_systems(cur);
    ComplexityPair c = complexity_of(systems);
    if (prev) CREMONA_CHECK(c < *prev, "complexity did not decrease");
    prev = c;
    trace.complexities.push_back(c);
    ++trace.rounds;
    const std::size_t N = static_cast<std::size_t>(c.N);
    CREMONA_CHECK(N >= 2 && N <= m, "peak index out of range");
    std::size_t pos = 2 * (m - N) + 1;
    int deg = compose({cur[pos].map, cur[pos + 1].map, cur[pos + 2].map}).degree();
    if (deg <= 2) {
      cur = splice(cur, pos, 3, collapse_letters(cur[pos], cur[pos + 1], cur[pos + 2]), "collapse",
                   &trace);
    } else {
      for (const auto& l : cur)
        if (!is_dejonquieres(l.map))
          throw Error(ErrorKind::NotDeJonquieres,
                      "letter " + l.str() + " is not de Jonquieres and the word needs a degree 3 step");
      if (!has_proper_simple_point(systems[N - 1])) {
        long window = opts.initial_window;
        bool done = false;
        for (int attempt = 0; attempt < opts.max_retries && !done; ++attempt) {
          if (attempt > 0 && attempt % 8 == 0) window *= 2;
          ProjPoint p0(random_point(rng, window)), q0(random_point(rng, window));
          RewriteTrace local;
          try {
            Word next = conjugate_pass(cur, p0, q0, local);
            auto ns = prefix_systems(next);
            bool same = ns.size() == systems.size();
            for (std::size_t i = 0; same && i < ns.size(); ++i)
              same = ns[i].degree == systems[i].degree;
            if (!same || !has_proper_simple_point(ns[N - 1]))
              throw Error(ErrorKind::GenericityFailure, "conjugation changed the degree profile");
            trace.steps.insert(trace.steps.end(), local.steps.begin(), local.steps.end());
            cur = std::move(next);
            systems = std::move(ns);
            done = true;
          } catch (const Error& e) {
            switch (e.kind()) {
              case ErrorKind::HypothesisViolation:
              case ErrorKind::GenericityFailure:
              case ErrorKind::IndeterminacyPoint:
              case ErrorKind::IsBasePoint:
              case ErrorKind::SingularMatrix:
                ++trace.resamples;
                break;
              default:
                throw;
            }
          }
        }
        if (!done)
          throw Error(ErrorKind::GenericityExhausted,
                      "no generic points found after " + std::to_string(opts.max_retries) + " tries");
      }
      Deg3Result r = rw_deg3_proper(cur[pos], cur[pos + 1], cur[pos + 2], systems[N - 2]);
      cur = splice(cur, pos, 3, r.letters, "deg3-proper", &trace);
    }
    cur = normalize_alternating(cur, &trace);
  }
  return trace;
}

namespace {

// Product computed directly from the components, without the word caches.
Triple raw_product(const Word& w) {
  Triple acc = LinMap().components();
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    acc = compose_components(it->map.components(), acc);
  return acc;
}

}  // namespace

std::string replay_trace(const RewriteTrace& trace) {
  Word w = trace.initial;
  for (std::size_t n = 0; n < trace.steps.size(); ++n) {
    const TraceStep& s = trace.steps[n];
    std::string where = "step " + std::to_string(n + 1) + " (" + s.rule + ")";
    if (s.pos + s.removed.size() > w.size()) return where + ": position out of range";
    for (std::size_t k = 0; k < s.removed.size(); ++k)
      if (w[s.pos + k] != s.removed[k]) return where + ": removed letters do not match the word";
    if (s.rule == "rotate" && s.pos + s.removed.size() != w.size())
      return where + ": rotation does not remove a suffix";
    Word next;
    try {
      next = apply_step(w, s);
    } catch (const Error& e) {
      return where + ": " + e.what();
    }
    Triple before = raw_product(w), after = raw_product(next);
    if (before != after) return where + ": product changed";
    if (before != s.pi_before.components() || after != s.pi_after.components())
      return where + ": recorded product differs from recomputed one";
    w = std::move(next);
  }
  return {};
}

Letter random_letter(Rng& rng, GroupTag tag, bool dj) {
  switch (tag) {
    case GroupTag::P2:
      return Letter::linear(dj ? random_dj_linmap(rng) : random_linmap(rng));
    case GroupTag::F0: {
      auto lin = [&] { return dj ? random_F0_dj_linmap(rng) : random_F0_linmap(rng); };
      if (rng.uniform(0, 3) == 0) return Letter(BirMap::linear(lin()), GroupTag::F0);
      int kinds = dj ? 3 : 2;
      int k = static_cast<int>(rng.uniform(0, kinds - 1));
      BirMap mid = k == 0 ? BirMap::sigma(2) : k == 1 ? BirMap::sigma(3) : dj_kind_map(DJKind::Tau12Sigma2Tau12);
      return Letter(compose({BirMap::linear(lin()), mid, BirMap::linear(lin())}), GroupTag::F0);
    }
    case GroupTag::F2: {
      if (rng.uniform(0, 3) == 0) return Letter(BirMap::linear(random_F2_linmap(rng)), GroupTag::F2);
      BirMap mid = BirMap::sigma(rng.coin() ? 1 : 2);
      return Letter(compose({BirMap::linear(random_F2_linmap(rng)), mid,
                             BirMap::linear(random_F2_linmap(rng))}),
                    GroupTag::F2);
    }
  }
  throw Error(ErrorKind::InvariantViolation, "unknown tag");
}

bool PresentationReport::ok() const {
  return std::all_of(families.begin(), families.end(), [](const FamilyReport& f) { return f.ok(); });
}

std::string PresentationReport::str() const {
  std::ostringstream os;
  for (const auto& f : families)
    os << f.name << ": " << f.passed << "/" << f.total << (f.ok() ? " PASS" : " FAIL") << "\n";
  return os.str();
}

PresentationReport verify_presentation(int samples, std::uint64_t seed) {
  PresentationReport rep;
  Rng rng(seed);
  for (GroupTag tag : {GroupTag::P2, GroupTag::F0, GroupTag::F2}) {
    FamilyReport fam{"within-group " + std::string(tag_name(tag)), 0, samples};
    for (int k = 0; k < samples; ++k) {
      try {
        Letter f = random_letter(rng, tag, tag == GroupTag::F2);
        Letter g = random_letter(rng, tag, tag == GroupTag::F2);
        Letter h(compose(f.map, g.map), tag);
        if (compose({f.map, g.map, inverse(h.map)}).is_identity()) ++fam.passed;
      } catch (const Error&) {
      }
    }
    rep.families.push_back(fam);
  }
  {
    FamilyReport fam{"fixed relator tau13 sigma3 tau13 sigma3", 0, 1};
    BirMap t = BirMap::tau(1, 3), s = BirMap::sigma(3);
    if (compose({t, s, t, s}).is_identity()) ++fam.passed;
    rep.families.push_back(fam);
  }
  {
    FamilyReport fam{"torus delta sigma3 delta = sigma3", 0, samples};
    BirMap s = BirMap::sigma(3);
    for (int k = 0; k < samples; ++k) {
      BirMap d = BirMap::linear(random_torus(rng));
      if (compose({d, s, d}) == s) ++fam.passed;
    }
    rep.families.push_back(fam);
  }
  {
    FamilyReport fam{"sigma3 = tau12 sigma2 tau12 sigma2", 0, 1};
    BirMap t = BirMap::tau(1, 2), s2 = BirMap::sigma(2);
    if (compose({t, s2, t, s2}) == BirMap::sigma(3)) ++fam.passed;
    rep.families.push_back(fam);
  }
  return rep;
}

Word random_identity_word(Rng& rng, IdentityWordStyle style, int w_letters, int max_letters) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Word w;
    for (int k = 0; k < w_letters; ++k) {
      if (style == IdentityWordStyle::InfinitelyNear) {
        if (k % 2 == 0) {
          w.push_back(Letter::linear(random_dj_linmap(rng)));
        } else {
          BirMap s1 = compose({BirMap::linear(random_F2_linmap(rng)), BirMap::sigma(1),
                               BirMap::linear(random_F2_linmap(rng))});
          w.emplace_back(s1, GroupTag::F2);
        }
      } else {
        w.push_back(random_letter(rng, static_cast<GroupTag>(rng.uniform(0, 2)), true));
      }
    }
    Word full = w;
    try {
      if (style == IdentityWordStyle::Inverse) {
        for (auto it = w.rbegin(); it != w.rend(); ++it) full.emplace_back(inverse(it->map), it->tag);
      } else {
        for (const auto& r : decompose_dejonquieres(inverse(pi(w)))) {
          Word part = r.is_linear() ? Word{Letter::linear(r.as_linear())} : dejonquieres_letters(r);
          full.insert(full.end(), part.begin(), part.end());
        }
      }
      if (static_cast<int>(full.size()) > max_letters) continue;
      std::rotate(full.begin(), full.begin() + rng.uniform(0, static_cast<long>(full.size()) - 1),
                  full.end());
      prefix_systems(normalize_alternating(full));
      return full;
    } catch (const Error& e) {
      switch (e.kind()) {
        case ErrorKind::TowerTooDeep:
        case ErrorKind::IrrationalBasePoints:
        case ErrorKind::UnsupportedBasePointConfiguration:
          continue;
        default:
          throw;
      }
    }
  }
  throw Error(ErrorKind::GenericityExhausted, "could not draw a supported identity word");
}

}  // namespace cremona
