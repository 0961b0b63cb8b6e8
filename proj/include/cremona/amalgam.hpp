#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cremona/bubble.hpp"
#include "cremona/jonquieres.hpp"
#include "cremona/sampling.hpp"

namespace cremona {

/// Generator of the abstract group: a map of degree at most 2 together with
/// the subgroup it is taken from. Construction checks membership.
struct Letter {
  BirMap map;
  GroupTag tag = GroupTag::P2;

  Letter() = default;
  Letter(BirMap m, GroupTag t);
  static Letter linear(const LinMap& m) { return Letter(BirMap::linear(m), GroupTag::P2); }
  bool is_linear() const { return map.is_linear(); }
  std::string str() const;  // "<tag> <map>"

  friend bool operator==(const Letter& a, const Letter& b) {
    return a.tag == b.tag && a.map == b.map;
  }
  friend bool operator!=(const Letter& a, const Letter& b) { return !(a == b); }
};

using Word = std::vector<Letter>;

/// One rewrite. The removed letters start at pos and the inserted letters
/// take their place, except for the rule "rotate", which moves the removed
/// suffix to the front of the word (a conjugation, used only on words whose
/// product is the identity).
struct TraceStep {
  std::string rule;
  std::size_t pos = 0;
  Word removed;
  Word inserted;
  BirMap pi_before;
  BirMap pi_after;
};

struct ComplexityPair {
  int D = 1;
  int N = 0;
  friend bool operator==(const ComplexityPair& a, const ComplexityPair& b) {
    return a.D == b.D && a.N == b.N;
  }
  friend bool operator<(const ComplexityPair& a, const ComplexityPair& b) {
    return a.D != b.D ? a.D < b.D : a.N < b.N;
  }
};

struct RewriteTrace {
  Word initial;
  std::vector<TraceStep> steps;
  int rounds = 0;
  std::vector<ComplexityPair> complexities;  // value at the start of each round
  int resamples = 0;                         // rejected generic point choices

  Word final_word() const;
  /// One line per step in the documented trace format.
  std::string str() const;
};

/// Product of the letters, leftmost letter applied last.
BirMap pi(const Word& w);

/// Merges neighbouring linear letters and pads with identity letters until
/// linear and quadratic letters alternate, starting and ending with a
/// linear one. Steps are appended to the trace when one is given.
Word normalize_alternating(const Word& w, RewriteTrace* trace = nullptr);

enum class TorusDirection {
  Forward,  // [t, sigma3] -> [sigma3, iota(t)]
  Backward  // [sigma3, t] -> [iota(t), sigma3]
};
Word rw_torus_commute(const Word& w, std::size_t pos, TorusDirection dir);

/// Replaces letters pos..pos+2 (f, g, h with g linear) by one letter when
/// fgh is linear, or by a linear, quadratic, linear triple when fgh is
/// quadratic.
Word rw_collapse_deg_le2(const Word& w, std::size_t pos);

/// Rewrites (a4 s3 a3) f (a2 s3 a1) as b3 b2 b1, where s3 = sigma3 and
/// alpha = {a1, a2, a3, a4}. Returns {b3, b2, b1}.
std::array<Letter, 3> rw_square_dJ(const Letter& f, const std::array<LinMap, 4>& alpha);

struct Deg3Result {
  Word letters;               // alternating, leftmost applied last
  int raw_letter_count = 0;   // before neighbouring linear letters are merged
  int auxiliary_maps = 0;     // 1 when one auxiliary quadratic map sufficed, else 2
};
/// Rewrites f g h (deg fgh = 3) into letters whose partial products keep
/// the image of delta below the degree of gh(delta).
Deg3Result rw_deg3_proper(const Letter& f, const Letter& g, const Letter& h,
                          const LinearSystem& delta);

/// Systems Delta_1 .. Delta_m of an alternating word with m quadratic
/// letters (Delta_1 alone when m = 0).
std::vector<LinearSystem> prefix_systems(const Word& alternating);
ComplexityPair complexity(const Word& alternating);

struct ReduceOptions {
  std::uint64_t seed = 0;
  int max_retries = 64;
  long initial_window = 8;
};
/// Rewrites a word of de Jonquieres letters whose product is the identity
/// into the empty word. The trace starts from the given word.
RewriteTrace reduce_identity_word(const Word& w, const ReduceOptions& opts = {});

/// Re-applies every step to the initial word and recomputes both products
/// from the letter components. Returns an empty string on success,
/// otherwise a description of the first failing step.
std::string replay_trace(const RewriteTrace& trace);

struct FamilyReport {
  std::string name;
  int passed = 0;
  int total = 0;
  bool ok() const { return passed == total; }
};
struct PresentationReport {
  std::vector<FamilyReport> families;
  bool ok() const;
  std::string str() const;
};
PresentationReport verify_presentation(int samples, std::uint64_t seed);

/// Random element of the given subgroup, restricted to J when dejonquieres
/// is set (always the case for F2).
Letter random_letter(Rng& rng, GroupTag tag, bool dejonquieres = true);

/// Identity words built as a random word w followed by a word for its
/// inverse, then rotated cyclically.
enum class IdentityWordStyle {
  Inverse,         // inverse letters of w in reverse order
  Decomposed,      // the inverse of pi(w) rewritten through decompose_dejonquieres
  InfinitelyNear,  // like Decomposed, with w alternating linear and sigma1-type letters
};
/// Words longer than max_letters, or whose systems leave the supported
/// tower height, are redrawn.
Word random_identity_word(Rng& rng, IdentityWordStyle style, int w_letters, int max_letters = 12);

/// Letters alpha2, tau, alpha1 of a quadratic de Jonquieres map.
Word dejonquieres_letters(const BirMap& f);

/// Tag naming the smallest standard subgroup containing a quadratic normal form.
GroupTag tag_of_kind(DJKind k);
GroupTag tag_of_sigma(int i);

}  // namespace cremona
