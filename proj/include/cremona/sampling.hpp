#pragma once

#include <cstdint>
#include <random>

#include "cremona/jonquieres.hpp"

namespace cremona {

/// Seeded generator whose integer draws are identical on every platform
/// (the standard distributions are implementation-defined, so bounded
/// draws use rejection sampling on the raw engine output).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  /// Uniform nonzero integer in [-bound, bound].
  long nonzero(long bound);
  bool coin() { return uniform(0, 1) == 1; }
  /// Independent generator for sub-task k.
  Rng split(std::uint64_t k);

 private:
  std::mt19937_64 eng_;
};

LinMap random_linmap(Rng& rng, long bound = 3);
/// Linear maps fixing [1:0:0].
LinMap random_dj_linmap(Rng& rng, long bound = 3);
/// Linear maps fixing [1:0:0] and [0:1:0] (so in both J and Aut(F0)).
LinMap random_F0_dj_linmap(Rng& rng, long bound = 3);
/// Linear maps fixing [1:0:0] and the line {y=0}.
LinMap random_F2_linmap(Rng& rng, long bound = 3);
/// Linear maps preserving the set {[1:0:0], [0:1:0]}.
LinMap random_F0_linmap(Rng& rng, long bound = 3);
LinMap random_torus(Rng& rng, long bound = 5);

/// beta o sigma_i o alpha with random invertible alpha, beta.
BirMap random_quadratic(Rng& rng, int i);
/// alpha2 o tau o alpha1 with alpha1, alpha2 fixing [1:0:0].
BirMap random_dj_quadratic(Rng& rng, DJKind kind);

}  // namespace cremona
