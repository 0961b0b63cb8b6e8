#include "cremona/sampling.hpp"

#include "cremona/error.hpp"

namespace cremona {

long Rng::uniform(long lo, long hi) {
  CREMONA_CHECK(lo <= hi, "empty sampling range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = eng_();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

long Rng::nonzero(long bound) {
  long v = uniform(1, bound);
  return coin() ? v : -v;
}

Rng Rng::split(std::uint64_t k) {
  std::uint64_t base = eng_();
  return Rng(base ^ (0x9E3779B97F4A7C15ULL * (k + 1)));
}

namespace {

template <class Fill>
LinMap sample_invertible(Fill fill) {
  for (;;) {
    Matrix3 m;
    fill(m);
    if (det(m) != 0) return LinMap(m);
  }
}

}  // namespace

LinMap random_linmap(Rng& rng, long bound) {
  return sample_invertible([&](Matrix3& m) {
    for (auto& row : m)
      for (auto& e : row) e = rng.uniform(-bound, bound);
  });
}

LinMap random_dj_linmap(Rng& rng, long bound) {
  return sample_invertible([&](Matrix3& m) {
    for (auto& row : m)
      for (auto& e : row) e = rng.uniform(-bound, bound);
    m[0][0] = rng.nonzero(bound);
    m[1][0] = 0;
    m[2][0] = 0;
  });
}

LinMap random_F0_dj_linmap(Rng& rng, long bound) {
  return sample_invertible([&](Matrix3& m) {
    for (auto& row : m) row = {0, 0, 0};
    m[0][0] = rng.nonzero(bound);
    m[1][1] = rng.nonzero(bound);
    m[2][2] = rng.nonzero(bound);
    m[0][2] = rng.uniform(-bound, bound);
    m[1][2] = rng.uniform(-bound, bound);
  });
}

LinMap random_F2_linmap(Rng& rng, long bound) {
  return sample_invertible([&](Matrix3& m) {
    for (auto& row : m) row = {0, 0, 0};
    m[0][0] = rng.nonzero(bound);
    m[0][1] = rng.uniform(-bound, bound);
    m[0][2] = rng.uniform(-bound, bound);
    m[1][1] = rng.nonzero(bound);
    m[2][1] = rng.uniform(-bound, bound);
    m[2][2] = rng.nonzero(bound);
  });
}

LinMap random_F0_linmap(Rng& rng, long bound) {
  LinMap m = random_F0_dj_linmap(rng, bound);
  return rng.coin() ? LinMap::swap(1, 2) * m : m;
}

LinMap random_torus(Rng& rng, long bound) {
  return LinMap::diagonal(rng.nonzero(bound), rng.nonzero(bound), rng.nonzero(bound));
}

BirMap random_quadratic(Rng& rng, int i) {
  return BirMap::from_word({random_linmap(rng), static_cast<Quadric>(i), random_linmap(rng)});
}

BirMap random_dj_quadratic(Rng& rng, DJKind kind) {
  return compose({BirMap::linear(random_dj_linmap(rng)), dj_kind_map(kind),
                  BirMap::linear(random_dj_linmap(rng))});
}

}  // namespace cremona
