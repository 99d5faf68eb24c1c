#pragma once

// Deterministic random generation (splitmix64) and the random test-matrix
// builders used by the identity suites and searches. No std:: distributions:
// output must be bit-identical across platforms and thread counts.

#include "chir/matrix.hpp"
#include "chir/scalars.hpp"

#include <cstdint>

namespace chir {

struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n); n > 0
  uint64_t bounded(uint64_t n) { return next() % n; }

  int uniform_int(int lo, int hi) {  // inclusive ends
    return lo + static_cast<int>(bounded(static_cast<uint64_t>(hi - lo + 1)));
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // k/denom with |k| <= mag, so entries land in [-mag/denom, mag/denom]
  Rat rat(int mag, int denom) { return Rat(uniform_int(-mag, mag), denom); }
};

// Random hermitian matrix with Gaussian-rational entries; real and imaginary
// parts are multiples of 1/denom bounded by mag/denom in magnitude.
inline MatQ random_hermitian(Rng& rng, int n, int mag = 16, int denom = 8) {
  MatQ m(n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = CRat(rng.rat(mag, denom));
    for (int j = i + 1; j < n; ++j) {
      m.at(i, j) = CRat(rng.rat(mag, denom), rng.rat(mag, denom));
      m.at(j, i) = conj(m.at(i, j));
    }
  }
  return m;
}

inline MatQ random_matrix(Rng& rng, int n, int mag = 16, int denom = 8) {
  MatQ m(n);
  for (auto& v : m.a) v = CRat(rng.rat(mag, denom), rng.rat(mag, denom));
  return m;
}

// V V^*: exact rational PSD Gram matrix.
inline MatQ random_gram_psd(Rng& rng, int n, int mag = 4, int denom = 4) {
  MatQ v = random_matrix(rng, n, mag, denom);
  return v * conj_transpose(v);
}

inline uint32_t random_subset(Rng& rng, int n) {
  return static_cast<uint32_t>(rng.next()) & ((n == 32 ? ~0u : (1u << n) - 1));
}

}  // namespace chir
