#pragma once

// Deterministic RNG and input generators for the randomized suites. Hand
// rolled xorshift so every platform replays the same instances.

#include <cstdint>
#include <vector>

#include "singlat/matrix.hpp"

namespace testsup {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next() {
    s_ ^= s_ << 13;
    s_ ^= s_ >> 7;
    s_ ^= s_ << 17;
    return s_;
  }

  // uniform in [lo, hi] inclusive
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t s_;
};

inline singlat::IntMatrix random_matrix(Rng& rng, std::size_t rows,
                                        std::size_t cols, long long lo,
                                        long long hi) {
  singlat::IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rng.range(lo, hi);
  return m;
}

inline singlat::IntMatrix random_symmetric(Rng& rng, std::size_t n,
                                           long long lo, long long hi) {
  singlat::IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      m(i, j) = rng.range(lo, hi);
      m(j, i) = m(i, j);
    }
  return m;
}

// Random unimodular matrix: a product of elementary row operations applied to
// the identity. Keeps entries moderate by bounding the shear coefficients.
inline singlat::IntMatrix random_unimodular(Rng& rng, std::size_t n,
                                            int ops = 8) {
  singlat::IntMatrix m = singlat::IntMatrix::identity(n);
  if (n < 2) return m;
  for (int k = 0; k < ops; ++k) {
    std::size_t i = static_cast<std::size_t>(rng.range(0, static_cast<long long>(n) - 1));
    std::size_t j = static_cast<std::size_t>(rng.range(0, static_cast<long long>(n) - 1));
    if (i == j) continue;
    switch (rng.range(0, 2)) {
      case 0:
        m.add_row(i, j, singlat::Int(rng.range(-3, 3)));
        break;
      case 1:
        m.swap_rows(i, j);
        break;
      default:
        m.negate_row(i);
        break;
    }
  }
  return m;
}

}  // namespace testsup
