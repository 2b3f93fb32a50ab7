#pragma once

#include <cstdint>
#include <random>

#include "lamhull/spectra.hpp"

namespace lamhull {

// Deterministic generator for the verification sweeps. The uint64 -> double
// conversion is spelled out so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  int index(int n) {  // {0, ..., n-1}
    return static_cast<int>(uniform() * n) % n;
  }

 private:
  std::mt19937_64 gen_;
};

// Uniform draw from the ordered unit-trace simplex, rejected until all
// eigenvalues are positive and pairwise gaps reach min_gap.
Spectrum3 random_spectrum(Rng& rng, double min_gap = 0.01);

}  // namespace lamhull
