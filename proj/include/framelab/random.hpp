#pragma once

#include <cstdint>
#include <random>

#include "framelab/numerics.hpp"

namespace framelab {

/// SplitMix64 finaliser applied to (seed, stream); every independent random
/// stream in the library is derived from one user seed this way, so a sweep
/// run in any order sees the same numbers.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) : engine_(split_seed(seed, stream)) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  double normal() { return normal_(engine_); }
  Index index(Index lo, Index hi_inclusive) {
    return std::uniform_int_distribution<Index>(lo, hi_inclusive)(engine_);
  }
  std::uint64_t bits() { return engine_(); }
  Complex complex_normal() { return {normal(), normal()}; }

  CVector complex_vector(Index n);
  CMatrix complex_matrix(Index rows, Index cols);
  /// Random matrix with prescribed singular values (Haar-ish unitary factors).
  CMatrix with_singular_values(Index rows, Index cols, const RVector& sigma);
  CMatrix unitary(Index n);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace framelab
