#pragma once

// Seeded randomness for instance generation. Each (seed, stream, trial)
// triple gets its own engine, so trials are independent of execution order.

#include <cstdint>
#include <random>

#include "kframe/linalg.hpp"

namespace kframe::harness {

/// One SplitMix64 step; advances `state`.
std::uint64_t splitmix64(std::uint64_t& state);

/// Engine seed for trial `trial` of stream `stream` under the global seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi);
  double normal();
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  bool coin(double p = 0.5);

  /// Entries with independent standard normal real and imaginary parts.
  Matrix gaussian(int rows, int cols);
  /// Haar-distributed unitary (QR with phase correction).
  Matrix unitary(int n);
  /// rows x cols matrix of exact rank `rank`, nonzero singular values in [lo, hi].
  Matrix with_rank(int rows, int cols, int rank, double lo = 0.5, double hi = 2.0);
  /// n x r matrix with orthonormal columns.
  Matrix orthonormal_columns(int n, int r);
  /// Positive n x n matrix of rank `rank`, eigenvalues in [lo, hi].
  Matrix positive(int n, int rank, double lo = 0.5, double hi = 2.0);

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kframe::harness
