#pragma once

// Random instances at desk scale (k <= 3, n <= 8, J <= 16). Every emitted
// bundle satisfies the hypotheses of its scenario; failures are resampled
// up to 100 times.

#include <cstdint>
#include <optional>
#include <string>

#include "kframe/algebra.hpp"
#include "kframe/frames.hpp"
#include "kframe/harness/rng.hpp"
#include "kframe/unitary.hpp"

namespace kframe::harness {

enum class Scenario { bessel, frame, kframe, douglas_pair, sum_pair, transform, unitary };

const char* to_string(Scenario s);
/// Throws std::invalid_argument for unknown names.
Scenario scenario_from_string(const std::string& name);

struct InstanceSpec {
  std::uint64_t seed = 0;
  int k = 1;
  int n = 2;
  int J = 3;
  Scenario scenario = Scenario::frame;

  /// Throws std::invalid_argument outside the caps.
  void validate() const;
};

struct Instance {
  explicit Instance(const InstanceSpec& s) : spec(s), space(s.k, s.n) {}

  InstanceSpec spec;
  ModuleSpace space;
  std::optional<FrameFamily> frame;
  std::optional<FrameFamily> frame_g;
  std::optional<AdjointableOperator> K;
  std::optional<AdjointableOperator> M;
  std::optional<AdjointableOperator> T;
  std::optional<AdjointableOperator> T_prime;
  std::optional<UnitarySystem> system;
  std::optional<ModuleElement> psi;
  std::optional<ModuleElement> eta;
  int attempts = 1;
};

class InstanceError : public Error {
 public:
  InstanceError(std::uint64_t seed, const std::string& what) : Error(what), seed_(seed) {}
  std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
};

Instance generate_instance(const InstanceSpec& spec, const ToleranceConfig& cfg = {});

// Building blocks shared with the suites.

/// J Gaussian elements of `space`.
FrameFamily random_family(Rng& rng, const ModuleSpace& space, int J);

/// J elements whose rows are Gaussian combinations of the rows of `basis`
/// (an r x kn matrix), i.e. elements of the submodule it spans.
FrameFamily family_in_rows(Rng& rng, const ModuleSpace& space, const Matrix& basis, int J);

struct KFramePair {
  FrameFamily frame;
  AdjointableOperator K;
};

/// A frame for a random submodule and K with R(K) inside it.
KFramePair random_kframe(Rng& rng, const ModuleSpace& space, int J);

struct TransformBundle {
  FrameFamily frame;
  AdjointableOperator K;
  AdjointableOperator T;  // normal, commutes with K
  AdjointableOperator M;
};

/// K and T diagonal in one random unitary basis; F a K-frame. T is unitary,
/// generic or rank-deficient with equal odds unless `t_mode` (0, 1, 2) picks
/// one. M has R(M) inside R(K) half the time. With `surjective_k` the K-frame
/// is a frame and K is invertible.
TransformBundle random_transform(Rng& rng, const ModuleSpace& space, int J, bool surjective_k, int t_mode = -1);

/// G = {f(S) x_j} with f(s) = c0 + c1 s + c2 s^2 and S the frame operator of F.
FrameFamily polynomial_companion(Rng& rng, const FrameFamily& f);

}  // namespace kframe::harness
