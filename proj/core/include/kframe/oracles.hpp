#pragma once

// Independent checks used to validate the spectral decisions of the library.
// They deliberately avoid the eigen-solver route of psd_order and the pencil
// formula of kframe_check.

#include <cstdint>

#include "kframe/algebra.hpp"
#include "kframe/frames.hpp"

namespace kframe {

struct SamplingVerdict {
  bool positive = true;
  int trials_run = 0;
  double worst = 0.0;  // most negative lambda_min(<P x, x>) / ||x||^2 seen
};

/// Draws `trials` random module elements x and checks that every <P x, x> is
/// a positive algebra element. Half of the draws are sharpened by a few steps
/// of shifted power iteration (x <- x (sigma I - P)) before testing. Stops at
/// the first witness.
SamplingVerdict psd_sampling_oracle(const AdjointableOperator& p, int trials, std::uint64_t seed,
                                    const ToleranceConfig& cfg = {});

/// Lower K-frame bound by bisection on C over [0, D/||K||^2 + 1], testing
/// C K K* <= S with psd_order at tolerance min(rel_tol, 1e-12). Returns
/// +infinity when K = 0.
double kframe_bound_bisection_oracle(const FrameFamily& f, const AdjointableOperator& k,
                                     const ToleranceConfig& cfg = {});

}  // namespace kframe
