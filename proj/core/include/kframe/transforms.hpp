#pragma once

// K-frames under adjointable operators: Bessel images, M-frames from range
// inclusion, restriction to R(T), co-isometry images, and the surjectivity /
// invertibility consequences. "Dense range" is read as "surjective", which is
// the same thing in finite rank.

#include <optional>
#include <string>
#include <vector>

#include "kframe/algebra.hpp"
#include "kframe/frames.hpp"
#include "kframe/report.hpp"

namespace kframe {

struct TransformReport {
  std::vector<Hypothesis> hypotheses;
  /// The conclusion as measured (e.g. "{T x_j} is a K-frame", "T surjective").
  bool conclusion_holds = false;
  /// Bounds the argument predicts, when it produces explicit constants.
  std::optional<FrameBounds> derived_bounds;
  /// Bounds measured directly on the transformed family.
  std::optional<FrameBounds> measured_bounds;
  std::vector<std::string> notes;

  bool hypotheses_hold() const { return all_hold(hypotheses); }
  bool verdict() const { return hypotheses_hold() && conclusion_holds; }
  /// Hypotheses hold and the conclusion (with any derived constant) fails.
  bool violation() const { return hypotheses_hold() && !conclusion_holds; }
};

struct BesselImage {
  FrameFamily family;      // {M x_j}
  double optimal_bound;    // lambda_max of its frame operator
  double certified_bound;  // D ||M||^2
};

BesselImage bessel_image(const FrameFamily& f, const AdjointableOperator& m, const ToleranceConfig& cfg = {});

/// R(M) subset R(K) turns a K-frame into an M-frame with lower bound
/// lambda / lambda', where M M* <= lambda' K K*.
TransformReport mframe_from_kframe(const FrameFamily& f, const AdjointableOperator& k,
                                   const AdjointableOperator& m, const ToleranceConfig& cfg = {});

/// The same conclusion reached through the synthesis operator:
/// R(M) subset R(K) subset R(L).
TransformReport mframe_via_synthesis(const FrameFamily& f, const AdjointableOperator& k,
                                     const AdjointableOperator& m, const ToleranceConfig& cfg = {});

/// K surjective, F a K-frame, {T x_j} a K-frame  =>  T surjective.
TransformReport surjectivity_consequence(const FrameFamily& f, const AdjointableOperator& k,
                                         const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// KT = TK  =>  {T x_j} is a K-frame for the submodule R(T). The lower bound
/// is measured on the compression P (S' - C K K*) P, P = P_R(T).
TransformReport restricted_kframe(const FrameFamily& f, const AdjointableOperator& k,
                                  const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// T T* = I and R(T* K*) subset R(K* T*)  =>  {T x_j} is a K-frame for E.
TransformReport coisometry_image(const FrameFamily& f, const AdjointableOperator& k,
                                 const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// K surjective, {T x_j} and {T* x_j} K-frames  =>  T invertible.
TransformReport invertibility_consequence(const FrameFamily& f, const AdjointableOperator& k,
                                          const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// For K surjective, TK = KT and F a K-frame: {T x_j} is a K-frame iff T is
/// surjective. Both sides are measured; conclusion_holds means they agree.
TransformReport surjectivity_equivalence(const FrameFamily& f, const AdjointableOperator& k,
                                         const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// ||KT - TK|| / (||K|| ||T||), 0 when either operator vanishes.
double commutator_defect(const AdjointableOperator& k, const AdjointableOperator& t);

}  // namespace kframe
