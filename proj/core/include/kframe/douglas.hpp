#pragma once

// Range inclusion, majorization and factorization (Douglas-type results),
// range identities for sums and square roots, and sums of K-frames.

#include <array>
#include <optional>
#include <vector>

#include "kframe/algebra.hpp"
#include "kframe/frames.hpp"
#include "kframe/report.hpp"

namespace kframe {

/// Outcome of solving T X = T' for T' : G -> F and T : E -> F.
///
/// verdicts[0]  T'T'* <= lambda T T* for some lambda (pencil value, then psd_order)
/// verdicts[1]  ||T'* z|| <= mu ||T* z|| with mu = ||D|| (kernel basis of T* plus samples)
/// verdicts[2]  T D = T' for the reduced solution D = T^+ T'
/// verdicts[3]  R(T') subset R(T)
struct DouglasReport {
  bool inclusion_holds = false;
  std::optional<AdjointableOperator> solution;
  double residual = 0.0;  // ||T D - T'|| / ||T'||, 0 when T' = 0
  std::optional<double> lambda_min;  // ||D||^2, the least admissible lambda
  double mu = 0.0;                   // ||D||
  double pencil_lambda = 0.0;        // lambda_max(M^{+1/2} N M^{+1/2})
  std::array<bool, 4> verdicts{};

  bool consistent() const;
};

DouglasReport douglas_factorize(const AdjointableOperator& t_prime, const AdjointableOperator& t,
                                const ToleranceConfig& cfg = {});

/// Distance between two orthogonal projectors that should coincide.
struct RangeIdentity {
  bool holds = false;
  double distance = 0.0;  // spectral norm of the difference
  int rank_left = 0;
  int rank_right = 0;
};

/// R(A) + R(B) (from the stacked operator [A B]) against R((AA* + BB*)^{1/2}).
RangeIdentity sum_range_sqrt_check(const AdjointableOperator& a, const AdjointableOperator& b,
                                   const ToleranceConfig& cfg = {});

/// R(T) against R(T T*).
RangeIdentity gram_range_check(const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// R(P) against R(P^{1/2}) for positive P.
RangeIdentity sqrt_range_check(const AdjointableOperator& p, const ToleranceConfig& cfg = {});

/// Solving A = B1 X + B2 Y through the stacked operator [B1 | B2] with X
/// above Y.
///
/// verdicts[0]  R(A) subset R(B1) + R(B2), via R((B1B1* + B2B2*)^{1/2})
/// verdicts[1]  AA* <= lambda (B1B1* + B2B2*) for some lambda
/// verdicts[2]  B1 X + B2 Y = A
struct SumSolveReport {
  std::optional<AdjointableOperator> x;
  std::optional<AdjointableOperator> y;
  std::optional<double> lambda;
  double residual = 0.0;  // ||B1 X + B2 Y - A|| / ||A||
  std::array<bool, 3> verdicts{};

  bool consistent() const { return verdicts[0] == verdicts[1] && verdicts[1] == verdicts[2]; }
};

SumSolveReport two_term_douglas(const AdjointableOperator& a, const AdjointableOperator& b1,
                                const AdjointableOperator& b2, const ToleranceConfig& cfg = {});

struct KFrameSumReport {
  /// F is a K-frame, G is a K-frame, L1 L2* >= 0, L2 L1* >= 0, R(L1) + R(L2) closed.
  std::vector<Hypothesis> hypotheses;
  /// L1 L2* + L2 L1* >= 0, which is all the lower-bound argument uses.
  bool weak_cross_condition = false;
  std::optional<FrameFamily> family;  // {x_j + y_j}, present when hypotheses hold
  std::optional<FrameBounds> bounds;  // measured bounds of the sum
  std::optional<double> lambda;       // least lambda with KK* <= lambda (L1L1* + L2L2*)
  std::optional<double> theorem_lower_bound;  // 1 / lambda

  bool hypotheses_hold() const { return all_hold(hypotheses); }
  /// Sum certified as a K-frame with C_opt >= (1 - 1e-6) / lambda.
  bool certified() const;
};

/// Throws DimensionMismatch when F and G differ in space or length.
KFrameSumReport kframe_sum(const FrameFamily& f, const FrameFamily& g, const AdjointableOperator& k,
                           const ToleranceConfig& cfg = {});

}  // namespace kframe
