#pragma once

// Finite families in A^n: Bessel sequences, frames, K-frames, canonical
// duals, reconstruction and atomic systems.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kframe/algebra.hpp"

namespace kframe {

/// Ordered family x_1, ..., x_J in one module space. The analysis and frame
/// operators are computed once at construction.
class FrameFamily {
 public:
  FrameFamily(ModuleSpace space, std::vector<ModuleElement> elements);

  /// e_1, ..., e_n of A^n.
  static FrameFamily standard_basis(const ModuleSpace& space);

  const ModuleSpace& space() const noexcept { return space_; }
  int size() const noexcept { return static_cast<int>(elements_.size()); }
  const std::vector<ModuleElement>& elements() const noexcept { return elements_; }
  const ModuleElement& operator[](int j) const { return elements_.at(static_cast<std::size_t>(j)); }

  /// T : E -> A^J, x |-> (<x, x_j>)_j.
  const AdjointableOperator& analysis() const noexcept { return analysis_; }
  /// S = T* T.
  const AdjointableOperator& frame_operator() const noexcept { return frame_operator_; }

  /// {M x_j}.
  FrameFamily mapped(const AdjointableOperator& m) const;

 private:
  ModuleSpace space_;
  std::vector<ModuleElement> elements_;
  AdjointableOperator analysis_;
  AdjointableOperator frame_operator_;
};

enum class BoundKind { bessel, frame, kframe };

const char* to_string(BoundKind kind);

/// Optimal bounds. Bessel bounds carry no lower bound. A K-frame lower bound
/// is +infinity when K = 0 (every C > 0 works).
struct FrameBounds {
  BoundKind kind = BoundKind::bessel;
  std::optional<double> lower;
  double upper = 0.0;
};

AdjointableOperator analysis_operator(const FrameFamily& f);
/// T*: A^J -> E, (c_j) |-> sum_j c_j x_j.
AdjointableOperator synthesis_operator(const FrameFamily& f);
AdjointableOperator frame_operator(const FrameFamily& f);

/// D_opt = lambda_max(S), certified by S <= D_opt I. Throws InternalViolation
/// if the certificate fails.
FrameBounds bessel_check(const FrameFamily& f, const ToleranceConfig& cfg = {});

/// (lambda_min(S), lambda_max(S)) when lambda_min(S) > rel_tol * lambda_max(S).
std::optional<FrameBounds> frame_check(const FrameFamily& f, const ToleranceConfig& cfg = {});

/// sup { C : C Q <= S } for positive S, Q on one space. Absent when R(Q) is not
/// inside R(S); +infinity when Q = 0.
std::optional<double> optimal_lower_bound(const AdjointableOperator& s, const AdjointableOperator& q,
                                          const ToleranceConfig& cfg = {});

/// Optimal C with C K K* <= S, and D_opt = lambda_max(S). Absent when
/// R(K K*) is not contained in R(S).
std::optional<FrameBounds> kframe_check(const FrameFamily& f, const AdjointableOperator& k,
                                        const ToleranceConfig& cfg = {});

/// {S^{-1} x_j}. Throws NotAFrame.
FrameFamily canonical_dual(const FrameFamily& f, const ToleranceConfig& cfg = {});

struct Reconstruction {
  ModuleElement value;       // sum_j <x, S^{-1} x_j> x_j
  ModuleElement dual_value;  // sum_j <x, x_j> S^{-1} x_j
  double residual = 0.0;       // ||value - x|| / ||x||
  double dual_residual = 0.0;  // ||dual_value - x|| / ||x||
};

/// Throws NotAFrame.
Reconstruction reconstruct(const FrameFamily& f, const ModuleElement& x, const ToleranceConfig& cfg = {});

struct AtomicDecomposition {
  std::vector<AlgebraElement> coefficients;  // a_{j,x}
  double bound = 0.0;                        // C = ||D||^2
  double synthesis_residual = 0.0;           // ||sum a_j x_j - K x|| / max(1, ||K x||)
  bool bound_certified = false;              // sum a_j a_j* <= C <x, x>
};

/// Coefficients from the minimum-norm solution of K = T* D. Throws NotAtomic
/// when R(K) is not inside R(T*).
AtomicDecomposition atomic_coefficients(const FrameFamily& f, const AdjointableOperator& k,
                                        const ModuleElement& x, const ToleranceConfig& cfg = {});

struct AtomicSystemReport {
  /// [0] atomic system, [1] norm inequality B||K*x||^2 <= ||sum..|| <= C||x||^2,
  /// [2] K = T* D solvable.
  std::array<bool, 3> conditions{};
  std::optional<double> lower;  // B, from the K-frame pencil
  double upper = 0.0;           // C, the Bessel bound
  double inclusion_residual = 0.0;
  double factorization_residual = 0.0;
  int samples = 0;  // norm-form samples checked for [1]

  bool consistent() const { return conditions[0] == conditions[1] && conditions[1] == conditions[2]; }
};

AtomicSystemReport atomic_system_check(const FrameFamily& f, const AdjointableOperator& k,
                                       const ToleranceConfig& cfg = {});

/// Standard module basis of the domain of K; it is atomic for every K.
FrameFamily construct_atomic_system(const AdjointableOperator& k);

struct SynthesisCharacterization {
  bool verdict = false;
  double basis_residual = 0.0;      // max_j ||L e_j - x_j||
  RangeInclusion inclusion;         // R(K) subset R(L)
};

/// K-frame test through the synthesis operator L: L e_j = x_j and R(K) subset R(L).
SynthesisCharacterization kframe_via_synthesis(const FrameFamily& f, const AdjointableOperator& k,
                                               const ToleranceConfig& cfg = {});

}  // namespace kframe
