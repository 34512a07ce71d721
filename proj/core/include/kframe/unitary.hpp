#pragma once

// Finite unitary systems on A^n, wandering vectors, local commutants and
// the generator correspondence between K-frame vectors and operators in the
// local commutant.

#include <optional>
#include <vector>

#include "kframe/algebra.hpp"
#include "kframe/frames.hpp"

namespace kframe {

/// Finite list of unitaries on one space, the identity among them.
class UnitarySystem {
 public:
  /// Throws DimensionMismatch for operators off `space`, NotAFrame when no
  /// member is the identity or a member is not unitary to rel_tol.
  UnitarySystem(ModuleSpace space, std::vector<AdjointableOperator> operators, const ToleranceConfig& cfg = {});

  const ModuleSpace& space() const noexcept { return space_; }
  const std::vector<AdjointableOperator>& operators() const noexcept { return operators_; }
  int size() const noexcept { return static_cast<int>(operators_.size()); }

 private:
  ModuleSpace space_;
  std::vector<AdjointableOperator> operators_;
};

/// {U psi : U in the system}, in system order.
FrameFamily orbit(const UnitarySystem& u, const ModuleElement& psi);

struct WanderingReport {
  bool wandering = false;
  double gram_residual = 0.0;  // || [<U psi, V psi>] - I ||
};

/// The orbit is an orthonormal basis: Gram matrix I and surjective synthesis.
WanderingReport wandering_check(const UnitarySystem& u, const ModuleElement& psi, const ToleranceConfig& cfg = {});
bool is_wandering(const UnitarySystem& u, const ModuleElement& psi, const ToleranceConfig& cfg = {});

/// max_U || A(U psi) - U(A psi) ||.
double local_commutant_check(const AdjointableOperator& a, const UnitarySystem& u, const ModuleElement& psi);
/// Membership: residual <= rel_tol ||A|| ||psi||.
bool in_local_commutant(const AdjointableOperator& a, const UnitarySystem& u, const ModuleElement& psi,
                        const ToleranceConfig& cfg = {});

/// K-frame bounds of the orbit {U eta}.
std::optional<FrameBounds> kframe_vector_check(const UnitarySystem& u, const ModuleElement& eta,
                                               const AdjointableOperator& k, const ToleranceConfig& cfg = {});

struct GeneratorReport {
  AdjointableOperator a;
  double commutant_residual = 0.0;
  double vector_residual = 0.0;  // || A psi - eta ||
  bool range_inclusion_holds = false;  // R(K) subset R(A)
};

/// A = T_eta* T_psi, i.e. A x = sum_U <x, U psi> U eta. Throws
/// PreconditionFailed when psi is not wandering.
GeneratorReport generator_from_vector(const UnitarySystem& u, const ModuleElement& psi, const ModuleElement& eta,
                                      const AdjointableOperator& k, const ToleranceConfig& cfg = {});

struct GeneratedVector {
  ModuleElement eta;
  std::optional<FrameBounds> bounds;
};

/// eta = A psi for A in the local commutant with R(K) subset R(A). Throws
/// PreconditionFailed naming the first hypothesis that fails.
GeneratedVector vector_from_generator(const UnitarySystem& u, const ModuleElement& psi, const AdjointableOperator& a,
                                      const AdjointableOperator& k, const ToleranceConfig& cfg = {});

/// {I, C, ..., C^{d-1}} for the block cyclic shift C on (M_k)^d, C e_i = e_{i+1 mod d}.
UnitarySystem cyclic_shift_system(int d, int k = 1);

/// Max entry deviation of A from block-circulant form B_ij = B_{0,(j-i) mod d}.
double circulant_deviation(const AdjointableOperator& a);

}  // namespace kframe
