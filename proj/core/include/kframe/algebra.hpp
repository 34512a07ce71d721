#pragma once

// Coefficient algebra A = M_k(C), the free Hilbert module E = A^n, and
// adjointable operators between such modules.
//
// Representation: a module element x = (a_1, ..., a_n) is the k x (k n)
// matrix [a_1 ... a_n]. An operator T : A^n -> A^m is a (k n) x (k m)
// matrix Theta_T acting on the right, x |-> X Theta_T. The inner product is
// <x, y> = X Y^H, the adjoint is the conjugate transpose, and composition
// reverses matrix order: Theta_{S o T} = Theta_T Theta_S.

#include <cstdint>
#include <optional>

#include "kframe/errors.hpp"
#include "kframe/linalg.hpp"

namespace kframe {

/// Element of M_k(C).
using AlgebraElement = Matrix;

struct ToleranceConfig {
  double rel_tol = 1e-9;
  double rank_tol = 1e-10;  // relative singular-value cutoff

  /// Throws std::invalid_argument on negative or non-finite values.
  void validate() const;
};

struct AlgebraDescriptor {
  int k = 1;

  friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

/// The free module A^n over A = M_k(C).
class ModuleSpace {
 public:
  ModuleSpace(int k, int n);
  ModuleSpace(AlgebraDescriptor algebra, int n) : ModuleSpace(algebra.k, n) {}

  const AlgebraDescriptor& algebra() const noexcept { return algebra_; }
  int k() const noexcept { return algebra_.k; }
  int n() const noexcept { return n_; }
  /// Width k n of the representing matrices.
  int dim() const noexcept { return algebra_.k * n_; }

  friend bool operator==(const ModuleSpace&, const ModuleSpace&) = default;

 private:
  AlgebraDescriptor algebra_;
  int n_;
};

class ModuleElement {
 public:
  ModuleElement(ModuleSpace space, Matrix mat);

  static ModuleElement zero(const ModuleSpace& space);
  /// e_i: unit of A in block i, zero elsewhere.
  static ModuleElement basis(const ModuleSpace& space, int i);

  const ModuleSpace& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return mat_; }
  AlgebraElement block(int i) const;

  /// Module norm sqrt(||<x,x>||), equal to the spectral norm of the matrix.
  double norm() const;

  /// Left action a . x.
  ModuleElement left_multiply(const AlgebraElement& a) const;

  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator-=(const ModuleElement& other);
  friend ModuleElement operator+(ModuleElement lhs, const ModuleElement& rhs) { return lhs += rhs; }
  friend ModuleElement operator-(ModuleElement lhs, const ModuleElement& rhs) { return lhs -= rhs; }
  friend ModuleElement operator*(Scalar c, ModuleElement x) {
    x.mat_ *= c;
    return x;
  }

 private:
  ModuleSpace space_;
  Matrix mat_;
};

class AdjointableOperator {
 public:
  AdjointableOperator(ModuleSpace domain, ModuleSpace codomain, Matrix mat);
  /// Endomorphism of `space`.
  AdjointableOperator(ModuleSpace space, Matrix mat) : AdjointableOperator(space, space, std::move(mat)) {}

  static AdjointableOperator identity(const ModuleSpace& space);
  static AdjointableOperator zero(const ModuleSpace& domain, const ModuleSpace& codomain);

  const ModuleSpace& domain() const noexcept { return domain_; }
  const ModuleSpace& codomain() const noexcept { return codomain_; }
  const Matrix& matrix() const noexcept { return mat_; }
  bool is_endomorphism() const noexcept { return domain_ == codomain_; }

  /// Operator norm; equals the spectral norm of the representing matrix.
  double norm() const;

  AdjointableOperator& operator+=(const AdjointableOperator& other);
  AdjointableOperator& operator-=(const AdjointableOperator& other);
  friend AdjointableOperator operator+(AdjointableOperator lhs, const AdjointableOperator& rhs) {
    return lhs += rhs;
  }
  friend AdjointableOperator operator-(AdjointableOperator lhs, const AdjointableOperator& rhs) {
    return lhs -= rhs;
  }
  friend AdjointableOperator operator*(Scalar c, AdjointableOperator t) {
    t.mat_ *= c;
    return t;
  }

 private:
  ModuleSpace domain_;
  ModuleSpace codomain_;
  Matrix mat_;
};

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y);

ModuleElement apply(const AdjointableOperator& t, const ModuleElement& x);

AdjointableOperator adjoint(const AdjointableOperator& t);

/// s o t (apply t first). Requires t.codomain() == s.domain().
AdjointableOperator compose(const AdjointableOperator& s, const AdjointableOperator& t);

/// T T* on the codomain of T.
AdjointableOperator outer_square(const AdjointableOperator& t);
/// T* T on the domain of T.
AdjointableOperator inner_square(const AdjointableOperator& t);

/// Moore-Penrose inverse via SVD with the relative rank cutoff.
AdjointableOperator pseudo_inverse(const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// Orthogonal projector onto R(T), an endomorphism of the codomain (= T T^+).
AdjointableOperator range_projector(const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// Orthogonal projector onto N(T), an endomorphism of the domain (= I - T^+ T).
AdjointableOperator kernel_projector(const AdjointableOperator& t, const ToleranceConfig& cfg = {});

int rank(const AdjointableOperator& t, const ToleranceConfig& cfg = {});

struct RangeInclusion {
  bool holds = false;
  double residual = 0.0;           // ||(I - P_R(T)) T'||
  double relative_residual = 0.0;  // residual / ||T'|| (0 when T' = 0)
};

/// Decides R(T') subset R(T) for operators with a common codomain.
RangeInclusion range_inclusion(const AdjointableOperator& t_prime, const AdjointableOperator& t,
                               const ToleranceConfig& cfg = {});

struct PsdVerdict {
  bool holds = false;
  double lambda_min = 0.0;  // smallest eigenvalue of Q - P
  double scale = 1.0;       // max(1, ||Q - P||) used for the tolerance
};

/// Decides P <= Q in the order of positive operators. Throws NotSelfAdjoint.
PsdVerdict psd_order(const AdjointableOperator& p, const AdjointableOperator& q,
                     const ToleranceConfig& cfg = {});

/// 0 <= P.
PsdVerdict is_positive(const AdjointableOperator& p, const ToleranceConfig& cfg = {});

/// Hermitian defect of the representing matrix (see linalg::hermitian_defect).
double self_adjoint_defect(const AdjointableOperator& t);

/// Positive square root. Eigenvalues at or below rank_tol * lambda_max are
/// treated as zero so that rank(sqrt(P)) == rank(P). Throws NotSelfAdjoint
/// or NotPositive.
AdjointableOperator operator_sqrt(const AdjointableOperator& p, const ToleranceConfig& cfg = {});

/// |T| = (T* T)^{1/2}.
AdjointableOperator absolute_value(const AdjointableOperator& t, const ToleranceConfig& cfg = {});

/// Operator x ⊕ y |-> a x + b y from A^{n_a + n_b}; a and b share a codomain.
AdjointableOperator stack_domains(const AdjointableOperator& a, const AdjointableOperator& b);

}  // namespace kframe
