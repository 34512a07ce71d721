#include "kframe/unitary.hpp"

#include <algorithm>
#include <string>

namespace kframe {
namespace {

double unitary_defect(const AdjointableOperator& u) {
  const auto n = u.domain().dim();
  const Matrix id = Matrix::Identity(n, n);
  return std::max(linalg::spectral_norm(u.matrix() * u.matrix().adjoint() - id),
                  linalg::spectral_norm(u.matrix().adjoint() * u.matrix() - id));
}

void require_space(const UnitarySystem& u, const ModuleSpace& s, const char* what) {
  if (!(u.space() == s)) throw DimensionMismatch(std::string(what) + ": not in the system's space");
}

}  // namespace

UnitarySystem::UnitarySystem(ModuleSpace space, std::vector<AdjointableOperator> operators,
                             const ToleranceConfig& cfg)
    : space_(space), operators_(std::move(operators)) {
  bool has_identity = false;
  const Matrix id = Matrix::Identity(space_.dim(), space_.dim());
  for (const auto& op : operators_) {
    if (!op.is_endomorphism() || !(op.domain() == space_)) {
      throw DimensionMismatch("unitary system: operator is not an endomorphism of the space");
    }
    if (unitary_defect(op) > cfg.rel_tol) throw NotAFrame("unitary system: operator is not unitary");
    if (linalg::spectral_norm(op.matrix() - id) <= cfg.rel_tol) has_identity = true;
  }
  if (!has_identity) throw NotAFrame("unitary system: identity missing");
}

FrameFamily orbit(const UnitarySystem& u, const ModuleElement& psi) {
  require_space(u, psi.space(), "orbit");
  std::vector<ModuleElement> elems;
  elems.reserve(u.operators().size());
  for (const auto& op : u.operators()) elems.push_back(apply(op, psi));
  return FrameFamily(u.space(), std::move(elems));
}

WanderingReport wandering_check(const UnitarySystem& u, const ModuleElement& psi, const ToleranceConfig& cfg) {
  const FrameFamily orb = orbit(u, psi);
  const Matrix& theta = orb.analysis().matrix();
  const Matrix gram = theta.adjoint() * theta;
  WanderingReport out;
  out.gram_residual = linalg::spectral_norm(gram - Matrix::Identity(gram.rows(), gram.cols()));
  out.wandering = out.gram_residual <= cfg.rel_tol && rank(orb.analysis(), cfg) == u.space().dim();
  return out;
}

bool is_wandering(const UnitarySystem& u, const ModuleElement& psi, const ToleranceConfig& cfg) {
  return wandering_check(u, psi, cfg).wandering;
}

double local_commutant_check(const AdjointableOperator& a, const UnitarySystem& u, const ModuleElement& psi) {
  require_space(u, psi.space(), "local_commutant_check");
  if (!a.is_endomorphism() || !(a.domain() == u.space())) {
    throw DimensionMismatch("local_commutant_check: A must be an endomorphism of the system's space");
  }
  const ModuleElement a_psi = apply(a, psi);
  double worst = 0.0;
  for (const auto& op : u.operators()) {
    worst = std::max(worst, (apply(a, apply(op, psi)) - apply(op, a_psi)).norm());
  }
  return worst;
}

bool in_local_commutant(const AdjointableOperator& a, const UnitarySystem& u, const ModuleElement& psi,
                        const ToleranceConfig& cfg) {
  return local_commutant_check(a, u, psi) <= cfg.rel_tol * std::max(1.0, a.norm() * psi.norm());
}

std::optional<FrameBounds> kframe_vector_check(const UnitarySystem& u, const ModuleElement& eta,
                                               const AdjointableOperator& k, const ToleranceConfig& cfg) {
  return kframe_check(orbit(u, eta), k, cfg);
}

GeneratorReport generator_from_vector(const UnitarySystem& u, const ModuleElement& psi, const ModuleElement& eta,
                                      const AdjointableOperator& k, const ToleranceConfig& cfg) {
  require_space(u, eta.space(), "generator_from_vector");
  if (!is_wandering(u, psi, cfg)) throw PreconditionFailed("psi is wandering", "generator_from_vector: psi is not wandering");
  const AdjointableOperator t_psi = analysis_operator(orbit(u, psi));
  const AdjointableOperator t_eta = analysis_operator(orbit(u, eta));
  AdjointableOperator a = compose(adjoint(t_eta), t_psi);
  const double residual = local_commutant_check(a, u, psi);
  const double vec = (apply(a, psi) - eta).norm();
  const bool inc = range_inclusion(k, a, cfg).holds;
  return GeneratorReport{std::move(a), residual, vec, inc};
}

GeneratedVector vector_from_generator(const UnitarySystem& u, const ModuleElement& psi, const AdjointableOperator& a,
                                      const AdjointableOperator& k, const ToleranceConfig& cfg) {
  if (!is_wandering(u, psi, cfg)) throw PreconditionFailed("psi is wandering", "vector_from_generator: psi is not wandering");
  if (!in_local_commutant(a, u, psi, cfg)) {
    throw PreconditionFailed("A in the local commutant", "vector_from_generator: A is not in the local commutant");
  }
  if (!range_inclusion(k, a, cfg).holds) {
    throw PreconditionFailed("R(K) subset R(A)", "vector_from_generator: R(K) is not contained in R(A)");
  }
  ModuleElement eta = apply(a, psi);
  auto bounds = kframe_vector_check(u, eta, k, cfg);
  if (!bounds) throw InternalViolation("vector_from_generator: A psi is not a K-frame vector");
  return GeneratedVector{std::move(eta), bounds};
}

UnitarySystem cyclic_shift_system(int d, int k) {
  const ModuleSpace space(k, d);
  Matrix perm = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) perm(i, (i + 1) % d) = 1.0;
  Matrix shift = Matrix::Zero(space.dim(), space.dim());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (perm(i, j) != Scalar(0.0)) shift.block(i * k, j * k, k, k).setIdentity();
    }
  }
  std::vector<AdjointableOperator> ops;
  Matrix power = Matrix::Identity(space.dim(), space.dim());
  for (int p = 0; p < d; ++p) {
    ops.emplace_back(space, power);
    power = power * shift;
  }
  return UnitarySystem(space, std::move(ops));
}

double circulant_deviation(const AdjointableOperator& a) {
  if (!a.is_endomorphism()) throw DimensionMismatch("circulant_deviation: A must be an endomorphism");
  const int k = a.domain().k();
  const int d = a.domain().n();
  const Matrix& m = a.matrix();
  double worst = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const int c = ((j - i) % d + d) % d;
      const Matrix diff = m.block(i * k, j * k, k, k) - m.block(0, c * k, k, k);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

}  // namespace kframe
