#include "kframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "kframe/douglas.hpp"

namespace kframe {
namespace {

AdjointableOperator build_analysis(const ModuleSpace& space, const std::vector<ModuleElement>& elements) {
  const int k = space.k();
  const int count = static_cast<int>(elements.size());
  Matrix m(space.dim(), k * count);
  for (int j = 0; j < count; ++j) {
    m.middleCols(j * k, k) = elements[static_cast<std::size_t>(j)].matrix().adjoint();
  }
  return {space, ModuleSpace(k, count), std::move(m)};
}

const std::vector<ModuleElement>& checked(const ModuleSpace& space, const std::vector<ModuleElement>& elements) {
  if (elements.empty()) throw DimensionMismatch("frame family must have at least one element");
  for (const auto& x : elements) {
    if (!(x.space() == space)) throw DimensionMismatch("frame family elements must share one module space");
  }
  return elements;
}

double lambda_max(const Matrix& s) {
  const RealVector e = linalg::hermitian_eigenvalues(s);
  return std::max(0.0, e(e.size() - 1));
}

}  // namespace

FrameFamily::FrameFamily(ModuleSpace space, std::vector<ModuleElement> elements)
    : space_(space),
      elements_(checked(space, elements)),
      analysis_(build_analysis(space_, elements_)),
      frame_operator_(space_, linalg::hermitian_part(analysis_.matrix() * analysis_.matrix().adjoint())) {}

FrameFamily FrameFamily::standard_basis(const ModuleSpace& space) {
  std::vector<ModuleElement> e;
  e.reserve(static_cast<std::size_t>(space.n()));
  for (int i = 0; i < space.n(); ++i) e.push_back(ModuleElement::basis(space, i));
  return {space, std::move(e)};
}

FrameFamily FrameFamily::mapped(const AdjointableOperator& m) const {
  if (!(m.domain() == space_)) throw DimensionMismatch("mapped: operator domain differs from family space");
  std::vector<ModuleElement> out;
  out.reserve(elements_.size());
  for (const auto& x : elements_) out.push_back(apply(m, x));
  return {m.codomain(), std::move(out)};
}

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::bessel: return "bessel";
    case BoundKind::frame: return "frame";
    case BoundKind::kframe: return "kframe";
  }
  return "unknown";
}

AdjointableOperator analysis_operator(const FrameFamily& f) { return f.analysis(); }

AdjointableOperator synthesis_operator(const FrameFamily& f) { return adjoint(f.analysis()); }

AdjointableOperator frame_operator(const FrameFamily& f) { return f.frame_operator(); }

FrameBounds bessel_check(const FrameFamily& f, const ToleranceConfig& cfg) {
  const AdjointableOperator& s = f.frame_operator();
  const double d = lambda_max(s.matrix());
  const auto dI = Scalar(d) * AdjointableOperator::identity(f.space());
  if (!psd_order(s, dI, cfg).holds) {
    throw InternalViolation("bessel_check: S <= D_opt I failed to certify");
  }
  return {BoundKind::bessel, std::nullopt, d};
}

std::optional<FrameBounds> frame_check(const FrameFamily& f, const ToleranceConfig& cfg) {
  const RealVector e = linalg::hermitian_eigenvalues(f.frame_operator().matrix());
  const double lo = e(0);
  const double hi = e(e.size() - 1);
  if (!(hi > 0.0) || !(lo > cfg.rel_tol * hi)) return std::nullopt;
  return FrameBounds{BoundKind::frame, lo, hi};
}

std::optional<double> optimal_lower_bound(const AdjointableOperator& s, const AdjointableOperator& q,
                                          const ToleranceConfig& cfg) {
  if (!(s.domain() == q.domain()) || !s.is_endomorphism() || !q.is_endomorphism()) {
    throw DimensionMismatch("optimal_lower_bound: operands must be endomorphisms of one space");
  }
  if (rank(q, cfg) == 0) return std::numeric_limits<double>::infinity();
  const AdjointableOperator root_s = operator_sqrt(s, cfg);
  const AdjointableOperator root_q = operator_sqrt(q, cfg);
  if (!range_inclusion(root_q, root_s, cfg).holds) return std::nullopt;

  // C Q <= S  <=>  C S^{+1/2} Q S^{+1/2} <= P_R(S).
  const Matrix w = linalg::pinv(root_s.matrix(), cfg.rank_tol);
  const double top = lambda_max(w * q.matrix() * w);
  if (!(top > 0.0)) return std::nullopt;
  return 1.0 / top;
}

std::optional<FrameBounds> kframe_check(const FrameFamily& f, const AdjointableOperator& k,
                                        const ToleranceConfig& cfg) {
  if (!k.is_endomorphism() || !(k.domain() == f.space())) {
    throw DimensionMismatch("kframe_check: K must be an endomorphism of the family's space");
  }
  const AdjointableOperator& s = f.frame_operator();
  const auto lower = optimal_lower_bound(s, outer_square(k), cfg);
  if (!lower) return std::nullopt;
  return FrameBounds{BoundKind::kframe, *lower, lambda_max(s.matrix())};
}

FrameFamily canonical_dual(const FrameFamily& f, const ToleranceConfig& cfg) {
  if (!frame_check(f, cfg)) throw NotAFrame("canonical_dual: family is not a frame");
  return f.mapped(pseudo_inverse(f.frame_operator(), cfg));
}

Reconstruction reconstruct(const FrameFamily& f, const ModuleElement& x, const ToleranceConfig& cfg) {
  if (!(x.space() == f.space())) throw DimensionMismatch("reconstruct: element not in the family's space");
  if (!frame_check(f, cfg)) throw NotAFrame("reconstruct: family is not a frame");
  const AdjointableOperator s_inv = pseudo_inverse(f.frame_operator(), cfg);
  ModuleElement value = ModuleElement::zero(f.space());
  ModuleElement dual_value = ModuleElement::zero(f.space());
  for (const auto& xj : f.elements()) {
    const ModuleElement dj = apply(s_inv, xj);
    value += ModuleElement(f.space(), inner_product(x, dj) * xj.matrix());
    dual_value += ModuleElement(f.space(), inner_product(x, xj) * dj.matrix());
  }
  const double scale = x.norm();
  const auto rel = [&](const ModuleElement& v) {
    const double err = (v - x).norm();
    return scale > 0.0 ? err / scale : err;
  };
  const double r = rel(value);
  const double dr = rel(dual_value);
  return {std::move(value), std::move(dual_value), r, dr};
}

AtomicDecomposition atomic_coefficients(const FrameFamily& f, const AdjointableOperator& k,
                                        const ModuleElement& x, const ToleranceConfig& cfg) {
  if (!k.is_endomorphism() || !(k.domain() == f.space()) || !(x.space() == f.space())) {
    throw DimensionMismatch("atomic_coefficients: K and x must live on the family's space");
  }
  const AdjointableOperator l = synthesis_operator(f);
  const DouglasReport dr = douglas_factorize(k, l, cfg);
  if (!dr.inclusion_holds || !dr.solution) {
    throw NotAtomic("not an atomic system for K: R(K) is not contained in R(T*)");
  }
  const AdjointableOperator& d = *dr.solution;
  const ModuleElement coeffs = apply(d, x);

  AtomicDecomposition out;
  out.bound = dr.mu * dr.mu;
  const int kk = f.space().k();
  Matrix combo = Matrix::Zero(kk, f.space().dim());
  Matrix gram = Matrix::Zero(kk, kk);
  for (int j = 0; j < f.size(); ++j) {
    AlgebraElement a = coeffs.block(j);
    combo += a * f[j].matrix();
    gram += a * a.adjoint();
    out.coefficients.push_back(std::move(a));
  }
  const ModuleElement kx = apply(k, x);
  out.synthesis_residual = linalg::spectral_norm(combo - kx.matrix()) / std::max(1.0, kx.norm());

  const AlgebraElement bound = out.bound * inner_product(x, x) - gram;
  const RealVector e = linalg::hermitian_eigenvalues(bound);
  const double scale = std::max({1.0, std::abs(e(0)), std::abs(e(e.size() - 1))});
  out.bound_certified = e(0) >= -cfg.rel_tol * scale;
  return out;
}

AtomicSystemReport atomic_system_check(const FrameFamily& f, const AdjointableOperator& k,
                                       const ToleranceConfig& cfg) {
  AtomicSystemReport out;
  const AdjointableOperator l = synthesis_operator(f);
  const RangeInclusion inc = range_inclusion(k, l, cfg);
  out.inclusion_residual = inc.relative_residual;
  out.conditions[0] = inc.holds;

  const DouglasReport dr = douglas_factorize(k, l, cfg);
  out.factorization_residual = dr.residual;
  out.conditions[2] = dr.verdicts[2];

  const auto kb = kframe_check(f, k, cfg);
  out.upper = bessel_check(f, cfg).upper;
  if (!kb) {
    out.conditions[1] = false;
    return out;
  }
  out.lower = kb->lower;

  // Norm form: B ||K* x||^2 <= ||sum <x,x_j><x_j,x>|| <= C ||x||^2 on samples.
  const double b = std::isfinite(*kb->lower) ? *kb->lower : 1.0;
  const Matrix& s = f.frame_operator().matrix();
  const AdjointableOperator k_adj = adjoint(k);
  std::mt19937_64 gen(0x6b6672616d65ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  const ModuleSpace& space = f.space();
  bool ok = true;
  const int random_samples = 32;
  for (int t = 0; t < space.n() + random_samples && ok; ++t) {
    Matrix xm(space.k(), space.dim());
    if (t < space.n()) {
      xm = ModuleElement::basis(space, t).matrix();
    } else {
      for (Eigen::Index i = 0; i < xm.size(); ++i) xm.data()[i] = Scalar(normal(gen), normal(gen));
    }
    const ModuleElement x(space, xm);
    const double mid = linalg::spectral_norm(xm * s * xm.adjoint());
    const double kx = apply(k_adj, x).norm();
    const double xx = x.norm();
    const double slack = cfg.rel_tol * std::max(1.0, out.upper * xx * xx);
    ok = b * kx * kx <= mid * (1.0 + cfg.rel_tol) + slack && mid <= out.upper * xx * xx * (1.0 + cfg.rel_tol) + slack;
    ++out.samples;
  }
  out.conditions[1] = ok;
  return out;
}

FrameFamily construct_atomic_system(const AdjointableOperator& k) {
  return FrameFamily::standard_basis(k.domain());
}

SynthesisCharacterization kframe_via_synthesis(const FrameFamily& f, const AdjointableOperator& k,
                                               const ToleranceConfig& cfg) {
  SynthesisCharacterization out;
  const AdjointableOperator l = synthesis_operator(f);
  const ModuleSpace coeffs(f.space().k(), f.size());
  for (int j = 0; j < f.size(); ++j) {
    const ModuleElement lj = apply(l, ModuleElement::basis(coeffs, j));
    out.basis_residual = std::max(out.basis_residual, (lj - f[j]).norm());
  }
  out.inclusion = range_inclusion(k, l, cfg);
  out.verdict = out.basis_residual <= cfg.rel_tol * std::max(1.0, f.frame_operator().norm()) && out.inclusion.holds;
  return out;
}

}  // namespace kframe
