#include "kframe/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace kframe {
namespace {

std::string shape(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

void require_same_space(const ModuleSpace& a, const ModuleSpace& b, const char* what) {
  if (!(a == b)) {
    throw DimensionMismatch(std::string(what) + ": module spaces differ (k=" + std::to_string(a.k()) +
                            ", n=" + std::to_string(a.n()) + " vs k=" + std::to_string(b.k()) +
                            ", n=" + std::to_string(b.n()) + ")");
  }
}

}  // namespace

void ToleranceConfig::validate() const {
  if (!(rel_tol >= 0.0) || !std::isfinite(rel_tol)) {
    throw std::invalid_argument("rel_tol must be a finite nonnegative number");
  }
  if (!(rank_tol >= 0.0) || !std::isfinite(rank_tol)) {
    throw std::invalid_argument("rank_tol must be a finite nonnegative number");
  }
}

ModuleSpace::ModuleSpace(int k, int n) : algebra_{k}, n_(n) {
  if (k < 1) throw DimensionMismatch("algebra size k must be >= 1, got " + std::to_string(k));
  if (n < 1) throw DimensionMismatch("module rank n must be >= 1, got " + std::to_string(n));
}

// ---------------------------------------------------------------------------
// ModuleElement

ModuleElement::ModuleElement(ModuleSpace space, Matrix mat) : space_(space), mat_(std::move(mat)) {
  if (mat_.rows() != space_.k() || mat_.cols() != space_.dim()) {
    throw DimensionMismatch("module element must be " + shape(space_.k(), space_.dim()) + ", got " +
                            shape(mat_.rows(), mat_.cols()));
  }
}

ModuleElement ModuleElement::zero(const ModuleSpace& space) {
  return {space, Matrix::Zero(space.k(), space.dim())};
}

ModuleElement ModuleElement::basis(const ModuleSpace& space, int i) {
  if (i < 0 || i >= space.n()) throw DimensionMismatch("basis index out of range");
  Matrix m = Matrix::Zero(space.k(), space.dim());
  m.block(0, i * space.k(), space.k(), space.k()).setIdentity();
  return {space, std::move(m)};
}

AlgebraElement ModuleElement::block(int i) const {
  if (i < 0 || i >= space_.n()) throw DimensionMismatch("block index out of range");
  return mat_.block(0, i * space_.k(), space_.k(), space_.k());
}

double ModuleElement::norm() const { return linalg::spectral_norm(mat_); }

ModuleElement ModuleElement::left_multiply(const AlgebraElement& a) const {
  if (a.rows() != space_.k() || a.cols() != space_.k()) {
    throw DimensionMismatch("algebra element must be " + shape(space_.k(), space_.k()));
  }
  return {space_, a * mat_};
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& other) {
  require_same_space(space_, other.space_, "module element sum");
  mat_ += other.mat_;
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& other) {
  require_same_space(space_, other.space_, "module element difference");
  mat_ -= other.mat_;
  return *this;
}

// ---------------------------------------------------------------------------
// AdjointableOperator

AdjointableOperator::AdjointableOperator(ModuleSpace domain, ModuleSpace codomain, Matrix mat)
    : domain_(domain), codomain_(codomain), mat_(std::move(mat)) {
  if (domain_.k() != codomain_.k()) {
    throw DimensionMismatch("domain and codomain must be modules over the same algebra");
  }
  if (mat_.rows() != domain_.dim() || mat_.cols() != codomain_.dim()) {
    throw DimensionMismatch("operator matrix must be (kn)x(km) = " + shape(domain_.dim(), codomain_.dim()) +
                            ", got " + shape(mat_.rows(), mat_.cols()));
  }
}

AdjointableOperator AdjointableOperator::identity(const ModuleSpace& space) {
  return {space, Matrix::Identity(space.dim(), space.dim())};
}

AdjointableOperator AdjointableOperator::zero(const ModuleSpace& domain, const ModuleSpace& codomain) {
  return {domain, codomain, Matrix::Zero(domain.dim(), codomain.dim())};
}

double AdjointableOperator::norm() const { return linalg::spectral_norm(mat_); }

AdjointableOperator& AdjointableOperator::operator+=(const AdjointableOperator& other) {
  require_same_space(domain_, other.domain_, "operator sum (domain)");
  require_same_space(codomain_, other.codomain_, "operator sum (codomain)");
  mat_ += other.mat_;
  return *this;
}

AdjointableOperator& AdjointableOperator::operator-=(const AdjointableOperator& other) {
  require_same_space(domain_, other.domain_, "operator difference (domain)");
  require_same_space(codomain_, other.codomain_, "operator difference (codomain)");
  mat_ -= other.mat_;
  return *this;
}

// ---------------------------------------------------------------------------
// Operations

AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y) {
  require_same_space(x.space(), y.space(), "inner_product");
  return x.matrix() * y.matrix().adjoint();
}

ModuleElement apply(const AdjointableOperator& t, const ModuleElement& x) {
  require_same_space(t.domain(), x.space(), "apply");
  return {t.codomain(), x.matrix() * t.matrix()};
}

AdjointableOperator adjoint(const AdjointableOperator& t) {
  return {t.codomain(), t.domain(), t.matrix().adjoint()};
}

AdjointableOperator compose(const AdjointableOperator& s, const AdjointableOperator& t) {
  require_same_space(t.codomain(), s.domain(), "compose");
  return {t.domain(), s.codomain(), t.matrix() * s.matrix()};
}

AdjointableOperator outer_square(const AdjointableOperator& t) {
  return {t.codomain(), t.matrix().adjoint() * t.matrix()};
}

AdjointableOperator inner_square(const AdjointableOperator& t) {
  return {t.domain(), t.matrix() * t.matrix().adjoint()};
}

AdjointableOperator pseudo_inverse(const AdjointableOperator& t, const ToleranceConfig& cfg) {
  return {t.codomain(), t.domain(), linalg::pinv(t.matrix(), cfg.rank_tol)};
}

AdjointableOperator range_projector(const AdjointableOperator& t, const ToleranceConfig& cfg) {
  // R(T) = {X Theta : X}: matrices whose rows lie in the row space of Theta.
  const linalg::Svd d = linalg::svd(t.matrix());
  const int r = linalg::numerical_rank(d.sigma, cfg.rank_tol);
  const auto v = d.v.leftCols(r);
  return {t.codomain(), v * v.adjoint()};
}

AdjointableOperator kernel_projector(const AdjointableOperator& t, const ToleranceConfig& cfg) {
  const linalg::Svd d = linalg::svd(t.matrix());
  const int r = linalg::numerical_rank(d.sigma, cfg.rank_tol);
  const auto u = d.u.leftCols(r);
  Matrix p = Matrix::Identity(t.domain().dim(), t.domain().dim());
  p.noalias() -= u * u.adjoint();
  return {t.domain(), std::move(p)};
}

int rank(const AdjointableOperator& t, const ToleranceConfig& cfg) {
  return linalg::numerical_rank(t.matrix(), cfg.rank_tol);
}

RangeInclusion range_inclusion(const AdjointableOperator& t_prime, const AdjointableOperator& t,
                               const ToleranceConfig& cfg) {
  require_same_space(t_prime.codomain(), t.codomain(), "range_inclusion");
  const Matrix p = range_projector(t, cfg).matrix();
  const Matrix outside = t_prime.matrix() - t_prime.matrix() * p;
  RangeInclusion out;
  out.residual = linalg::spectral_norm(outside);
  const double scale = t_prime.norm();
  out.relative_residual = scale > 0.0 ? out.residual / scale : 0.0;
  out.holds = out.residual <= cfg.rel_tol * scale;
  return out;
}

double self_adjoint_defect(const AdjointableOperator& t) {
  if (!t.is_endomorphism()) return std::numeric_limits<double>::infinity();
  return linalg::hermitian_defect(t.matrix());
}

namespace {

void require_self_adjoint(const AdjointableOperator& t, const ToleranceConfig& cfg, const char* what) {
  if (!t.is_endomorphism()) {
    throw DimensionMismatch(std::string(what) + ": operator must be an endomorphism");
  }
  const double defect = linalg::hermitian_defect(t.matrix());
  if (defect > cfg.rel_tol) {
    throw NotSelfAdjoint(std::string(what) + ": operator is not self-adjoint (defect " +
                         std::to_string(defect) + ")");
  }
}

}  // namespace

PsdVerdict psd_order(const AdjointableOperator& p, const AdjointableOperator& q, const ToleranceConfig& cfg) {
  require_self_adjoint(p, cfg, "psd_order");
  require_self_adjoint(q, cfg, "psd_order");
  require_same_space(p.domain(), q.domain(), "psd_order");
  const RealVector eig = linalg::hermitian_eigenvalues(q.matrix() - p.matrix());
  PsdVerdict out;
  out.lambda_min = eig(0);
  out.scale = std::max({1.0, std::abs(eig(0)), std::abs(eig(eig.size() - 1))});
  out.holds = out.lambda_min >= -cfg.rel_tol * out.scale;
  return out;
}

PsdVerdict is_positive(const AdjointableOperator& p, const ToleranceConfig& cfg) {
  return psd_order(AdjointableOperator::zero(p.domain(), p.domain()), p, cfg);
}

AdjointableOperator operator_sqrt(const AdjointableOperator& p, const ToleranceConfig& cfg) {
  require_self_adjoint(p, cfg, "operator_sqrt");
  const linalg::HermitianEig e = linalg::hermitian_eig(p.matrix());
  const Eigen::Index dim = e.values.size();
  const double top = std::max(std::abs(e.values(0)), std::abs(e.values(dim - 1)));
  if (e.values(0) < -cfg.rel_tol * std::max(1.0, top)) {
    throw NotPositive("operator_sqrt: smallest eigenvalue " + std::to_string(e.values(0)) +
                      " is negative beyond tolerance");
  }
  const double cutoff = cfg.rank_tol * top;
  RealVector root(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    root(i) = e.values(i) > cutoff ? std::sqrt(e.values(i)) : 0.0;
  }
  Matrix s = e.vectors * root.asDiagonal() * e.vectors.adjoint();
  return {p.domain(), linalg::hermitian_part(s)};
}

AdjointableOperator absolute_value(const AdjointableOperator& t, const ToleranceConfig& cfg) {
  return operator_sqrt(inner_square(t), cfg);
}

AdjointableOperator stack_domains(const AdjointableOperator& a, const AdjointableOperator& b) {
  require_same_space(a.codomain(), b.codomain(), "stack_domains");
  const ModuleSpace domain(a.domain().k(), a.domain().n() + b.domain().n());
  Matrix m(domain.dim(), a.codomain().dim());
  m << a.matrix(), b.matrix();
  return {domain, a.codomain(), std::move(m)};
}

}  // namespace kframe
