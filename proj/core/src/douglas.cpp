#include "kframe/douglas.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace kframe {
namespace {

constexpr double kMajorizationSlack = 1e-6;

double lambda_max(const Matrix& s) {
  const RealVector e = linalg::hermitian_eigenvalues(s);
  return std::max(0.0, e(e.size() - 1));
}

/// Least lambda with N <= lambda M on R(M): lambda_max(M^{+1/2} N M^{+1/2}).
double pencil_lambda(const AdjointableOperator& n, const AdjointableOperator& m, const ToleranceConfig& cfg) {
  const Matrix w = linalg::pinv(operator_sqrt(m, cfg).matrix(), cfg.rank_tol);
  return lambda_max(w * n.matrix() * w);
}

bool majorized(const AdjointableOperator& n, const AdjointableOperator& m, double lambda,
               const ToleranceConfig& cfg) {
  return psd_order(n, Scalar(lambda * (1.0 + kMajorizationSlack)) * m, cfg).holds;
}

/// ||T'* z|| <= mu ||T* z|| on a basis of N(T*) and on random z.
bool norm_inequality(const AdjointableOperator& t_prime, const AdjointableOperator& t, double mu,
                     const ToleranceConfig& cfg) {
  const ModuleSpace& space = t.codomain();
  const Matrix& tp = t_prime.matrix();
  const Matrix& tm = t.matrix();
  const double scale = t_prime.norm();
  const auto holds = [&](const Matrix& z) {
    const double lhs = linalg::spectral_norm(z * tp.adjoint());
    const double rhs = linalg::spectral_norm(z * tm.adjoint());
    return lhs <= mu * rhs * (1.0 + kMajorizationSlack) + cfg.rel_tol * scale * linalg::spectral_norm(z);
  };

  const Matrix pk = kernel_projector(adjoint(t), cfg).matrix();
  for (Eigen::Index i = 0; i < pk.rows(); ++i) {
    if (pk.row(i).norm() <= 1e-3) continue;
    Matrix z = Matrix::Zero(space.k(), space.dim());
    z.row(0) = pk.row(i);
    if (!holds(z)) return false;
  }
  std::mt19937_64 gen(0x646f75676c6173ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int s = 0; s < 16; ++s) {
    Matrix z(space.k(), space.dim());
    for (Eigen::Index i = 0; i < z.size(); ++i) z.data()[i] = Scalar(normal(gen), normal(gen));
    if (!holds(z)) return false;
  }
  return true;
}

Hypothesis positive_hypothesis(std::string name, const AdjointableOperator& op, const ToleranceConfig& cfg) {
  const double defect = self_adjoint_defect(op);
  if (defect > cfg.rel_tol) return {std::move(name), false, defect};
  const PsdVerdict v = is_positive(op, cfg);
  return {std::move(name), v.holds, std::max(0.0, -v.lambda_min)};
}

RangeIdentity compare_projectors(const AdjointableOperator& left, const AdjointableOperator& right,
                                 const ToleranceConfig& cfg) {
  const AdjointableOperator pl = range_projector(left, cfg);
  const AdjointableOperator pr = range_projector(right, cfg);
  RangeIdentity out;
  out.distance = linalg::spectral_norm(pl.matrix() - pr.matrix());
  out.rank_left = rank(left, cfg);
  out.rank_right = rank(right, cfg);
  out.holds = out.distance <= cfg.rel_tol;
  return out;
}

}  // namespace

bool DouglasReport::consistent() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [&](bool v) { return v == verdicts[0]; });
}

DouglasReport douglas_factorize(const AdjointableOperator& t_prime, const AdjointableOperator& t,
                                const ToleranceConfig& cfg) {
  if (!(t_prime.codomain() == t.codomain())) {
    throw DimensionMismatch("douglas_factorize: T' and T must share a codomain");
  }
  DouglasReport out;
  const AdjointableOperator d(t_prime.domain(), t.domain(),
                              t_prime.matrix() * linalg::pinv(t.matrix(), cfg.rank_tol));
  const double scale = t_prime.norm();
  const double err = linalg::spectral_norm(d.matrix() * t.matrix() - t_prime.matrix());
  out.residual = scale > 0.0 ? err / scale : err;
  out.mu = d.norm();

  const RangeInclusion inc = range_inclusion(t_prime, t, cfg);
  out.inclusion_holds = inc.holds;

  const AdjointableOperator n = outer_square(t_prime);
  const AdjointableOperator m = outer_square(t);
  out.pencil_lambda = pencil_lambda(n, m, cfg);

  out.verdicts[0] = majorized(n, m, out.pencil_lambda, cfg);
  out.verdicts[1] = norm_inequality(t_prime, t, out.mu, cfg);
  out.verdicts[2] = out.residual <= cfg.rel_tol;
  out.verdicts[3] = inc.holds;

  if (out.inclusion_holds) {
    out.lambda_min = out.mu * out.mu;
    out.solution = d;
  }
  return out;
}

RangeIdentity sum_range_sqrt_check(const AdjointableOperator& a, const AdjointableOperator& b,
                                   const ToleranceConfig& cfg) {
  if (!(a.codomain() == b.codomain())) {
    throw DimensionMismatch("sum_range_sqrt_check: A and B must share a codomain");
  }
  const AdjointableOperator stacked = stack_domains(a, b);
  const AdjointableOperator root = operator_sqrt(outer_square(a) + outer_square(b), cfg);
  return compare_projectors(stacked, root, cfg);
}

RangeIdentity gram_range_check(const AdjointableOperator& t, const ToleranceConfig& cfg) {
  return compare_projectors(t, outer_square(t), cfg);
}

RangeIdentity sqrt_range_check(const AdjointableOperator& p, const ToleranceConfig& cfg) {
  return compare_projectors(p, operator_sqrt(p, cfg), cfg);
}

SumSolveReport two_term_douglas(const AdjointableOperator& a, const AdjointableOperator& b1,
                                const AdjointableOperator& b2, const ToleranceConfig& cfg) {
  if (!(a.codomain() == b1.codomain()) || !(a.codomain() == b2.codomain())) {
    throw DimensionMismatch("two_term_douglas: A, B1, B2 must share a codomain");
  }
  SumSolveReport out;
  const AdjointableOperator stacked = stack_domains(b1, b2);
  const DouglasReport dr = douglas_factorize(a, stacked, cfg);

  const Matrix d = a.matrix() * linalg::pinv(stacked.matrix(), cfg.rank_tol);
  const Eigen::Index split = b1.domain().dim();
  const AdjointableOperator x(a.domain(), b1.domain(), d.leftCols(split));
  const AdjointableOperator y(a.domain(), b2.domain(), d.rightCols(d.cols() - split));
  const double scale = a.norm();
  const double err = linalg::spectral_norm(x.matrix() * b1.matrix() + y.matrix() * b2.matrix() - a.matrix());
  out.residual = scale > 0.0 ? err / scale : err;

  const AdjointableOperator sum = outer_square(b1) + outer_square(b2);
  const AdjointableOperator aa = outer_square(a);
  out.verdicts[0] = range_inclusion(a, operator_sqrt(sum, cfg), cfg).holds;
  out.verdicts[1] = majorized(aa, sum, pencil_lambda(aa, sum, cfg), cfg);
  out.verdicts[2] = out.residual <= cfg.rel_tol;

  if (dr.inclusion_holds) {
    out.x = x;
    out.y = y;
    out.lambda = dr.mu * dr.mu;
  }
  return out;
}

bool KFrameSumReport::certified() const {
  if (!bounds || !bounds->lower || !theorem_lower_bound) return false;
  if (std::isinf(*theorem_lower_bound)) return std::isinf(*bounds->lower);
  return *bounds->lower >= (1.0 - 1e-6) * *theorem_lower_bound;
}

KFrameSumReport kframe_sum(const FrameFamily& f, const FrameFamily& g, const AdjointableOperator& k,
                           const ToleranceConfig& cfg) {
  if (!(f.space() == g.space()) || f.size() != g.size()) {
    throw DimensionMismatch("kframe_sum: families must share a space and a length");
  }
  KFrameSumReport out;
  const auto kf = kframe_check(f, k, cfg);
  const auto kg = kframe_check(g, k, cfg);
  out.hypotheses.push_back({"F is a K-frame", kf.has_value(), 0.0});
  out.hypotheses.push_back({"G is a K-frame", kg.has_value(), 0.0});

  const AdjointableOperator l1 = synthesis_operator(f);
  const AdjointableOperator l2 = synthesis_operator(g);
  const AdjointableOperator c12 = compose(l1, adjoint(l2));
  const AdjointableOperator c21 = compose(l2, adjoint(l1));
  out.hypotheses.push_back(positive_hypothesis("L1 L2* >= 0", c12, cfg));
  out.hypotheses.push_back(positive_hypothesis("L2 L1* >= 0", c21, cfg));
  out.hypotheses.push_back({"R(L1) + R(L2) closed", true, 0.0});
  out.weak_cross_condition = positive_hypothesis("L1 L2* + L2 L1* >= 0", c12 + c21, cfg).holds;

  if (!out.hypotheses_hold()) return out;

  std::vector<ModuleElement> sum;
  sum.reserve(static_cast<std::size_t>(f.size()));
  for (int j = 0; j < f.size(); ++j) sum.push_back(f[j] + g[j]);
  out.family = FrameFamily(f.space(), std::move(sum));
  out.bounds = kframe_check(*out.family, k, cfg);

  const AdjointableOperator root = operator_sqrt(outer_square(l1) + outer_square(l2), cfg);
  const DouglasReport dr = douglas_factorize(k, root, cfg);
  if (dr.lambda_min) {
    out.lambda = *dr.lambda_min;
    out.theorem_lower_bound =
        *out.lambda > 0.0 ? 1.0 / *out.lambda : std::numeric_limits<double>::infinity();
  }
  return out;
}

}  // namespace kframe
