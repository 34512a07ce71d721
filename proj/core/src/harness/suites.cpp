#include "kframe/harness/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "kframe/douglas.hpp"
#include "kframe/frames.hpp"
#include "kframe/harness/instances.hpp"
#include "kframe/harness/rng.hpp"
#include "kframe/oracles.hpp"
#include "kframe/transforms.hpp"
#include "kframe/unitary.hpp"

namespace kframe::harness {
namespace {

struct Trial {
  bool satisfying = false;
  bool violation = false;
  double residual = 0.0;
  std::string detail;

  void fail(const std::string& why) {
    if (!violation) detail = why;
    violation = true;
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void track(double r) {
    if (std::isfinite(r)) residual = std::max(residual, r);
  }
};

using TrialFn = std::function<void(Rng&, const ToleranceConfig&, Trial&)>;

struct Suite {
  SuiteInfo info;
  TrialFn run;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

ModuleSpace draw_space(Rng& rng, int kmax, int nmax) { return ModuleSpace(rng.integer(1, kmax), rng.integer(1, nmax)); }

std::uint64_t draw_seed(Rng& rng) { return rng.engine()(); }

double rel_diff(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return (std::isinf(a) && std::isinf(b)) ? 0.0 : kInf;
  return std::abs(a - b) / std::max({1e-300, std::abs(a), std::abs(b)});
}

double shortfall(double measured, double derived) {
  if (std::isinf(derived)) return std::isinf(measured) ? 0.0 : kInf;
  if (derived <= 0.0) return 0.0;
  return std::max(0.0, (derived - measured) / derived);
}

Matrix eye(Eigen::Index n) { return Matrix::Identity(n, n); }

/// Operator of random positive rank; R(K) is generic.
AdjointableOperator generic_operator(Rng& rng, const ModuleSpace& space) {
  const int dim = space.dim();
  return AdjointableOperator(space, rng.with_rank(dim, dim, rng.integer(1, dim)));
}

/// (F, K) with K-frames and non-K-frames in roughly equal numbers.
KFramePair mixed_kframe(Rng& rng, const ModuleSpace& space, int J) {
  KFramePair p = random_kframe(rng, space, J);
  if (rng.coin()) return p;
  return {std::move(p.frame), generic_operator(rng, space)};
}

// ---------------------------------------------------------------- range/kernel

void range_kernel_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  t.satisfying = true;
  const int k = rng.integer(1, 3);
  const ModuleSpace dom(k, rng.integer(1, 6));
  const ModuleSpace cod(k, rng.integer(1, 6));
  const AdjointableOperator op(dom, cod, rng.with_rank(dom.dim(), cod.dim(), rng.integer(0, std::min(dom.dim(), cod.dim()))));

  const AdjointableOperator p_range = range_projector(op, cfg);
  const AdjointableOperator p_ker_adj = kernel_projector(adjoint(op), cfg);
  const double dual = linalg::spectral_norm(p_ker_adj.matrix() - (eye(cod.dim()) - p_range.matrix()));
  t.track(dual);
  t.expect(dual <= 1e-9, "N(T*) is not the orthogonal complement of R(T)");
  t.expect(rank(p_range, cfg) == rank(range_projector(adjoint(op), cfg), cfg), "rank R(T) != rank R(T*)");

  // Moore-Penrose identities on the matrices: A A+ A = A, A+ A A+ = A+, both products Hermitian.
  const Matrix& a = op.matrix();
  const Matrix ap = pseudo_inverse(op, cfg).matrix();
  const double na = std::max(1.0, linalg::spectral_norm(a));
  const double nap = std::max(1.0, linalg::spectral_norm(ap));
  const double mp = std::max({linalg::spectral_norm(a * ap * a - a) / na, linalg::spectral_norm(ap * a * ap - ap) / nap,
                              linalg::hermitian_defect(a * ap), linalg::hermitian_defect(ap * a)});
  t.track(mp);
  t.expect(mp <= 1e-9, "Moore-Penrose identities fail");

  const AdjointableOperator abs_t = absolute_value(op, cfg);
  const AdjointableOperator tt = inner_square(op);
  const double sq = linalg::spectral_norm(abs_t.matrix() * abs_t.matrix() - tt.matrix()) / (1.0 + tt.norm());
  t.track(sq);
  t.expect(sq <= 1e-9, "|T|^2 != T*T");
  t.expect(rank(abs_t, cfg) == rank(op, cfg), "rank |T| != rank T");
}

// ---------------------------------------------------------------- Douglas

void douglas_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  InstanceSpec spec;
  spec.seed = draw_seed(rng);
  spec.k = rng.integer(1, 3);
  spec.n = rng.integer(1, 6);
  spec.J = 1;
  spec.scenario = Scenario::douglas_pair;
  const Instance inst = generate_instance(spec, cfg);
  const DouglasReport r = douglas_factorize(*inst.T_prime, *inst.T, cfg);
  t.satisfying = r.inclusion_holds;
  t.expect(r.consistent(), "the four Douglas conditions disagree");
  if (!r.inclusion_holds) return;
  t.track(r.residual);
  t.expect(r.residual <= 1e-8, "factorization residual too large");
  t.expect(r.solution.has_value() && r.lambda_min.has_value(), "solution missing");
  const double lambda = *r.lambda_min;
  if (lambda > 0.0) {
    const AdjointableOperator lhs = outer_square(*inst.T_prime);
    const AdjointableOperator rhs = outer_square(*inst.T);
    t.expect(psd_order(lhs, Scalar(lambda * (1.0 + 1e-6)) * rhs, cfg).holds, "lambda_min is not admissible");
    t.expect(!psd_order(lhs, Scalar(lambda * (1.0 - 1e-3)) * rhs, cfg).holds, "lambda_min is not minimal");
  }
}

// ---------------------------------------------------------------- frames

void bessel_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  t.satisfying = true;
  const ModuleSpace space = draw_space(rng, 3, 6);
  const FrameFamily f = random_family(rng, space, rng.integer(1, 12));
  const int dim = space.dim();
  const AdjointableOperator m(space, rng.with_rank(dim, dim, rng.integer(0, dim), 0.1, 3.0));
  const BesselImage img = bessel_image(f, m, cfg);
  const double excess = img.certified_bound > 0.0 ? (img.optimal_bound - img.certified_bound) / img.certified_bound
                                                  : img.optimal_bound;
  t.track(std::max(0.0, excess));
  t.expect(img.optimal_bound <= img.certified_bound * (1.0 + 1e-9) + 1e-300, "Bessel image bound exceeds D ||M||^2");

  const double d = bessel_check(f, cfg).upper;
  if (d > 0.0) {
    const AdjointableOperator below(space, Scalar(d * (1.0 - 1e-6)) * eye(dim));
    t.expect(!psd_order(f.frame_operator(), below, cfg).holds, "D_opt is not minimal");
  }
  const double synth = synthesis_operator(f).norm();
  t.expect(d <= synth * synth * (1.0 + 1e-9), "D_opt exceeds ||synthesis||^2");
}

void reconstruction_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  t.satisfying = true;
  InstanceSpec spec;
  spec.seed = draw_seed(rng);
  spec.k = rng.integer(1, 3);
  spec.n = rng.integer(1, 5);
  spec.J = rng.integer(spec.n, 16);
  spec.scenario = Scenario::frame;
  const Instance inst = generate_instance(spec, cfg);
  for (int i = 0; i < 100; ++i) {
    const ModuleElement x(inst.space, rng.gaussian(inst.space.k(), inst.space.dim()));
    const Reconstruction r = reconstruct(*inst.frame, x, cfg);
    t.track(std::max(r.residual, r.dual_residual));
    t.expect(r.residual <= 1e-9 && r.dual_residual <= 1e-9, "reconstruction error above 1e-9");
  }
}

void kframe_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const ModuleSpace space = draw_space(rng, 2, 4);
  const KFramePair p = mixed_kframe(rng, space, rng.integer(1, 8));
  const auto bounds = kframe_check(p.frame, p.K, cfg);
  const SynthesisCharacterization via = kframe_via_synthesis(p.frame, p.K, cfg);
  t.satisfying = bounds.has_value();
  t.expect(bounds.has_value() == via.verdict, "pencil and synthesis characterizations disagree");

  const auto as_frame = frame_check(p.frame, cfg);
  const auto with_identity = kframe_check(p.frame, AdjointableOperator::identity(space), cfg);
  t.expect(as_frame.has_value() == with_identity.has_value(), "frame_check and kframe_check(F, I) disagree");
  if (as_frame && with_identity) {
    t.expect(rel_diff(*as_frame->lower, *with_identity->lower) <= 1e-9, "frame lower bound != K-frame bound at K = I");
  }
  if (bounds && std::isfinite(*bounds->lower)) {
    const double oracle = kframe_bound_bisection_oracle(p.frame, p.K, cfg);
    const double diff = rel_diff(*bounds->lower, oracle);
    t.track(diff);
    t.expect(diff <= 1e-6, "C_opt disagrees with the bisection oracle");
  }
}

void atomic_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const ModuleSpace space = draw_space(rng, 2, 4);
  const KFramePair p = mixed_kframe(rng, space, rng.integer(1, 8));
  const AtomicSystemReport rep = atomic_system_check(p.frame, p.K, cfg);
  const bool is_kframe = kframe_check(p.frame, p.K, cfg).has_value();
  t.satisfying = rep.conditions[0];
  t.expect(rep.consistent(), "atomic-system conditions disagree");
  t.expect(rep.conditions[0] == is_kframe, "atomic verdict differs from the K-frame verdict");
  if (rep.conditions[0]) {
    const ModuleElement x(space, rng.gaussian(space.k(), space.dim()));
    const AtomicDecomposition dec = atomic_coefficients(p.frame, p.K, x, cfg);
    t.track(dec.synthesis_residual);
    t.expect(dec.synthesis_residual <= 1e-9, "atomic coefficients do not synthesize K x");
    t.expect(dec.bound_certified, "coefficient bound not certified");
  }
  t.expect(atomic_system_check(construct_atomic_system(p.K), p.K, cfg).conditions[0],
           "standard basis is not atomic for K");
}

// ---------------------------------------------------------------- transforms

void note_bounds(const TransformReport& r, Trial& t) {
  if (r.hypotheses_hold() && r.derived_bounds && r.measured_bounds && r.derived_bounds->lower &&
      r.measured_bounds->lower) {
    t.track(shortfall(*r.measured_bounds->lower, *r.derived_bounds->lower));
  }
}

void expect_report(const TransformReport& r, Trial& t, const char* what) {
  t.expect(!r.violation(), std::string(what) + ": hypotheses hold but the conclusion fails");
}

void mframe_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const ModuleSpace space = draw_space(rng, 2, 4);
  const int J = rng.integer(space.n(), 8);
  const TransformBundle b = random_transform(rng, space, J, rng.coin(1.0 / 3.0));
  const TransformReport direct = mframe_from_kframe(b.frame, b.K, b.M, cfg);
  const TransformReport via = mframe_via_synthesis(b.frame, b.K, b.M, cfg);
  t.satisfying = direct.hypotheses_hold();
  expect_report(direct, t, "M-frame bound");
  expect_report(via, t, "M-frame via synthesis");
  t.expect(direct.hypotheses_hold() == via.hypotheses_hold(), "the two M-frame hypothesis readings disagree");
  note_bounds(direct, t);
}

void surjective_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const ModuleSpace space = draw_space(rng, 2, 4);
  const int dim = space.dim();
  TransformBundle b = random_transform(rng, space, rng.integer(space.n(), 8), true);
  const AdjointableOperator op =
      rng.coin() ? b.T : AdjointableOperator(space, rng.with_rank(dim, dim, rng.integer(std::max(0, dim - 1), dim)));
  const TransformReport r = surjectivity_consequence(b.frame, b.K, op, cfg);
  t.satisfying = r.hypotheses_hold();
  expect_report(r, t, "surjectivity");
}

void restricted_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const ModuleSpace space = draw_space(rng, 2, 4);
  TransformBundle b = random_transform(rng, space, rng.integer(1, 8), rng.coin(0.25));
  const int dim = space.dim();
  const AdjointableOperator op = rng.coin(0.2) ? AdjointableOperator(space, rng.gaussian(dim, dim)) : b.T;
  const TransformReport r = restricted_kframe(b.frame, b.K, op, cfg);
  t.satisfying = r.hypotheses_hold();
  expect_report(r, t, "restricted K-frame");
}

void coisometry_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const ModuleSpace space = draw_space(rng, 2, 4);
  const int mode = rng.coin(0.6) ? 0 : rng.integer(1, 2);
  TransformBundle b = random_transform(rng, space, rng.integer(1, 8), rng.coin(0.25), mode);
  const TransformReport r = coisometry_image(b.frame, b.K, b.T, cfg);
  t.satisfying = r.hypotheses_hold();
  expect_report(r, t, "co-isometry image");
  note_bounds(r, t);
}

void remark_surjective_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const ModuleSpace space = draw_space(rng, 2, 4);
  TransformBundle b = random_transform(rng, space, rng.integer(space.n(), 8), true);
  const TransformReport r = surjectivity_equivalence(b.frame, b.K, b.T, cfg);
  t.satisfying = r.hypotheses_hold();
  expect_report(r, t, "K-frame image iff surjective");
}

void invertible_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const ModuleSpace space = draw_space(rng, 2, 4);
  const int dim = space.dim();
  TransformBundle b = random_transform(rng, space, rng.integer(space.n(), 8), true);
  const AdjointableOperator op =
      rng.coin() ? b.T : AdjointableOperator(space, rng.with_rank(dim, dim, rng.integer(std::max(0, dim - 1), dim)));
  const TransformReport r = invertibility_consequence(b.frame, b.K, op, cfg);
  t.satisfying = r.hypotheses_hold();
  expect_report(r, t, "invertibility");
}

// ---------------------------------------------------------------- ranges

AdjointableOperator random_between(Rng& rng, const ModuleSpace& dom, const ModuleSpace& cod, int rank) {
  return AdjointableOperator(dom, cod, rng.with_rank(dom.dim(), cod.dim(), rank));
}

void gram_range_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  t.satisfying = true;
  const int k = rng.integer(1, 3);
  const ModuleSpace dom(k, rng.integer(1, 6));
  const ModuleSpace cod(k, rng.integer(1, 6));
  const AdjointableOperator op = random_between(rng, dom, cod, rng.integer(0, std::min(dom.dim(), cod.dim())));
  const RangeIdentity a = gram_range_check(op, cfg);
  const RangeIdentity b = gram_range_check(adjoint(op), cfg);
  t.track(std::max(a.distance, b.distance));
  t.expect(a.holds && b.holds, "R(T) != R(T T*) or R(T*) != R(T* T)");
}

void sqrt_range_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  t.satisfying = true;
  const ModuleSpace space = draw_space(rng, 3, 6);
  const int dim = space.dim();
  const AdjointableOperator p(space, rng.positive(dim, rng.integer(0, dim)));
  const RangeIdentity r = sqrt_range_check(p, cfg);
  const AdjointableOperator op(space, rng.with_rank(dim, dim, rng.integer(0, dim)));
  const double d = linalg::spectral_norm(range_projector(op, cfg).matrix() -
                                         range_projector(operator_sqrt(outer_square(op), cfg), cfg).matrix());
  t.track(std::max(r.distance, d));
  t.expect(r.holds, "R(P) != R(P^{1/2})");
  t.expect(d <= 1e-8, "R(T) != R((T T*)^{1/2})");
}

int extreme_rank(Rng& rng, int trial_mode, int full) {
  if (trial_mode == 0) return 0;
  if (trial_mode == 1) return full;
  return rng.integer(0, full);
}

void sum_range_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  t.satisfying = true;
  const int k = rng.integer(1, 3);
  const ModuleSpace cod(k, rng.integer(1, 6));
  const ModuleSpace da(k, rng.integer(1, 6));
  const ModuleSpace db(k, rng.integer(1, 6));
  const int mode = rng.integer(0, 4);
  const AdjointableOperator a = random_between(rng, da, cod, extreme_rank(rng, mode, std::min(da.dim(), cod.dim())));
  const AdjointableOperator b = random_between(rng, db, cod, extreme_rank(rng, mode, std::min(db.dim(), cod.dim())));
  const RangeIdentity r = sum_range_sqrt_check(a, b, cfg);
  t.track(r.distance);
  t.expect(r.distance <= 1e-8, "R(A) + R(B) != R((AA* + BB*)^{1/2})");
}

void douglas_sum_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const int k = rng.integer(1, 2);
  const ModuleSpace cod(k, rng.integer(1, 5));
  const ModuleSpace da(k, rng.integer(1, 5));
  const ModuleSpace d1(k, rng.integer(1, 4));
  const ModuleSpace d2(k, rng.integer(1, 4));
  const AdjointableOperator b1 = random_between(rng, d1, cod, rng.integer(0, std::min(d1.dim(), cod.dim())));
  const AdjointableOperator b2 = random_between(rng, d2, cod, rng.integer(0, std::min(d2.dim(), cod.dim())));
  AdjointableOperator a = random_between(rng, da, cod, rng.integer(0, std::min(da.dim(), cod.dim())));
  if (rng.coin()) {
    a = compose(b1, AdjointableOperator(da, d1, rng.gaussian(da.dim(), d1.dim()))) +
        compose(b2, AdjointableOperator(da, d2, rng.gaussian(da.dim(), d2.dim())));
  }
  const SumSolveReport r = two_term_douglas(a, b1, b2, cfg);
  t.satisfying = r.verdicts[0];
  t.expect(r.consistent(), "two-term Douglas conditions disagree");
  if (r.verdicts[0]) {
    t.track(r.residual);
    t.expect(r.residual <= 1e-8, "B1 X + B2 Y != A");
  }
}

void kframe_sum_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  InstanceSpec spec;
  spec.seed = draw_seed(rng);
  spec.k = rng.integer(1, 2);
  spec.n = rng.integer(1, 4);
  spec.J = rng.integer(1, 8);
  spec.scenario = Scenario::sum_pair;
  const Instance inst = generate_instance(spec, cfg);
  FrameFamily g = *inst.frame_g;
  const int variant = rng.integer(0, 7);
  if (variant == 0) g = inst.frame->mapped(Scalar(-1.0) * AdjointableOperator::identity(inst.space));
  if (variant == 1) g = random_family(rng, inst.space, spec.J);
  const KFrameSumReport r = kframe_sum(*inst.frame, g, *inst.K, cfg);
  t.satisfying = r.hypotheses_hold();
  if (!r.hypotheses_hold()) return;
  t.expect(r.certified(), "sum family is not certified with C_opt >= 1/lambda");
  if (r.bounds && r.bounds->lower && r.theorem_lower_bound) {
    t.track(shortfall(*r.bounds->lower, *r.theorem_lower_bound));
  }
}

// ---------------------------------------------------------------- unitary systems

/// Block circulant (F_d x I_k) diag(D_0..D_{d-1}) (F_d x I_k)^H with random
/// block ranks, so rank deficiency is common.
Matrix random_block_circulant(Rng& rng, int d, int k) {
  const int dim = d * k;
  Matrix fourier(d, d);
  const double pi2 = 2.0 * std::acos(-1.0);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) fourier(i, j) = std::polar(1.0 / std::sqrt(double(d)), pi2 * i * j / d);
  }
  Matrix big = Matrix::Zero(dim, dim);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) big.block(i * k, j * k, k, k) = fourier(i, j) * eye(k);
  }
  Matrix diag = Matrix::Zero(dim, dim);
  for (int i = 0; i < d; ++i) {
    const int r = rng.coin(0.3) ? rng.integer(0, k - 1) : k;
    diag.block(i * k, i * k, k, k) = rng.with_rank(k, k, r);
  }
  return big * diag * big.adjoint();
}

void unitary_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const int d = rng.integer(1, 16);
  const int k = rng.integer(1, 2);
  const UnitarySystem sys = cyclic_shift_system(d, k);
  const ModuleSpace& space = sys.space();
  const int dim = space.dim();
  const ModuleElement psi = ModuleElement::basis(space, 0);

  const FrameFamily psi_orbit = orbit(sys, psi);
  const RealVector s = linalg::singular_values(analysis_operator(psi_orbit).matrix());
  t.expect(std::abs(s(s.size() - 1) - 1.0) <= 1e-9 && std::abs(s(0) - 1.0) <= 1e-9, "T_psi is not unitary");

  const AdjointableOperator a0(space, random_block_circulant(rng, d, k));
  const ModuleElement eta = rng.coin(0.3) ? ModuleElement(space, rng.gaussian(k, dim)) : apply(a0, psi);
  const AdjointableOperator k_op =
      rng.coin() ? AdjointableOperator(space, rng.with_rank(dim, dim, rng.integer(0, dim)) * a0.matrix())
                 : AdjointableOperator(space, rng.with_rank(dim, dim, rng.integer(1, dim)));

  const GeneratorReport gen = generator_from_vector(sys, psi, eta, k_op, cfg);
  const bool member = in_local_commutant(gen.a, sys, psi, cfg);
  t.track(gen.vector_residual);
  t.expect(gen.vector_residual <= 1e-9, "A psi != eta");
  t.expect(member, "constructed A is not in the local commutant");
  t.expect(circulant_deviation(gen.a) <= 1e-9, "constructed A is not block circulant");

  const auto bounds = kframe_vector_check(sys, eta, k_op, cfg);
  t.satisfying = bounds.has_value();
  t.expect(bounds.has_value() == (member && gen.range_inclusion_holds),
           "K-frame vector verdict differs from commutant and range conditions");

  if (member && gen.range_inclusion_holds) {
    const GeneratedVector back = vector_from_generator(sys, psi, gen.a, k_op, cfg);
    const double drift = (back.eta - eta).norm();
    t.track(drift);
    t.expect(drift <= 1e-9, "round trip eta -> A -> eta drifts");
    if (bounds && back.bounds) {
      t.expect(rel_diff(*bounds->lower, *back.bounds->lower) <= 1e-6 &&
                   rel_diff(bounds->upper, back.bounds->upper) <= 1e-6,
               "round-trip bounds disagree");
    }
  }

  // Structural cross-check: commutant membership iff block circulant.
  const AdjointableOperator other = rng.coin() ? a0 : AdjointableOperator(space, rng.gaussian(dim, dim));
  const bool circ = circulant_deviation(other) <= 1e-9;
  t.expect(in_local_commutant(other, sys, psi, cfg) == circ, "commutant membership differs from circulant form");
}

// ---------------------------------------------------------------- PSD oracle

/// Representative operators from the suites: frame operators, bound pencils,
/// Douglas majorants, K-frame sum cross terms and restricted compressions.
/// Non-positive cases have a clear margin.
AdjointableOperator oracle_operator(Rng& rng, int kind, const ToleranceConfig& cfg) {
  const ModuleSpace space = draw_space(rng, 3, 4);
  const int dim = space.dim();
  const bool positive = rng.coin();
  switch (kind) {
    case 0: {
      const Matrix p = rng.positive(dim, rng.integer(0, dim));
      if (positive) return AdjointableOperator(space, p);
      return AdjointableOperator(space, p - Scalar(rng.uniform(0.1, 1.0)) * eye(dim));
    }
    case 1: {
      const FrameFamily f = random_family(rng, space, rng.integer(1, 10));
      const double dmax = bessel_check(f, cfg).upper;
      const double c = positive ? dmax : 0.9 * dmax;
      return AdjointableOperator(space, Scalar(c) * eye(dim) - f.frame_operator().matrix());
    }
    case 2: {
      KFramePair p = random_kframe(rng, space, rng.integer(1, 8));
      const auto b = kframe_check(p.frame, p.K, cfg);
      const double c = (b && std::isfinite(*b->lower)) ? *b->lower : 1.0;
      const double factor = positive ? 1.0 - 1e-6 : 2.0;
      return AdjointableOperator(space, p.frame.frame_operator().matrix() - Scalar(c * factor) * outer_square(p.K).matrix());
    }
    case 3: {
      const AdjointableOperator op(space, rng.with_rank(dim, dim, rng.integer(1, dim)));
      const AdjointableOperator op_prime(space, rng.gaussian(dim, dim) * op.matrix());
      const DouglasReport r = douglas_factorize(op_prime, op, cfg);
      const double factor = positive ? 1.0 + 1e-6 : 0.5;
      return Scalar(r.lambda_min.value_or(1.0) * factor) * outer_square(op) - outer_square(op_prime);
    }
    case 4: {
      KFramePair p = random_kframe(rng, space, rng.integer(1, 8));
      const FrameFamily g = positive ? polynomial_companion(rng, p.frame)
                                     : p.frame.mapped(Scalar(-1.0) * AdjointableOperator::identity(space));
      return compose(synthesis_operator(p.frame), adjoint(synthesis_operator(g)));
    }
    default: {
      TransformBundle b = random_transform(rng, space, rng.integer(1, 8), false);
      const TransformReport r = restricted_kframe(b.frame, b.K, b.T, cfg);
      const double c = (r.measured_bounds && std::isfinite(*r.measured_bounds->lower)) ? *r.measured_bounds->lower : 1.0;
      const double factor = positive ? 1.0 - 1e-6 : 2.0;
      const AdjointableOperator pr = range_projector(b.T, cfg);
      const Matrix inner = b.frame.mapped(b.T).frame_operator().matrix() - Scalar(c * factor) * outer_square(b.K).matrix();
      return AdjointableOperator(space, linalg::hermitian_part(pr.matrix() * inner * pr.matrix()));
    }
  }
}

void psd_oracle_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  t.satisfying = true;
  const int kind = rng.integer(0, 5);
  const AdjointableOperator p = oracle_operator(rng, kind, cfg);
  const AdjointableOperator herm(p.domain(), linalg::hermitian_part(p.matrix()));
  const PsdVerdict matrix_verdict = is_positive(herm, cfg);
  const SamplingVerdict sampled = psd_sampling_oracle(herm, 1000, draw_seed(rng), cfg);
  t.expect(matrix_verdict.holds == sampled.positive, "matrix PSD verdict disagrees with the sampling oracle");
}

// ---------------------------------------------------------------- experiment

void generator_sum_trial(Rng& rng, const ToleranceConfig& cfg, Trial& t) {
  const int d = rng.integer(1, 8);
  const int k = rng.integer(1, 2);
  const UnitarySystem sys = cyclic_shift_system(d, k);
  const ModuleSpace& space = sys.space();
  const ModuleElement psi = ModuleElement::basis(space, 0);
  const AdjointableOperator a1(space, random_block_circulant(rng, d, k));
  const AdjointableOperator a2(space, random_block_circulant(rng, d, k));
  const AdjointableOperator k_op(space, rng.with_rank(space.dim(), space.dim(), rng.integer(0, space.dim())) * a1.matrix());
  const ModuleElement eta1 = apply(a1, psi);
  const ModuleElement eta2 = apply(a2, psi);
  if (!kframe_vector_check(sys, eta1, k_op, cfg) || !kframe_vector_check(sys, eta2, k_op, cfg)) return;
  t.satisfying = kframe_vector_check(sys, eta1 + eta2, k_op, cfg).has_value();
}

const std::vector<Suite>& registry() {
  static const std::vector<Suite> suites = {
      {{"range_kernel", "N(T*) is the complement of R(T); Moore-Penrose identities; |T|", 200, 0, false},
       range_kernel_trial},
      {{"douglas", "R(T') in R(T) <=> T'T'* <= lambda TT* <=> TX = T' (four conditions)", 500, 0, false},
       douglas_trial},
      {{"bessel", "{M x_j} is Bessel with bound D ||M||^2; D_opt minimal", 200, 50, false}, bessel_trial},
      {{"reconstruction", "x = sum <x, S^-1 x_j> x_j for frames", 100, 50, false}, reconstruction_trial},
      {{"kframe", "K-frame <=> R(K) in R(L); C_opt matches bisection", 200, 0, false}, kframe_trial},
      {{"atomic", "atomic system <=> norm inequality <=> K = T* D", 200, 0, false}, atomic_trial},
      {{"mframe", "K-frame and R(M) in R(K) => M-frame with bound lambda/lambda'", 200, 50, false}, mframe_trial},
      {{"surjective", "K surjective, F and {T x_j} K-frames => T surjective", 200, 50, false}, surjective_trial},
      {{"restricted", "KT = TK => {T x_j} is a K-frame for R(T)", 200, 50, false}, restricted_trial},
      {{"coisometry", "TT* = I and range condition => {T x_j} is a K-frame", 200, 50, false}, coisometry_trial},
      {{"remark_surjective", "K surjective, TK = KT: {T x_j} K-frame <=> T surjective", 200, 50, false},
       remark_surjective_trial},
      {{"invertible", "{T x_j} and {T* x_j} K-frames, K surjective => T invertible", 200, 50, false},
       invertible_trial},
      {{"gram_range", "R(T) = R(TT*) and R(T*) = R(T*T)", 200, 0, false}, gram_range_trial},
      {{"sqrt_range", "R(P) = R(P^{1/2}) and R(T) = R((TT*)^{1/2})", 200, 0, false}, sqrt_range_trial},
      {{"sum_range", "R(A) + R(B) = R((AA* + BB*)^{1/2})", 500, 0, false}, sum_range_trial},
      {{"douglas_sum", "A = B1 X + B2 Y solvable <=> majorization <=> range inclusion", 300, 0, false},
       douglas_sum_trial},
      {{"kframe_sum", "L1 L2*, L2 L1* >= 0 => {x_j + y_j} is a K-frame with bound 1/lambda", 200, 50, false},
       kframe_sum_trial},
      {{"unitary_generator", "eta is a K-frame vector <=> eta = A psi, A in the local commutant, R(K) in R(A)", 200,
        50, false},
       unitary_trial},
      {{"psd_oracle", "matrix PSD verdicts agree with the 1000-trial sampling oracle", 200, 0, false},
       psd_oracle_trial},
      {{"generator_sum_experiment", "sum of two K-frame generators (exploratory, no claim)", 100, 0, true},
       generator_sum_trial},
  };
  return suites;
}

std::string format_violation(int trial, const std::string& detail) {
  std::ostringstream os;
  os << "trial " << trial << ": " << detail;
  return os.str();
}

}  // namespace

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> infos = [] {
    std::vector<SuiteInfo> out;
    for (const auto& s : registry()) out.push_back(s.info);
    return out;
  }();
  return infos;
}

SuiteReport run_suite(const std::string& id, int trials, std::uint64_t seed, const ToleranceConfig& cfg, bool timed) {
  cfg.validate();
  const auto& suites = registry();
  const auto it = std::find_if(suites.begin(), suites.end(), [&](const Suite& s) { return s.info.id == id; });
  if (it == suites.end()) throw UnknownTheorem("unknown theorem id '" + id + "'");
  const auto stream = static_cast<std::uint64_t>(it - suites.begin());

  SuiteReport rep;
  rep.theorem = it->info.id;
  rep.statement = it->info.statement;
  rep.trials = trials > 0 ? trials : it->info.default_trials;
  rep.required_satisfying = std::min(it->info.required_satisfying, rep.trials / 4);
  rep.experimental = it->info.experimental;

  const auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < rep.trials; ++i) {
    Rng rng(derive_seed(seed, stream, static_cast<std::uint64_t>(i)));
    Trial trial;
    try {
      it->run(rng, cfg, trial);
    } catch (const std::exception& e) {
      trial.fail(std::string("exception: ") + e.what());
    }
    if (trial.satisfying) ++rep.satisfying;
    if (rep.experimental) continue;
    rep.max_residual = std::max(rep.max_residual, trial.residual);
    if (trial.violation) {
      ++rep.violations;
      if (!rep.first_violation) rep.first_violation = format_violation(i, trial.detail);
    }
  }
  if (timed) {
    rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return rep;
}

std::vector<SuiteReport> run_all(int trials, std::uint64_t seed, const ToleranceConfig& cfg, bool timed) {
  std::vector<SuiteReport> out;
  for (const auto& s : registry()) out.push_back(run_suite(s.info.id, trials, seed, cfg, timed));
  return out;
}

}  // namespace kframe::harness
