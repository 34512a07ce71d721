#include "test_support.hpp"

#include <kframe/frames.hpp>
#include <kframe/harness/instances.hpp>
#include <kframe/transforms.hpp>

using namespace kframe;
using kframe::harness::Rng;
using kt::diag;
using kt::real;

namespace {

const ModuleSpace plane(1, 2);

FrameFamily onb(const ModuleSpace& s = plane) { return FrameFamily::standard_basis(s); }
AdjointableOperator op(const ModuleSpace& s, Matrix m) { return {s, std::move(m)}; }

}  // namespace

TEST(BesselImage, ScalingMultipliesTheBound) {
  const BesselImage b = bessel_image(onb(), Scalar(2.0) * AdjointableOperator::identity(plane));
  EXPECT_NEAR(b.optimal_bound, 4.0, 1e-12);
  EXPECT_NEAR(b.certified_bound, 4.0, 1e-12);
  const BesselImage z = bessel_image(onb(), AdjointableOperator::zero(plane, plane));
  EXPECT_NEAR(z.optimal_bound, 0.0, 1e-15);
}

TEST(BesselImage, CertifiedBoundDominatesOnRandomData) {
  Rng rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const FrameFamily f = harness::random_family(rng, s, rng.integer(1, 8));
    const BesselImage b = bessel_image(f, op(s, rng.gaussian(s.dim(), s.dim())));
    EXPECT_LE(b.optimal_bound, b.certified_bound * (1 + 1e-9));
  }
}

TEST(MFrame, HalfOfKQuadruplesTheBound) {
  const AdjointableOperator k = AdjointableOperator::identity(plane);
  const TransformReport r = mframe_from_kframe(onb(), k, Scalar(0.5) * k);
  EXPECT_TRUE(r.verdict());
  ASSERT_TRUE(r.derived_bounds && r.measured_bounds);
  EXPECT_NEAR(*r.derived_bounds->lower, 4.0, 1e-10);
  EXPECT_NEAR(*r.measured_bounds->lower, 4.0, 1e-10);
}

TEST(MFrame, RangeOutsideKIsAHypothesisFailure) {
  const TransformReport r = mframe_from_kframe(onb(), op(plane, diag({1, 0})), op(plane, diag({0, 1})));
  EXPECT_FALSE(r.hypotheses_hold());
  EXPECT_FALSE(r.violation());
  EXPECT_FALSE(r.hypotheses[1].holds);
}

TEST(MFrame, SynthesisRouteAgrees) {
  const AdjointableOperator k(plane, diag({1, 0}));
  const FrameFamily f(plane, {kt::row(plane, {1, 0})});
  const TransformReport r = mframe_via_synthesis(f, k, Scalar(3.0) * k);
  EXPECT_TRUE(r.verdict());
}

TEST(Surjectivity, IdentityAndRankDeficient) {
  const AdjointableOperator id = AdjointableOperator::identity(plane);
  EXPECT_TRUE(surjectivity_consequence(onb(), id, id).verdict());
  const TransformReport r = surjectivity_consequence(onb(), id, op(plane, diag({1, 0})));
  EXPECT_FALSE(r.hypotheses_hold());
  EXPECT_FALSE(r.violation());
}

TEST(Restricted, DiagonalProjectionExample) {
  const AdjointableOperator p(plane, diag({1, 0}));
  const TransformReport r = restricted_kframe(onb(), p, p);
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_TRUE(r.conclusion_holds);
  ASSERT_TRUE(r.measured_bounds.has_value());
  EXPECT_NEAR(*r.measured_bounds->lower, 1.0, 1e-9);
}

TEST(Restricted, NonCommutingIsAHypothesisFailure) {
  const AdjointableOperator k(plane, real({{0, 1}, {0, 0}}));
  const AdjointableOperator t(plane, diag({1, 0}));
  EXPECT_GT(commutator_defect(k, t), 0.5);
  const TransformReport r = restricted_kframe(onb(), k, t);
  EXPECT_FALSE(r.hypotheses[1].holds);
  EXPECT_FALSE(r.violation());
}

// A nilpotent T = K satisfies every listed hypothesis, yet {T x_j} collapses to zero
// while K K* does not vanish on R(T).
TEST(Restricted, NilpotentCounterexampleToTheStatedImplication) {
  const AdjointableOperator n(plane, real({{0, 1}, {0, 0}}));
  const FrameFamily f(plane, {kt::row(plane, {0, 1})});
  const TransformReport r = restricted_kframe(f, n, n);
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_FALSE(r.conclusion_holds);
  EXPECT_TRUE(r.violation());
}

TEST(Restricted, NormalCommutingInstancesHold) {
  Rng rng(89);
  int satisfied = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const harness::TransformBundle b = harness::random_transform(rng, s, rng.integer(1, 8), false);
    const TransformReport r = restricted_kframe(b.frame, b.K, b.T);
    if (!r.hypotheses_hold()) continue;
    ++satisfied;
    EXPECT_TRUE(r.conclusion_holds) << "trial " << trial;
  }
  EXPECT_GT(satisfied, 20);
}

TEST(Coisometry, IdentityAndPartialIsometry) {
  const AdjointableOperator id = AdjointableOperator::identity(plane);
  EXPECT_TRUE(coisometry_image(onb(), id, id).verdict());
  const TransformReport r = coisometry_image(onb(), id, op(plane, diag({1, 0})));
  EXPECT_FALSE(r.hypotheses_hold());
}

// With K = e1 e2^T (column form) and T swapping e1 and e3, R(T*K*) is inside R(K*T*)
// but R(KT) is not inside R(TK), and {T e1} misses R(K).
TEST(Coisometry, PermutationCounterexampleToTheStatedHypothesis) {
  const ModuleSpace s(1, 3);
  const AdjointableOperator k(s, real({{0, 0, 0}, {1, 0, 0}, {0, 0, 0}}));
  const AdjointableOperator t(s, real({{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}));
  const FrameFamily f(s, {kt::row(s, {1, 0, 0})});
  ASSERT_TRUE(kframe_check(f, k).has_value());
  const TransformReport r = coisometry_image(f, k, t);
  EXPECT_TRUE(r.hypotheses_hold());
  EXPECT_FALSE(r.conclusion_holds);
  EXPECT_FALSE(kframe_check(f.mapped(t), k).has_value());
}

TEST(Coisometry, CommutingUnitaryPreservesKFrames) {
  Rng rng(97);
  int satisfied = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const harness::TransformBundle b = harness::random_transform(rng, s, rng.integer(1, 8), false, 0);
    const TransformReport r = coisometry_image(b.frame, b.K, b.T);
    if (!r.hypotheses_hold()) continue;
    ++satisfied;
    EXPECT_TRUE(r.conclusion_holds) << "trial " << trial;
  }
  EXPECT_GT(satisfied, 20);
}

TEST(Invertibility, IdentityAndSingular) {
  const AdjointableOperator id = AdjointableOperator::identity(plane);
  EXPECT_TRUE(invertibility_consequence(onb(), id, id).verdict());
  EXPECT_FALSE(invertibility_consequence(onb(), id, op(plane, diag({1, 0}))).hypotheses_hold());
}

TEST(SurjectivityEquivalence, BothDirections) {
  const AdjointableOperator id = AdjointableOperator::identity(plane);
  EXPECT_TRUE(surjectivity_equivalence(onb(), id, Scalar(2.0) * id).verdict());
  EXPECT_TRUE(surjectivity_equivalence(onb(), id, op(plane, diag({1, 0}))).verdict());
}

TEST(Commutator, DiagonalsCommute) {
  EXPECT_DOUBLE_EQ(commutator_defect(op(plane, diag({1, 2})), op(plane, diag({3, 4}))), 0.0);
  EXPECT_DOUBLE_EQ(commutator_defect(AdjointableOperator::zero(plane, plane), op(plane, diag({3, 4}))), 0.0);
}
