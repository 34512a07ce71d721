#include "test_support.hpp"

#include <kframe/errors.hpp>
#include <kframe/linalg.hpp>
#include <kframe/oracles.hpp>

using namespace kframe;
using kframe::harness::Rng;
using kt::diag;
using kt::dist;
using kt::real;

namespace {

const ToleranceConfig cfg{};

AdjointableOperator random_op(Rng& rng, const ModuleSpace& s, int rank) {
  return {s, rng.with_rank(s.dim(), s.dim(), rank)};
}

}  // namespace

TEST(ModuleSpace, RejectsNonPositiveSizes) {
  EXPECT_THROW(ModuleSpace(0, 2), DimensionMismatch);
  EXPECT_THROW(ModuleSpace(1, 0), DimensionMismatch);
  EXPECT_EQ(ModuleSpace(2, 3).dim(), 6);
}

TEST(ModuleElement, ShapeIsChecked) {
  const ModuleSpace s(2, 3);
  EXPECT_THROW(ModuleElement(s, Matrix::Zero(2, 5)), DimensionMismatch);
  EXPECT_THROW(AdjointableOperator(s, Matrix::Zero(6, 5)), DimensionMismatch);
}

TEST(InnerProduct, StandardBasisIsOrthonormal) {
  const ModuleSpace s(2, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const Matrix g = inner_product(ModuleElement::basis(s, i), ModuleElement::basis(s, j));
      const Matrix expect = i == j ? Matrix(Matrix::Identity(2, 2)) : Matrix(Matrix::Zero(2, 2));
      EXPECT_LT(dist(g, expect), 1e-15);
    }
  }
}

TEST(InnerProduct, AxiomsHoldOnRandomElements) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 5));
    const ModuleElement x(s, rng.gaussian(s.k(), s.dim()));
    const ModuleElement y(s, rng.gaussian(s.k(), s.dim()));
    const Matrix a = rng.gaussian(s.k(), s.k());
    // <a x, y> = a <x, y>, <x, y>* = <y, x>, <x, x> >= 0
    EXPECT_LT(dist(inner_product(x.left_multiply(a), y), a * inner_product(x, y)), 1e-12);
    EXPECT_LT(dist(inner_product(x, y).adjoint(), inner_product(y, x)), 1e-12);
    EXPECT_GE(linalg::hermitian_eigenvalues(inner_product(x, x))(0), -1e-12);
  }
}

TEST(Operators, DiagonalActionOnElement) {
  const ModuleSpace s(1, 2);
  const AdjointableOperator t(s, diag({2, 0}));
  const ModuleElement y = apply(t, kt::row(s, {1, 1}));
  EXPECT_LT(dist(y.matrix(), real({{2, 0}})), 1e-15);
}

TEST(Operators, ComposeAppliesRightOperandFirst) {
  const ModuleSpace s(1, 2);
  const AdjointableOperator shift(s, real({{0, 1}, {0, 0}}));  // e1 -> e2
  const AdjointableOperator scale(s, diag({1, 3}));
  const ModuleElement e1 = ModuleElement::basis(s, 0);
  // scale after shift: e1 -> e2 -> 3 e2
  EXPECT_LT(dist(apply(compose(scale, shift), e1).matrix(), real({{0, 3}})), 1e-15);
  // shift after scale: e1 -> e1 -> e2
  EXPECT_LT(dist(apply(compose(shift, scale), e1).matrix(), real({{0, 1}})), 1e-15);
}

TEST(Operators, AdjointMatchesInnerProduct) {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const AdjointableOperator t(s, rng.gaussian(s.dim(), s.dim()));
    const ModuleElement x(s, rng.gaussian(s.k(), s.dim()));
    const ModuleElement y(s, rng.gaussian(s.k(), s.dim()));
    EXPECT_LT(dist(inner_product(apply(t, x), y), inner_product(x, apply(adjoint(t), y))), 1e-11);
    const AdjointableOperator u(s, rng.gaussian(s.dim(), s.dim()));
    EXPECT_LT(dist(adjoint(compose(t, u)).matrix(), compose(adjoint(u), adjoint(t)).matrix()), 1e-11);
  }
}

TEST(PseudoInverse, Examples) {
  const ModuleSpace s(1, 2);
  EXPECT_LT(dist(pseudo_inverse(AdjointableOperator(s, diag({2, 0}))).matrix(), diag({0.5, 0})), 1e-15);
  EXPECT_LT(dist(pseudo_inverse(AdjointableOperator::zero(s, s)).matrix(), Matrix::Zero(2, 2)), 1e-15);
  Rng rng(5);
  const Matrix u = rng.unitary(4);
  const ModuleSpace s2(2, 2);
  EXPECT_LT(dist(pseudo_inverse(AdjointableOperator(s2, u)).matrix(), u.adjoint()), 1e-12);
}

TEST(PseudoInverse, PenroseIdentitiesOnRandomRankDeficient) {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const AdjointableOperator t = random_op(rng, s, rng.integer(0, s.dim()));
    const AdjointableOperator p = pseudo_inverse(t, cfg);
    const double scale = std::max(1.0, t.norm());
    EXPECT_LT(dist(compose(t, compose(p, t)).matrix(), t.matrix()), 1e-9 * scale);
    EXPECT_LT(dist(compose(p, compose(t, p)).matrix(), p.matrix()), 1e-9 * std::max(1.0, p.norm()));
    EXPECT_LT(linalg::hermitian_defect(compose(t, p).matrix()), 1e-9);
    EXPECT_LT(linalg::hermitian_defect(compose(p, t).matrix()), 1e-9);
  }
}

TEST(Projectors, RangeAndKernelOfDiagonal) {
  const ModuleSpace s(1, 2);
  const AdjointableOperator t(s, diag({1, 0}));
  EXPECT_LT(dist(range_projector(t).matrix(), diag({1, 0})), 1e-15);
  EXPECT_LT(dist(kernel_projector(t).matrix(), diag({0, 1})), 1e-15);
  EXPECT_EQ(rank(t), 1);
  EXPECT_LT(dist(range_projector(AdjointableOperator(s, diag({3, 2}))).matrix(), diag({1, 1})), 1e-12);
}

TEST(Projectors, KernelOfAdjointComplementsRange) {
  Rng rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const AdjointableOperator t = random_op(rng, s, rng.integer(0, s.dim()));
    const Matrix p = range_projector(t, cfg).matrix();
    const Matrix q = kernel_projector(adjoint(t), cfg).matrix();
    EXPECT_LT(dist(p + q, Matrix::Identity(s.dim(), s.dim())), 1e-9);
    EXPECT_LT(dist(p * p, p), 1e-9);
    EXPECT_LT(dist(t.matrix() * p, t.matrix()), 1e-9 * std::max(1.0, t.norm()));
  }
}

TEST(RangeInclusion, Examples) {
  const ModuleSpace s(1, 2);
  const AdjointableOperator a(s, diag({1, 0}));
  const AdjointableOperator b(s, diag({0, 1}));
  EXPECT_TRUE(range_inclusion(a, AdjointableOperator::identity(s)).holds);
  EXPECT_FALSE(range_inclusion(a, b).holds);
  EXPECT_TRUE(range_inclusion(AdjointableOperator::zero(s, s), b).holds);
  EXPECT_NEAR(range_inclusion(a, b).residual, 1.0, 1e-15);
}

TEST(PsdOrder, Examples) {
  const ModuleSpace s(1, 2);
  const AdjointableOperator zero = AdjointableOperator::zero(s, s);
  const AdjointableOperator id = AdjointableOperator::identity(s);
  EXPECT_TRUE(psd_order(zero, id).holds);
  EXPECT_FALSE(psd_order(id, zero).holds);
  const PsdVerdict v = is_positive(AdjointableOperator(s, diag({1, -1})));
  EXPECT_FALSE(v.holds);
  EXPECT_DOUBLE_EQ(v.lambda_min, -1.0);
  EXPECT_THROW(is_positive(AdjointableOperator(s, real({{0, 1}, {0, 0}}))), NotSelfAdjoint);
}

TEST(PsdOrder, GramOperatorsSitBetweenZeroAndNorm) {
  Rng rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const AdjointableOperator t(s, rng.gaussian(s.dim(), s.dim()));
    const AdjointableOperator g = outer_square(t);
    EXPECT_TRUE(is_positive(g).holds);
    const double top = linalg::hermitian_eigenvalues(g.matrix()).maxCoeff();
    EXPECT_TRUE(psd_order(g, Scalar(top) * AdjointableOperator::identity(s)).holds);
    EXPECT_FALSE(psd_order(g, Scalar(0.99 * top) * AdjointableOperator::identity(s)).holds);
  }
}

TEST(Sqrt, Examples) {
  const ModuleSpace s(1, 2);
  EXPECT_LT(dist(operator_sqrt(AdjointableOperator(s, diag({4, 0}))).matrix(), diag({2, 0})), 1e-14);
  EXPECT_LT(dist(operator_sqrt(AdjointableOperator::identity(s)).matrix(), diag({1, 1})), 1e-14);
  EXPECT_THROW(operator_sqrt(AdjointableOperator(s, diag({1, -1}))), NotPositive);
  EXPECT_LT(dist(absolute_value(AdjointableOperator(s, diag({-3, 0}))).matrix(), diag({3, 0})), 1e-14);
}

TEST(Sqrt, SquaresBackAndPreservesRank) {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const int r = rng.integer(0, s.dim());
    const AdjointableOperator p(s, rng.positive(s.dim(), r));
    const AdjointableOperator root = operator_sqrt(p, cfg);
    EXPECT_LT(dist(root.matrix() * root.matrix(), p.matrix()), 1e-9 * std::max(1.0, p.norm()));
    EXPECT_TRUE(is_positive(root).holds);
    EXPECT_EQ(rank(root), r);
  }
}

TEST(Stack, DomainsConcatenate) {
  const ModuleSpace s(1, 2);
  const AdjointableOperator a(s, diag({1, 0}));
  const AdjointableOperator b(s, diag({0, 1}));
  const AdjointableOperator ab = stack_domains(a, b);
  EXPECT_EQ(ab.domain().n(), 4);
  EXPECT_EQ(ab.codomain().n(), 2);
  EXPECT_EQ(rank(ab), 2);
}

TEST(SamplingOracle, Examples) {
  const ModuleSpace s(1, 2);
  EXPECT_TRUE(psd_sampling_oracle(AdjointableOperator::identity(s), 1000, 1).positive);
  const SamplingVerdict neg = psd_sampling_oracle(AdjointableOperator(s, diag({1, -1})), 1000, 1);
  EXPECT_FALSE(neg.positive);
  EXPECT_LT(neg.trials_run, 10);
}

TEST(SamplingOracle, AgreesWithMatrixVerdictOnRandomSelfAdjoint) {
  Rng rng(37);
  int disagreements = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const ModuleSpace s(rng.integer(1, 3), rng.integer(1, 4));
    const int dim = s.dim();
    Matrix p = rng.positive(dim, rng.integer(0, dim));
    if (rng.coin()) p -= Scalar(rng.uniform(0.05, 1.0)) * Matrix::Identity(dim, dim);
    const AdjointableOperator op(s, linalg::hermitian_part(p));
    const bool matrix = is_positive(op).holds;
    const bool sampled = psd_sampling_oracle(op, 1000, static_cast<std::uint64_t>(trial)).positive;
    if (matrix != sampled) ++disagreements;
  }
  EXPECT_EQ(disagreements, 0);
}
