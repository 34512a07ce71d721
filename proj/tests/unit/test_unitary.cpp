#include "test_support.hpp"

#include <kframe/errors.hpp>
#include <kframe/frames.hpp>
#include <kframe/unitary.hpp>

using namespace kframe;
using kframe::harness::Rng;
using kt::diag;
using kt::dist;
using kt::real;
using kt::row;

namespace {

// Circulant with first block row c_0..c_{d-1}: block (i, j) = c_{(j - i) mod d}.
Matrix circulant(const std::vector<Matrix>& c) {
  const int d = static_cast<int>(c.size());
  const auto k = c.front().rows();
  Matrix m(d * k, d * k);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m.block(i * k, j * k, k, k) = c[static_cast<std::size_t>(((j - i) % d + d) % d)];
  }
  return m;
}

}  // namespace

TEST(UnitarySystem, RequiresIdentityAndUnitaries) {
  const ModuleSpace s(1, 2);
  EXPECT_THROW(UnitarySystem(s, {AdjointableOperator(s, real({{0, 1}, {1, 0}}))}), NotAFrame);
  EXPECT_THROW(UnitarySystem(s, {AdjointableOperator::identity(s), AdjointableOperator(s, diag({2, 1}))}),
               NotAFrame);
  EXPECT_THROW(UnitarySystem(s, {AdjointableOperator::identity(ModuleSpace(1, 3))}), DimensionMismatch);
}

TEST(CyclicShift, TrivialAndThreeCycle) {
  const UnitarySystem one = cyclic_shift_system(1);
  EXPECT_EQ(one.size(), 1);
  EXPECT_TRUE(is_wandering(one, ModuleElement::basis(one.space(), 0)));

  const UnitarySystem three = cyclic_shift_system(3);
  ASSERT_EQ(three.size(), 3);
  const Matrix& c = three.operators()[1].matrix();
  EXPECT_LT(dist(c * c * c, Matrix::Identity(3, 3)), 1e-15);
  // e1 -> e2 -> e3
  EXPECT_LT(dist(apply(three.operators()[1], ModuleElement::basis(three.space(), 0)).matrix(), real({{0, 1, 0}})),
            1e-15);
}

TEST(CyclicShift, BasisVectorIsWanderingForAllSizes) {
  for (int k = 1; k <= 2; ++k) {
    for (int d = 1; d <= 16; ++d) {
      const UnitarySystem u = cyclic_shift_system(d, k);
      const WanderingReport w = wandering_check(u, ModuleElement::basis(u.space(), 0));
      EXPECT_TRUE(w.wandering) << "d=" << d << " k=" << k;
      EXPECT_LT(w.gram_residual, 1e-12);
    }
  }
}

TEST(Wandering, NonWanderingVectors) {
  const UnitarySystem u = cyclic_shift_system(2);
  EXPECT_FALSE(is_wandering(u, ModuleElement::zero(u.space())));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_FALSE(is_wandering(u, row(u.space(), {r, r})));
  EXPECT_TRUE(is_wandering(u, row(u.space(), {1, 0})));
}

TEST(LocalCommutant, CirculantsCommuteDiagonalsDoNot) {
  const UnitarySystem u = cyclic_shift_system(3);
  const ModuleElement psi = ModuleElement::basis(u.space(), 0);
  EXPECT_DOUBLE_EQ(local_commutant_check(AdjointableOperator::identity(u.space()), u, psi), 0.0);
  const AdjointableOperator c(u.space(), circulant({real({{1}}), real({{2}}), real({{3}})}));
  EXPECT_LT(local_commutant_check(c, u, psi), 1e-14);
  EXPECT_LT(circulant_deviation(c), 1e-15);
  const AdjointableOperator d(u.space(), diag({1, 2, 3}));
  EXPECT_FALSE(in_local_commutant(d, u, psi));
  EXPECT_GT(circulant_deviation(d), 0.5);
}

TEST(KFrameVector, WanderingVectorAndScaling) {
  const UnitarySystem u = cyclic_shift_system(4);
  const ModuleElement psi = ModuleElement::basis(u.space(), 0);
  const AdjointableOperator id = AdjointableOperator::identity(u.space());
  const auto b = kframe_vector_check(u, psi, id);
  ASSERT_TRUE(b.has_value());
  EXPECT_NEAR(*b->lower, 1.0, 1e-12);
  EXPECT_NEAR(b->upper, 1.0, 1e-12);
  const auto scaled = kframe_vector_check(u, Scalar(3.0) * psi, id);
  ASSERT_TRUE(scaled.has_value());
  EXPECT_NEAR(*scaled->lower, 9.0, 1e-10);
  EXPECT_FALSE(kframe_vector_check(u, ModuleElement::zero(u.space()), id).has_value());
}

TEST(Generator, TwoCycleGivesSymmetricCirculant) {
  const UnitarySystem u = cyclic_shift_system(2);
  const ModuleElement psi = ModuleElement::basis(u.space(), 0);
  const double a = 0.7;
  const double b = -1.3;
  const GeneratorReport g = generator_from_vector(u, psi, row(u.space(), {a, b}), AdjointableOperator::identity(u.space()));
  EXPECT_LT(dist(g.a.matrix(), real({{a, b}, {b, a}})), 1e-14);
  EXPECT_LT(g.commutant_residual, 1e-14);
  EXPECT_LT(g.vector_residual, 1e-14);
  EXPECT_TRUE(g.range_inclusion_holds);
}

TEST(Generator, PsiItselfGivesIdentity) {
  const UnitarySystem u = cyclic_shift_system(5, 2);
  const ModuleElement psi = ModuleElement::basis(u.space(), 0);
  const GeneratorReport g = generator_from_vector(u, psi, psi, AdjointableOperator::identity(u.space()));
  EXPECT_LT(dist(g.a.matrix(), Matrix::Identity(10, 10)), 1e-14);
}

TEST(Generator, RequiresWanderingPsi) {
  const UnitarySystem u = cyclic_shift_system(2);
  const ModuleElement bad = ModuleElement::zero(u.space());
  try {
    generator_from_vector(u, bad, bad, AdjointableOperator::identity(u.space()));
    FAIL() << "expected PreconditionFailed";
  } catch (const PreconditionFailed& e) {
    EXPECT_EQ(e.hypothesis(), "psi is wandering");
  }
}

TEST(VectorFromGenerator, ScaledIdentity) {
  const UnitarySystem u = cyclic_shift_system(3);
  const ModuleElement psi = ModuleElement::basis(u.space(), 0);
  const AdjointableOperator id = AdjointableOperator::identity(u.space());
  const GeneratedVector one = vector_from_generator(u, psi, id, id);
  EXPECT_LT(dist(one.eta.matrix(), psi.matrix()), 1e-15);
  EXPECT_NEAR(*one.bounds->lower, 1.0, 1e-12);
  const GeneratedVector two = vector_from_generator(u, psi, Scalar(2.0) * id, id);
  ASSERT_TRUE(two.bounds.has_value());
  EXPECT_NEAR(*two.bounds->lower, 4.0, 1e-10);
  EXPECT_NEAR(two.bounds->upper, 4.0, 1e-10);
}

TEST(VectorFromGenerator, PreconditionsAreNamed) {
  const UnitarySystem u = cyclic_shift_system(3);
  const ModuleElement psi = ModuleElement::basis(u.space(), 0);
  const AdjointableOperator id = AdjointableOperator::identity(u.space());
  try {
    vector_from_generator(u, psi, AdjointableOperator(u.space(), diag({1, 2, 3})), id);
    FAIL();
  } catch (const PreconditionFailed& e) {
    EXPECT_EQ(e.hypothesis(), "A in the local commutant");
  }
  // rank-one circulant (all ones) cannot cover R(I)
  const AdjointableOperator ones(u.space(), circulant({real({{1}}), real({{1}}), real({{1}})}));
  try {
    vector_from_generator(u, psi, ones, id);
    FAIL();
  } catch (const PreconditionFailed& e) {
    EXPECT_EQ(e.hypothesis(), "R(K) subset R(A)");
  }
  // but it does cover its own range
  const GeneratedVector g = vector_from_generator(u, psi, ones, ones);
  EXPECT_TRUE(g.bounds.has_value());
}

TEST(RoundTrip, RandomGeneratorsOnCyclicSystems) {
  Rng rng(101);
  for (int k = 1; k <= 2; ++k) {
    for (int d = 1; d <= 16; ++d) {
      const UnitarySystem u = cyclic_shift_system(d, k);
      const ModuleSpace& s = u.space();
      const ModuleElement psi = ModuleElement::basis(s, 0);
      const ModuleElement eta(s, rng.gaussian(k, s.dim()));
      const AdjointableOperator kop(s, rng.with_rank(s.dim(), s.dim(), rng.integer(0, s.dim())));
      const GeneratorReport g = generator_from_vector(u, psi, eta, kop);
      EXPECT_LT(g.vector_residual, 1e-9);
      EXPECT_LT(circulant_deviation(g.a), 1e-12);
      EXPECT_TRUE(in_local_commutant(g.a, u, psi));
      const bool is_kframe_vector = kframe_vector_check(u, eta, kop).has_value();
      EXPECT_EQ(is_kframe_vector, g.range_inclusion_holds) << "d=" << d << " k=" << k;
      if (!g.range_inclusion_holds) continue;
      const GeneratedVector back = vector_from_generator(u, psi, g.a, kop);
      EXPECT_LT(dist(back.eta.matrix(), eta.matrix()), 1e-9 * std::max(1.0, eta.norm()));
      const auto direct = kframe_vector_check(u, eta, kop);
      if (std::isinf(*direct->lower)) {
        EXPECT_TRUE(std::isinf(*back.bounds->lower));
      } else {
        EXPECT_NEAR(*back.bounds->lower, *direct->lower, 1e-6 * std::max(1.0, *direct->lower));
      }
    }
  }
}
