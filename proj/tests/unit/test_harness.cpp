#include "test_support.hpp"

#include <kframe/douglas.hpp>
#include <kframe/linalg.hpp>
#include <kframe/harness/instances.hpp>
#include <kframe/harness/io.hpp>
#include <kframe/harness/suites.hpp>

#include <set>

using namespace kframe;
using namespace kframe::harness;

TEST(Rng, DeriveSeedSeparatesStreamsAndTrials) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t stream = 0; stream < 8; ++stream) {
    for (std::uint64_t trial = 0; trial < 64; ++trial) seen.insert(derive_seed(42, stream, trial));
  }
  EXPECT_EQ(seen.size(), 8U * 64U);
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
}

TEST(Rng, SameSeedSameDraws) {
  Rng a(7);
  Rng b(7);
  EXPECT_EQ(a.gaussian(3, 3), b.gaussian(3, 3));
  EXPECT_EQ(a.unitary(4), b.unitary(4));
}

TEST(Rng, StructuredDraws) {
  Rng rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.integer(1, 6);
    const Matrix u = rng.unitary(n);
    EXPECT_LT((u * u.adjoint() - Matrix::Identity(n, n)).norm(), 1e-12);
    const int r = rng.integer(0, n);
    EXPECT_EQ(linalg::numerical_rank(rng.with_rank(n, n + 1, r), 1e-10), r);
    const Matrix p = rng.positive(n, r);
    EXPECT_LT(linalg::hermitian_defect(p), 1e-12);
    EXPECT_GE(linalg::hermitian_eigenvalues(p)(0), -1e-12);
  }
}

TEST(Instances, ScenarioNamesRoundTrip) {
  for (const Scenario s : {Scenario::bessel, Scenario::frame, Scenario::kframe, Scenario::douglas_pair,
                           Scenario::sum_pair, Scenario::transform, Scenario::unitary}) {
    EXPECT_EQ(scenario_from_string(to_string(s)), s);
  }
  EXPECT_THROW(scenario_from_string("banach"), std::exception);
}

TEST(Instances, SeedZeroFrameExample) {
  InstanceSpec spec;
  spec.seed = 0;
  spec.k = 1;
  spec.n = 2;
  spec.J = 3;
  spec.scenario = Scenario::frame;
  const Instance inst = generate_instance(spec);
  ASSERT_TRUE(inst.frame.has_value());
  EXPECT_EQ(inst.frame->size(), 3);
  EXPECT_TRUE(frame_check(*inst.frame).has_value());
}

TEST(Instances, GenerationIsBitReproducible) {
  InstanceSpec spec;
  spec.seed = 1234;
  spec.k = 2;
  spec.n = 3;
  spec.J = 5;
  for (const Scenario s : {Scenario::kframe, Scenario::sum_pair, Scenario::transform, Scenario::unitary}) {
    spec.scenario = s;
    EXPECT_EQ(to_json(generate_instance(spec)).dump(), to_json(generate_instance(spec)).dump()) << to_string(s);
  }
}

TEST(Instances, InvalidSpecsAreRejected) {
  InstanceSpec spec;
  spec.n = 4;
  spec.J = 2;
  spec.scenario = Scenario::frame;
  EXPECT_THROW(generate_instance(spec), std::exception);
  spec.J = 4;
  spec.k = 0;
  EXPECT_THROW(spec.validate(), std::exception);
  spec.k = 4;
  EXPECT_THROW(spec.validate(), std::exception);
}

TEST(Instances, GeneratedInstancesMeetTheirScenario) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    InstanceSpec spec;
    spec.seed = seed;
    spec.k = 1 + static_cast<int>(seed % 3);
    spec.n = 1 + static_cast<int>(seed % 4);
    spec.J = spec.n + static_cast<int>(seed % 5);

    spec.scenario = Scenario::frame;
    EXPECT_TRUE(frame_check(*generate_instance(spec).frame).has_value());

    spec.scenario = Scenario::kframe;
    const Instance kf = generate_instance(spec);
    EXPECT_TRUE(kframe_check(*kf.frame, *kf.K).has_value());

    spec.scenario = Scenario::sum_pair;
    const Instance sp = generate_instance(spec);
    EXPECT_TRUE(kframe_sum(*sp.frame, *sp.frame_g, *sp.K).hypotheses_hold());

    spec.scenario = Scenario::unitary;
    const Instance un = generate_instance(spec);
    EXPECT_TRUE(is_wandering(*un.system, *un.psi));
  }
}

TEST(Suites, CatalogIsStable) {
  const auto& cat = suite_catalog();
  ASSERT_FALSE(cat.empty());
  std::set<std::string> ids;
  for (const auto& s : cat) ids.insert(s.id);
  EXPECT_EQ(ids.size(), cat.size());
  for (const char* id : {"douglas", "kframe", "atomic", "reconstruction", "sum_range", "douglas_sum", "kframe_sum",
                         "bessel", "mframe", "surjective", "restricted", "coisometry", "remark_surjective",
                         "invertible", "unitary_generator", "psd_oracle"}) {
    EXPECT_TRUE(ids.count(id)) << id;
  }
}

TEST(Suites, UnknownIdThrows) { EXPECT_THROW(run_suite("no_such_suite", 1, 0), UnknownTheorem); }

TEST(Suites, KFrameSumAtSeedSeven) {
  const SuiteReport r = run_suite("kframe_sum", 200, 7);
  EXPECT_EQ(r.trials, 200);
  EXPECT_EQ(r.violations, 0);
  EXPECT_GE(r.satisfying, 50);
  EXPECT_TRUE(r.passed());
}

TEST(Suites, ReportsAreDeterministic) {
  const std::string a = to_json(run_suite("douglas", 50, 3)).dump();
  const std::string b = to_json(run_suite("douglas", 50, 3)).dump();
  EXPECT_EQ(a, b);
  EXPECT_NE(a, to_json(run_suite("douglas", 50, 4)).dump());
}

TEST(Suites, WallTimeOnlyWhenTimed) {
  EXPECT_FALSE(to_json(run_suite("gram_range", 5, 1)).contains("wall_seconds"));
  EXPECT_TRUE(to_json(run_suite("gram_range", 5, 1, {}, true)).contains("wall_seconds"));
}
