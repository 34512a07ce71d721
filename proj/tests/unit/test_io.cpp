#include "test_support.hpp"

#include <kframe/harness/instances.hpp>
#include <kframe/harness/io.hpp>

using namespace kframe;
using namespace kframe::harness;

namespace {

std::string schema_path(const Json& j) {
  try {
    parse_document(j);
  } catch (const SchemaError& e) {
    return e.path() + " | " + e.what();
  }
  return "";
}

}  // namespace

TEST(Io, NumbersRoundTripIncludingInfinities) {
  EXPECT_EQ(number_to_json(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(number_to_json(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_TRUE(std::isinf(number_from_json(Json("inf"), "x")));
  EXPECT_TRUE(std::isnan(number_from_json(Json("nan"), "x")));
  EXPECT_DOUBLE_EQ(number_from_json(Json(0.1), "x"), 0.1);
  EXPECT_THROW(number_from_json(Json("big"), "x"), SchemaError);
}

TEST(Io, MatrixRoundTripIsBitExact) {
  Rng rng(5);
  const Matrix m = rng.gaussian(3, 4);
  const Json j = Json::parse(matrix_to_json(m).dump());
  const Matrix back = matrix_from_json(j, "m");
  EXPECT_EQ(back, m);
}

TEST(Io, MatrixAcceptsRealEntriesAndRejectsRagged) {
  const Matrix m = matrix_from_json(Json::parse("[[1, 2], [3, [4, 5]]]"), "m");
  EXPECT_EQ(m(1, 1), Scalar(4, 5));
  EXPECT_EQ(m(0, 1), Scalar(2, 0));
  EXPECT_THROW(matrix_from_json(Json::parse("[[1, 2], [3]]"), "m"), SchemaError);
  EXPECT_THROW(matrix_from_json(Json::parse("[]"), "m"), SchemaError);
}

TEST(Io, DocumentRoundTrip) {
  for (const Scenario sc : {Scenario::kframe, Scenario::sum_pair, Scenario::transform, Scenario::unitary,
                            Scenario::douglas_pair}) {
    InstanceSpec spec;
    spec.seed = 9;
    spec.k = 2;
    spec.n = 3;
    spec.J = 4;
    spec.scenario = sc;
    const Instance inst = generate_instance(spec);
    Document d(inst.space);
    d.frame = inst.frame;
    d.frame_g = inst.frame_g;
    d.K = inst.K;
    d.M = inst.M;
    d.T = inst.T;
    d.T_prime = inst.T_prime;
    d.psi = inst.psi;
    d.eta = inst.eta;
    d.system = inst.system;
    const std::string first = document_to_json(d).dump();
    const Document back = parse_document(Json::parse(first));
    EXPECT_EQ(document_to_json(back).dump(), first) << to_string(sc);
  }
}

TEST(Io, MissingOrBadAlgebraSizeIsNamed) {
  EXPECT_NE(schema_path(Json::parse(R"({"module_n": 2})")).find("algebra_k"), std::string::npos);
  EXPECT_NE(schema_path(Json::parse(R"({"algebra_k": 0, "module_n": 2})")).find("algebra_k"), std::string::npos);
  EXPECT_NE(schema_path(Json::parse(R"({"algebra_k": 1, "module_n": -1})")).find("module_n"), std::string::npos);
  EXPECT_NE(schema_path(Json::parse("[1, 2]")), "");
}

TEST(Io, WrongOperatorShapeNamesExpectedShape) {
  const std::string msg = schema_path(Json::parse(R"({"algebra_k": 1, "module_n": 2, "K": [[1, 0, 0], [0, 1, 0]]})"));
  EXPECT_NE(msg.find("K"), std::string::npos);
  EXPECT_NE(msg.find("(kn)x(km)"), std::string::npos);
  EXPECT_NE(msg.find("2x2"), std::string::npos);
}

TEST(Io, WrongElementShapeInFamilyIsIndexed) {
  const std::string msg = schema_path(Json::parse(R"({"algebra_k": 1, "module_n": 2, "frame": [[[1, 0]], [[1]]]})"));
  EXPECT_NE(msg.find("frame[1]"), std::string::npos);
}

TEST(Io, CyclicFlagBuildsShiftSystem) {
  const Document d = parse_document(Json::parse(R"({"algebra_k": 2, "module_n": 4, "cyclic": true})"));
  ASSERT_TRUE(d.system.has_value());
  EXPECT_EQ(d.system->size(), 4);
}

TEST(Io, NonUnitarySystemIsASchemaError) {
  const std::string msg = schema_path(Json::parse(R"({"algebra_k": 1, "module_n": 1, "system": [[[2]]]})"));
  EXPECT_NE(msg.find("system"), std::string::npos);
}

TEST(Io, RectangularOperatorObject) {
  const Document d = parse_document(Json::parse(
      R"({"algebra_k": 1, "module_n": 2, "T": {"domain_n": 3, "codomain_n": 2, "matrix": [[1, 0], [0, 1], [0, 0]]}})"));
  ASSERT_TRUE(d.T.has_value());
  EXPECT_EQ(d.T->domain().n(), 3);
  EXPECT_EQ(d.T->codomain().n(), 2);
}

TEST(Io, BoundsSerializeInfinityAsString) {
  FrameBounds b;
  b.kind = BoundKind::kframe;
  b.lower = std::numeric_limits<double>::infinity();
  b.upper = 2.0;
  const Json j = to_json(b);
  EXPECT_EQ(j.at("lower"), "inf");
  EXPECT_EQ(j.at("kind"), "kframe");
  EXPECT_TRUE(to_json(std::optional<FrameBounds>{}).is_null());
}
