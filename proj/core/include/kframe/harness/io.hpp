#pragma once

// JSON documents. Complex numbers are [re, im], matrices are row-major
// nested arrays, and every document carries "algebra_k" and "module_n".
// Operators are either a bare (kn)x(kn) matrix (an endomorphism of A^n) or
// {"domain_n", "codomain_n", "matrix"}. Infinite bounds are written "inf".

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "kframe/algebra.hpp"
#include "kframe/douglas.hpp"
#include "kframe/frames.hpp"
#include "kframe/harness/instances.hpp"
#include "kframe/harness/suites.hpp"
#include "kframe/transforms.hpp"
#include "kframe/unitary.hpp"

namespace kframe::harness {

using Json = nlohmann::ordered_json;

class SchemaError : public Error {
 public:
  SchemaError(std::string path, const std::string& what) : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// Input bundle for the CLI. Any field may be absent.
struct Document {
  explicit Document(ModuleSpace s) : space(s) {}

  ModuleSpace space;
  std::optional<FrameFamily> frame;
  std::optional<FrameFamily> frame_g;
  std::optional<AdjointableOperator> K, M, T, T_prime, A, B, B1, B2;
  std::optional<ModuleElement> x, psi, eta;
  std::optional<UnitarySystem> system;
};

Json number_to_json(double v);
double number_from_json(const Json& j, const std::string& path);

Json matrix_to_json(const Matrix& m);
/// Throws SchemaError on ragged rows or non-numeric entries.
Matrix matrix_from_json(const Json& j, const std::string& path);

Json element_to_json(const ModuleElement& x);
Json operator_to_json(const AdjointableOperator& t);
Json family_to_json(const FrameFamily& f);

/// Throws SchemaError with the offending path.
Document parse_document(const Json& j, const ToleranceConfig& cfg = {});
Json document_to_json(const Document& d);

Json to_json(const FrameBounds& b);
Json to_json(const std::optional<FrameBounds>& b);
Json to_json(const Reconstruction& r);
Json to_json(const AtomicSystemReport& r);
Json to_json(const SynthesisCharacterization& r);
Json to_json(const DouglasReport& r);
Json to_json(const RangeIdentity& r);
Json to_json(const SumSolveReport& r);
Json to_json(const KFrameSumReport& r);
Json to_json(const TransformReport& r);
Json to_json(const WanderingReport& r);
Json to_json(const GeneratorReport& r);
Json to_json(const GeneratedVector& r);
Json to_json(const SuiteReport& r);
Json to_json(const Instance& inst);

}  // namespace kframe::harness
