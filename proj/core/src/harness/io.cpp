#include "kframe/harness/io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace kframe::harness {
namespace {

std::string child(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

int positive_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 1) throw SchemaError(path, "expected a positive integer");
  return j.get<int>();
}

std::string shape(Eigen::Index r, Eigen::Index c) {
  std::ostringstream os;
  os << r << "x" << c;
  return os.str();
}

Matrix sized_matrix(const Json& j, const std::string& path, Eigen::Index rows, Eigen::Index cols,
                    const std::string& expected) {
  Matrix m = matrix_from_json(j, path);
  if (m.rows() != rows || m.cols() != cols) {
    throw SchemaError(path, "expected " + expected + " = " + shape(rows, cols) + " matrix, got " +
                                shape(m.rows(), m.cols()));
  }
  return m;
}

ModuleElement parse_element(const Json& j, const std::string& path, const ModuleSpace& space) {
  return ModuleElement(space, sized_matrix(j, path, space.k(), space.dim(), "k x (kn)"));
}

AdjointableOperator parse_operator(const Json& j, const std::string& path, const ModuleSpace& space) {
  if (j.is_object()) {
    for (const char* key : {"domain_n", "codomain_n", "matrix"}) {
      if (!j.contains(key)) throw SchemaError(child(path, key), "missing field");
    }
    const ModuleSpace dom(space.k(), positive_int(j.at("domain_n"), child(path, "domain_n")));
    const ModuleSpace cod(space.k(), positive_int(j.at("codomain_n"), child(path, "codomain_n")));
    return AdjointableOperator(dom, cod, sized_matrix(j.at("matrix"), child(path, "matrix"), dom.dim(), cod.dim(),
                                                      "(kn)x(km)"));
  }
  return AdjointableOperator(space, sized_matrix(j, path, space.dim(), space.dim(), "(kn)x(km)"));
}

FrameFamily parse_family(const Json& j, const std::string& path, const ModuleSpace& space) {
  if (!j.is_array()) throw SchemaError(path, "expected an array of module elements");
  std::vector<ModuleElement> elems;
  for (std::size_t i = 0; i < j.size(); ++i) elems.push_back(parse_element(j[i], index(path, i), space));
  return FrameFamily(space, std::move(elems));
}

Json optional_number(const std::optional<double>& v) { return v ? number_to_json(*v) : Json(nullptr); }

Json hypotheses_to_json(const std::vector<Hypothesis>& hs) {
  Json out = Json::array();
  for (const auto& h : hs) {
    out.push_back(Json{{"name", h.name}, {"holds", h.holds}, {"residual", number_to_json(h.residual)}});
  }
  return out;
}

template <std::size_t N>
Json bools(const std::array<bool, N>& a) {
  Json out = Json::array();
  for (bool b : a) out.push_back(b);
  return out;
}

}  // namespace

Json number_to_json(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw SchemaError(path, "expected a number");
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(Json::array({m(i, j).real(), m(i, j).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw SchemaError(path, "expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw SchemaError(index(path, 0), "expected a non-empty row");
  Matrix m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != cols) {
      throw SchemaError(index(path, r), "ragged matrix: expected " + std::to_string(cols) + " entries");
    }
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& e = row[c];
      const std::string ep = index(index(path, r), c);
      Scalar v;
      if (e.is_number()) {
        v = Scalar(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        v = Scalar(e[0].get<double>(), e[1].get<double>());
      } else {
        throw SchemaError(ep, "expected a number or [re, im]");
      }
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v;
    }
  }
  return m;
}

Json element_to_json(const ModuleElement& x) { return matrix_to_json(x.matrix()); }

Json operator_to_json(const AdjointableOperator& t) {
  return Json{{"domain_n", t.domain().n()}, {"codomain_n", t.codomain().n()}, {"matrix", matrix_to_json(t.matrix())}};
}

Json family_to_json(const FrameFamily& f) {
  Json out = Json::array();
  for (const auto& x : f.elements()) out.push_back(element_to_json(x));
  return out;
}

Document parse_document(const Json& j, const ToleranceConfig& cfg) {
  if (!j.is_object()) throw SchemaError("$", "expected a JSON object");
  if (!j.contains("algebra_k")) throw SchemaError("algebra_k", "missing field");
  if (!j.contains("module_n")) throw SchemaError("module_n", "missing field");
  const int k = positive_int(j.at("algebra_k"), "algebra_k");
  const int n = positive_int(j.at("module_n"), "module_n");
  Document d(ModuleSpace(k, n));
  const ModuleSpace& space = d.space;

  if (j.contains("frame")) d.frame = parse_family(j.at("frame"), "frame", space);
  if (j.contains("frame_g")) d.frame_g = parse_family(j.at("frame_g"), "frame_g", space);
  const std::pair<const char*, std::optional<AdjointableOperator>*> ops[] = {
      {"K", &d.K}, {"M", &d.M}, {"T", &d.T}, {"T_prime", &d.T_prime},
      {"A", &d.A}, {"B", &d.B}, {"B1", &d.B1}, {"B2", &d.B2}};
  for (const auto& [key, slot] : ops) {
    if (j.contains(key)) *slot = parse_operator(j.at(key), key, space);
  }
  const std::pair<const char*, std::optional<ModuleElement>*> elems[] = {{"x", &d.x}, {"psi", &d.psi}, {"eta", &d.eta}};
  for (const auto& [key, slot] : elems) {
    if (j.contains(key)) *slot = parse_element(j.at(key), key, space);
  }

  const bool cyclic = j.contains("cyclic") && j.at("cyclic").is_boolean() && j.at("cyclic").get<bool>();
  if (cyclic && j.contains("system")) throw SchemaError("system", "give either \"system\" or \"cyclic\", not both");
  if (cyclic) d.system = cyclic_shift_system(n, k);
  if (j.contains("system")) {
    const Json& s = j.at("system");
    if (!s.is_array()) throw SchemaError("system", "expected an array of operators");
    std::vector<AdjointableOperator> us;
    for (std::size_t i = 0; i < s.size(); ++i) {
      AdjointableOperator u = parse_operator(s[i], index("system", i), space);
      if (!u.is_endomorphism() || !(u.domain() == space)) {
        throw SchemaError(index("system", i), "expected an endomorphism of A^n");
      }
      us.push_back(std::move(u));
    }
    try {
      d.system = UnitarySystem(space, std::move(us), cfg);
    } catch (const Error& e) {
      throw SchemaError("system", e.what());
    }
  }
  return d;
}

Json document_to_json(const Document& d) {
  Json j{{"algebra_k", d.space.k()}, {"module_n", d.space.n()}};
  if (d.frame) j["frame"] = family_to_json(*d.frame);
  if (d.frame_g) j["frame_g"] = family_to_json(*d.frame_g);
  const std::pair<const char*, const std::optional<AdjointableOperator>*> ops[] = {
      {"K", &d.K}, {"M", &d.M}, {"T", &d.T}, {"T_prime", &d.T_prime},
      {"A", &d.A}, {"B", &d.B}, {"B1", &d.B1}, {"B2", &d.B2}};
  for (const auto& [key, slot] : ops) {
    if (*slot) j[key] = operator_to_json(**slot);
  }
  const std::pair<const char*, const std::optional<ModuleElement>*> elems[] = {{"x", &d.x}, {"psi", &d.psi}, {"eta", &d.eta}};
  for (const auto& [key, slot] : elems) {
    if (*slot) j[key] = element_to_json(**slot);
  }
  if (d.system) {
    Json s = Json::array();
    for (const auto& u : d.system->operators()) s.push_back(operator_to_json(u));
    j["system"] = std::move(s);
  }
  return j;
}

Json to_json(const FrameBounds& b) {
  return Json{{"kind", to_string(b.kind)}, {"lower", optional_number(b.lower)}, {"upper", number_to_json(b.upper)}};
}

Json to_json(const std::optional<FrameBounds>& b) { return b ? to_json(*b) : Json(nullptr); }

Json to_json(const Reconstruction& r) {
  return Json{{"value", element_to_json(r.value)},
              {"dual_value", element_to_json(r.dual_value)},
              {"residual", number_to_json(r.residual)},
              {"dual_residual", number_to_json(r.dual_residual)}};
}

Json to_json(const AtomicSystemReport& r) {
  return Json{{"conditions", bools(r.conditions)},
              {"consistent", r.consistent()},
              {"lower", optional_number(r.lower)},
              {"upper", number_to_json(r.upper)},
              {"inclusion_residual", number_to_json(r.inclusion_residual)},
              {"factorization_residual", number_to_json(r.factorization_residual)},
              {"samples", r.samples}};
}

Json to_json(const SynthesisCharacterization& r) {
  return Json{{"verdict", r.verdict},
              {"basis_residual", number_to_json(r.basis_residual)},
              {"inclusion_residual", number_to_json(r.inclusion.relative_residual)}};
}

Json to_json(const DouglasReport& r) {
  return Json{{"inclusion_holds", r.inclusion_holds},
              {"condition_verdicts", bools(r.verdicts)},
              {"residual", number_to_json(r.residual)},
              {"lambda_min", optional_number(r.lambda_min)},
              {"mu", number_to_json(r.mu)},
              {"solution", r.solution ? operator_to_json(*r.solution) : Json(nullptr)}};
}

Json to_json(const RangeIdentity& r) {
  return Json{{"holds", r.holds},
              {"distance", number_to_json(r.distance)},
              {"rank_left", r.rank_left},
              {"rank_right", r.rank_right}};
}

Json to_json(const SumSolveReport& r) {
  return Json{{"verdicts", bools(r.verdicts)},
              {"residual", number_to_json(r.residual)},
              {"lambda", optional_number(r.lambda)},
              {"X", r.x ? operator_to_json(*r.x) : Json(nullptr)},
              {"Y", r.y ? operator_to_json(*r.y) : Json(nullptr)}};
}

Json to_json(const KFrameSumReport& r) {
  return Json{{"hypotheses", hypotheses_to_json(r.hypotheses)},
              {"weak_cross_condition", r.weak_cross_condition},
              {"bounds", to_json(r.bounds)},
              {"lambda", optional_number(r.lambda)},
              {"theorem_lower_bound", optional_number(r.theorem_lower_bound)},
              {"certified", r.certified()},
              {"family", r.family ? family_to_json(*r.family) : Json(nullptr)}};
}

Json to_json(const TransformReport& r) {
  Json notes = Json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  return Json{{"verdict", r.verdict()},
              {"hypotheses", hypotheses_to_json(r.hypotheses)},
              {"conclusion_holds", r.conclusion_holds},
              {"derived_bounds", to_json(r.derived_bounds)},
              {"measured_bounds", to_json(r.measured_bounds)},
              {"notes", std::move(notes)}};
}

Json to_json(const WanderingReport& r) {
  return Json{{"wandering", r.wandering}, {"gram_residual", number_to_json(r.gram_residual)}};
}

Json to_json(const GeneratorReport& r) {
  return Json{{"A", operator_to_json(r.a)},
              {"commutant_residual", number_to_json(r.commutant_residual)},
              {"vector_residual", number_to_json(r.vector_residual)},
              {"range_inclusion_holds", r.range_inclusion_holds}};
}

Json to_json(const GeneratedVector& r) { return Json{{"eta", element_to_json(r.eta)}, {"bounds", to_json(r.bounds)}}; }

Json to_json(const SuiteReport& r) {
  Json j{{"theorem", r.theorem},
         {"statement", r.statement},
         {"trials", r.trials},
         {"satisfying", r.satisfying},
         {"required_satisfying", r.required_satisfying},
         {"violations", r.violations},
         {"max_residual", number_to_json(r.max_residual)},
         {"first_violation", r.first_violation ? Json(*r.first_violation) : Json(nullptr)},
         {"experimental", r.experimental},
         {"passed", r.passed()}};
  if (r.wall_seconds) j["wall_seconds"] = *r.wall_seconds;
  return j;
}

Json to_json(const Instance& inst) {
  Document d(inst.space);
  d.frame = inst.frame;
  d.frame_g = inst.frame_g;
  d.K = inst.K;
  d.M = inst.M;
  d.T = inst.T;
  d.T_prime = inst.T_prime;
  d.psi = inst.psi;
  d.eta = inst.eta;
  Json j = document_to_json(d);
  j["kind"] = to_string(inst.spec.scenario);
  j["seed"] = inst.spec.seed;
  j["attempts"] = inst.attempts;
  if (inst.system) j["cyclic"] = true;
  return j;
}

}  // namespace kframe::harness
