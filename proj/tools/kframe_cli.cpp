// kframe: command-line front end for the K-frame toolkit.
//
// Exit codes: 0 verdict true, 1 verdict false, 2 input error,
// 3 internal violation (including suite counterexamples).

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kframe/douglas.hpp"
#include "kframe/frames.hpp"
#include "kframe/harness/instances.hpp"
#include "kframe/harness/io.hpp"
#include "kframe/harness/suites.hpp"
#include "kframe/transforms.hpp"
#include "kframe/unitary.hpp"

namespace {

using kframe::harness::Json;
namespace kh = kframe::harness;

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInputError = 2;
constexpr int kViolation = 3;

struct Options {
  double tol = 1e-9;
  double rank_tol = 1e-10;
  std::uint64_t seed = 42;
  int trials = 0;
  std::string input;
  std::string output;
  std::string format = "text";
  bool timed = false;
};

struct Result {
  Json body;
  int code = kOk;
  std::string summary;  // one-line text headline
};

kframe::ToleranceConfig config(const Options& o) {
  kframe::ToleranceConfig cfg;
  cfg.rel_tol = o.tol;
  cfg.rank_tol = o.rank_tol;
  cfg.validate();
  return cfg;
}

Json read_json(const std::string& path) {
  if (path.empty()) throw kh::SchemaError("--input", "an input document is required");
  std::ifstream in(path);
  if (!in) throw kh::SchemaError("--input", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw kh::SchemaError("--input", std::string("invalid JSON: ") + e.what());
  }
}

template <class T>
const T& need(const std::optional<T>& v, const char* field) {
  if (!v) throw kh::SchemaError(field, "missing field");
  return *v;
}

std::string render_scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void render_text(std::ostream& os, const Json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (const auto& [key, val] : j.items()) {
      const std::string name = prefix.empty() ? key : prefix + "." + key;
      if (val.is_object()) {
        render_text(os, val, name);
      } else {
        os << name << ": " << render_scalar(val) << "\n";
      }
    }
  } else {
    os << (prefix.empty() ? "" : prefix + ": ") << render_scalar(j) << "\n";
  }
}

void emit(const Options& o, const Result& r) {
  std::ostringstream text;
  if (o.format == "json") {
    text << r.body.dump(2) << "\n";
  } else {
    if (!r.summary.empty()) text << r.summary << "\n";
    if (r.body.is_array()) {
      for (const auto& item : r.body) {
        render_text(text, item, "");
        text << "\n";
      }
    } else {
      render_text(text, r.body, "");
    }
  }
  if (o.output.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream out(o.output);
    if (!out) throw kh::SchemaError("--output", "cannot write '" + o.output + "'");
    out << text.str();
  }
}

int verdict(bool ok) { return ok ? kOk : kFalse; }

// ------------------------------------------------------------------ commands

Result cmd_check(const Options& o, const std::string& kind) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto& f = need(d.frame, "frame");
  std::optional<kframe::FrameBounds> b;
  if (kind == "bessel") {
    b = kframe::bessel_check(f, cfg);
  } else if (kind == "frame") {
    b = kframe::frame_check(f, cfg);
  } else {
    b = kframe::kframe_check(f, need(d.K, "K"), cfg);
  }
  return {Json{{"check", kind}, {"holds", b.has_value()}, {"bounds", kh::to_json(b)}}, verdict(b.has_value()),
          kind + (b ? ": yes" : ": no")};
}

Result cmd_bounds(const Options& o) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto& f = need(d.frame, "frame");
  Json j{{"bessel", kh::to_json(kframe::bessel_check(f, cfg))}, {"frame", kh::to_json(kframe::frame_check(f, cfg))}};
  if (d.K) j["kframe"] = kh::to_json(kframe::kframe_check(f, *d.K, cfg));
  return {j, kOk, ""};
}

Result cmd_dual(const Options& o) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  kh::Document out(d.space);
  out.frame = kframe::canonical_dual(need(d.frame, "frame"), cfg);
  return {kh::document_to_json(out), kOk, ""};
}

Result cmd_reconstruct(const Options& o) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto r = kframe::reconstruct(need(d.frame, "frame"), need(d.x, "x"), cfg);
  return {kh::to_json(r), verdict(r.residual <= cfg.rel_tol && r.dual_residual <= cfg.rel_tol), ""};
}

Result cmd_atomic(const Options& o) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto& f = need(d.frame, "frame");
  const auto& k = need(d.K, "K");
  const auto rep = kframe::atomic_system_check(f, k, cfg);
  Json j{{"atomic", kh::to_json(rep)}};
  if (d.x && rep.conditions[0]) {
    const auto dec = kframe::atomic_coefficients(f, k, *d.x, cfg);
    Json coeffs = Json::array();
    for (const auto& a : dec.coefficients) coeffs.push_back(kh::matrix_to_json(a));
    j["coefficients"] = std::move(coeffs);
    j["coefficient_bound"] = kh::number_to_json(dec.bound);
    j["synthesis_residual"] = kh::number_to_json(dec.synthesis_residual);
    j["bound_certified"] = dec.bound_certified;
  }
  if (!rep.consistent()) throw kframe::InternalViolation("atomic-system conditions disagree");
  return {j, verdict(rep.conditions[0]), ""};
}

Result cmd_douglas(const Options& o) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto r = kframe::douglas_factorize(need(d.T_prime, "T_prime"), need(d.T, "T"), cfg);
  if (!r.consistent()) throw kframe::InternalViolation("Douglas conditions disagree");
  return {kh::to_json(r), verdict(r.inclusion_holds), ""};
}

Result cmd_sum_range(const Options& o) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto r = kframe::sum_range_sqrt_check(need(d.A, "A"), need(d.B, "B"), cfg);
  return {kh::to_json(r), verdict(r.holds), ""};
}

Result cmd_douglas2(const Options& o) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto r = kframe::two_term_douglas(need(d.A, "A"), need(d.B1, "B1"), need(d.B2, "B2"), cfg);
  if (!r.consistent()) throw kframe::InternalViolation("two-term Douglas conditions disagree");
  return {kh::to_json(r), verdict(r.verdicts[0]), ""};
}

Result cmd_kframe_sum(const Options& o) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto r = kframe::kframe_sum(need(d.frame, "frame"), need(d.frame_g, "frame_g"), need(d.K, "K"), cfg);
  if (r.hypotheses_hold() && !r.certified()) throw kframe::InternalViolation("sum family not certified");
  return {kh::to_json(r), verdict(r.certified()), ""};
}

Result cmd_transform(const Options& o, const std::string& name) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto& f = need(d.frame, "frame");
  if (name == "bessel-image") {
    const auto img = kframe::bessel_image(f, need(d.M, "M"), cfg);
    Json j{{"family", kh::family_to_json(img.family)},
           {"optimal_bound", kh::number_to_json(img.optimal_bound)},
           {"certified_bound", kh::number_to_json(img.certified_bound)}};
    return {j, kOk, ""};
  }
  using Fn = kframe::TransformReport (*)(const kframe::FrameFamily&, const kframe::AdjointableOperator&,
                                         const kframe::AdjointableOperator&, const kframe::ToleranceConfig&);
  Fn fn = nullptr;
  const char* third = "T";
  if (name == "mframe") {
    fn = kframe::mframe_from_kframe;
    third = "M";
  } else if (name == "mframe-synthesis") {
    fn = kframe::mframe_via_synthesis;
    third = "M";
  } else if (name == "surjective") {
    fn = kframe::surjectivity_consequence;
  } else if (name == "restricted") {
    fn = kframe::restricted_kframe;
  } else if (name == "coisometry") {
    fn = kframe::coisometry_image;
  } else if (name == "invertible") {
    fn = kframe::invertibility_consequence;
  } else if (name == "surjective-iff") {
    fn = kframe::surjectivity_equivalence;
  }
  const auto& op = third[0] == 'M' ? need(d.M, "M") : need(d.T, "T");
  const auto r = fn(f, need(d.K, "K"), op, cfg);
  if (r.violation()) throw kframe::InternalViolation(name + ": hypotheses hold but the conclusion fails");
  return {kh::to_json(r), verdict(r.verdict()), ""};
}

Result cmd_unitary(const Options& o, const std::string& mode) {
  const auto cfg = config(o);
  const kh::Document d = kh::parse_document(read_json(o.input), cfg);
  const auto& sys = need(d.system, "system");
  const auto& psi = need(d.psi, "psi");
  if (mode == "wandering") {
    const auto r = kframe::wandering_check(sys, psi, cfg);
    return {kh::to_json(r), verdict(r.wandering), ""};
  }
  if (mode == "generator") {
    const auto r = kframe::generator_from_vector(sys, psi, need(d.eta, "eta"), need(d.K, "K"), cfg);
    Json j = kh::to_json(r);
    j["circulant_deviation"] = kh::number_to_json(kframe::circulant_deviation(r.a));
    return {j, verdict(r.range_inclusion_holds), ""};
  }
  const auto r = kframe::vector_from_generator(sys, psi, need(d.A, "A"), need(d.K, "K"), cfg);
  return {kh::to_json(r), verdict(r.bounds.has_value()), ""};
}

Result cmd_suite(const Options& o, const std::string& id) {
  const auto cfg = config(o);
  std::vector<kh::SuiteReport> reports;
  if (id == "all") {
    reports = kh::run_all(o.trials, o.seed, cfg, o.timed);
  } else {
    reports.push_back(kh::run_suite(id, o.trials, o.seed, cfg, o.timed));
  }
  Json arr = Json::array();
  int violations = 0;
  bool passed = true;
  std::ostringstream summary;
  for (const auto& r : reports) {
    arr.push_back(kh::to_json(r));
    violations += r.violations;
    passed = passed && r.passed();
    summary << (r.passed() ? "PASS " : "FAIL ") << r.theorem << "  trials=" << r.trials
            << " satisfying=" << r.satisfying << " violations=" << r.violations << " max_residual=" << r.max_residual
            << "\n";
  }
  Json body{{"seed", o.seed}, {"violations", violations}, {"passed", passed}, {"suites", std::move(arr)}};
  Result res{std::move(body), violations > 0 ? kViolation : verdict(passed), ""};
  if (o.format != "json") {
    std::string s = summary.str();
    if (!s.empty()) s.pop_back();
    res.summary = s;
    res.body = Json{{"violations", violations}, {"passed", passed}};
  }
  return res;
}

Result cmd_generate(const Options& o, const std::string& scenario, int k, int n, int J) {
  kh::InstanceSpec spec;
  spec.seed = o.seed;
  spec.k = k;
  spec.n = n;
  spec.J = J;
  spec.scenario = kh::scenario_from_string(scenario);
  return {kh::to_json(kh::generate_instance(spec, config(o))), kOk, ""};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-frame toolkit for Hilbert modules over matrix algebras"};
  app.require_subcommand(1);
  app.fallthrough();

  Options o;
  app.add_option("--tol", o.tol, "Relative tolerance for verdicts")->capture_default_str();
  app.add_option("--rank-tol", o.rank_tol, "Relative singular-value cutoff for rank")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--trials", o.trials, "Suite trials (0 = suite default)")->capture_default_str();
  app.add_option("--input", o.input, "Input JSON document");
  app.add_option("--output", o.output, "Write output to this file");
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  std::function<Result()> action;

  std::string check_kind;
  auto* check = app.add_subcommand("check", "Bessel, frame or K-frame check with optimal bounds");
  check->add_option("kind", check_kind)->required()->check(CLI::IsMember({"bessel", "frame", "kframe"}));
  check->callback([&] { action = [&] { return cmd_check(o, check_kind); }; });

  app.add_subcommand("bounds", "All optimal bounds of a family")->callback([&] {
    action = [&] { return cmd_bounds(o); };
  });
  app.add_subcommand("dual", "Canonical dual frame")->callback([&] { action = [&] { return cmd_dual(o); }; });
  app.add_subcommand("reconstruct", "Reconstruct x from its frame coefficients")->callback([&] {
    action = [&] { return cmd_reconstruct(o); };
  });
  app.add_subcommand("atomic", "Atomic-system conditions and coefficients")->callback([&] {
    action = [&] { return cmd_atomic(o); };
  });
  app.add_subcommand("douglas", "Douglas factorization of T' through T")->callback([&] {
    action = [&] { return cmd_douglas(o); };
  });
  app.add_subcommand("sum-range", "R(A) + R(B) against R((AA* + BB*)^{1/2})")->callback([&] {
    action = [&] { return cmd_sum_range(o); };
  });
  app.add_subcommand("douglas2", "Solve A = B1 X + B2 Y")->callback([&] { action = [&] { return cmd_douglas2(o); }; });
  app.add_subcommand("kframe-sum", "Sum of two K-frames")->callback([&] {
    action = [&] { return cmd_kframe_sum(o); };
  });

  std::string transform_name;
  auto* transform = app.add_subcommand("transform", "K-frames under operators");
  transform->add_option("name", transform_name)
      ->required()
      ->check(CLI::IsMember({"bessel-image", "mframe", "mframe-synthesis", "surjective", "restricted", "coisometry",
                             "invertible", "surjective-iff"}));
  transform->callback([&] { action = [&] { return cmd_transform(o, transform_name); }; });

  std::string unitary_mode;
  auto* unitary = app.add_subcommand("unitary", "Unitary systems and generators");
  unitary->add_option("mode", unitary_mode)->required()->check(CLI::IsMember({"wandering", "generator", "vector"}));
  unitary->callback([&] { action = [&] { return cmd_unitary(o, unitary_mode); }; });

  std::string suite_id;
  auto* suite = app.add_subcommand("suite", "Randomized verification suite");
  suite->add_option("id", suite_id, "Theorem id or 'all'")->required();
  suite->add_flag("--timed", o.timed, "Include wall time in the report");
  suite->callback([&] { action = [&] { return cmd_suite(o, suite_id); }; });

  std::string scenario = "frame";
  int gk = 1;
  int gn = 2;
  int gj = 3;
  auto* generate = app.add_subcommand("generate", "Emit a random instance document");
  generate->add_option("--scenario", scenario)->capture_default_str();
  generate->add_option("--k", gk)->capture_default_str();
  generate->add_option("--n", gn)->capture_default_str();
  generate->add_option("--J", gj)->capture_default_str();
  generate->callback([&] { action = [&] { return cmd_generate(o, scenario, gk, gn, gj); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    const Result r = action();
    emit(o, r);
    return r.code;
  } catch (const kframe::InternalViolation& e) {
    std::cerr << "internal violation: " << e.what() << "\n";
    return kViolation;
  } catch (const kframe::PreconditionFailed& e) {
    std::cerr << "precondition failed (" << e.hypothesis() << "): " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInputError;
  }
}
