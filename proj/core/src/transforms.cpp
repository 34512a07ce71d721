#include "kframe/transforms.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kframe/douglas.hpp"

namespace kframe {
namespace {

constexpr double kBoundSlack = 1e-6;
constexpr double kInf = std::numeric_limits<double>::infinity();

bool at_least(double measured, double derived) {
  if (std::isinf(derived)) return std::isinf(measured);
  return measured >= derived * (1.0 - kBoundSlack);
}

double ratio(double num, double den) {
  if (std::isinf(num) || den == 0.0) return kInf;
  return num / den;
}

Hypothesis surjective_hypothesis(const char* name, const AdjointableOperator& op, const ToleranceConfig& cfg) {
  const RealVector s = linalg::singular_values(op.matrix());
  const double rel = s(0) > 0.0 ? s(s.size() - 1) / s(0) : 0.0;
  return {name, rank(op, cfg) == op.codomain().dim(), rel};
}

Hypothesis kframe_hypothesis(const char* name, const std::optional<FrameBounds>& b) {
  return {name, b.has_value(), b && b->lower ? *b->lower : 0.0};
}

std::string format(const char* label, double v) {
  std::ostringstream os;
  os.precision(12);
  os << label << v;
  return os.str();
}

}  // namespace

double commutator_defect(const AdjointableOperator& k, const AdjointableOperator& t) {
  const double scale = k.norm() * t.norm();
  if (scale == 0.0) return 0.0;
  return (compose(k, t) - compose(t, k)).norm() / scale;
}

BesselImage bessel_image(const FrameFamily& f, const AdjointableOperator& m, const ToleranceConfig& cfg) {
  FrameFamily image = f.mapped(m);
  const double d = bessel_check(f, cfg).upper;
  const double opt = bessel_check(image, cfg).upper;
  const double mn = m.norm();
  return {std::move(image), opt, d * mn * mn};
}

TransformReport mframe_from_kframe(const FrameFamily& f, const AdjointableOperator& k,
                                   const AdjointableOperator& m, const ToleranceConfig& cfg) {
  TransformReport out;
  const auto kb = kframe_check(f, k, cfg);
  const DouglasReport dr = douglas_factorize(m, k, cfg);
  out.hypotheses.push_back(kframe_hypothesis("F is a K-frame", kb));
  out.hypotheses.push_back({"R(M) subset R(K)", dr.inclusion_holds, dr.residual});
  out.hypotheses.push_back({"closure of R(K*) complemented", true, 0.0});

  out.measured_bounds = kframe_check(f, m, cfg);
  if (!out.hypotheses_hold()) {
    out.conclusion_holds = out.measured_bounds.has_value();
    return out;
  }
  const double lambda_prime = *dr.lambda_min;
  out.derived_bounds = FrameBounds{BoundKind::kframe, ratio(*kb->lower, lambda_prime), kb->upper};
  out.notes.push_back(format("lambda' (M M* <= lambda' K K*) = ", lambda_prime));
  out.conclusion_holds = out.measured_bounds && at_least(*out.measured_bounds->lower, *out.derived_bounds->lower);
  return out;
}

TransformReport mframe_via_synthesis(const FrameFamily& f, const AdjointableOperator& k,
                                     const AdjointableOperator& m, const ToleranceConfig& cfg) {
  TransformReport out;
  const SynthesisCharacterization viak = kframe_via_synthesis(f, k, cfg);
  const RangeInclusion mk = range_inclusion(m, k, cfg);
  out.hypotheses.push_back({"F is a K-frame (L e_j = x_j, R(K) subset R(L))", viak.verdict,
                            viak.inclusion.relative_residual});
  out.hypotheses.push_back({"R(M) subset R(K)", mk.holds, mk.relative_residual});
  out.hypotheses.push_back({"closure of R(T) complemented", true, 0.0});

  const SynthesisCharacterization viam = kframe_via_synthesis(f, m, cfg);
  out.measured_bounds = kframe_check(f, m, cfg);
  out.conclusion_holds = viam.verdict && out.measured_bounds.has_value();
  return out;
}

TransformReport surjectivity_consequence(const FrameFamily& f, const AdjointableOperator& k,
                                         const AdjointableOperator& t, const ToleranceConfig& cfg) {
  TransformReport out;
  out.notes.push_back("dense range of K read as surjectivity (finite rank)");
  const FrameFamily image = f.mapped(t);
  out.hypotheses.push_back(surjective_hypothesis("K has dense range", k, cfg));
  out.hypotheses.push_back(kframe_hypothesis("F is a K-frame", kframe_check(f, k, cfg)));
  out.measured_bounds = kframe_check(image, k, cfg);
  out.hypotheses.push_back(kframe_hypothesis("{T x_j} is a K-frame", out.measured_bounds));
  out.hypotheses.push_back({"T has closed range", true, 0.0});
  out.conclusion_holds = rank(t, cfg) == t.codomain().dim();
  return out;
}

TransformReport restricted_kframe(const FrameFamily& f, const AdjointableOperator& k,
                                  const AdjointableOperator& t, const ToleranceConfig& cfg) {
  TransformReport out;
  const auto kb = kframe_check(f, k, cfg);
  const double comm = commutator_defect(k, t);
  const AdjointableOperator tk_adj = compose(adjoint(t), adjoint(k));  // T* K*
  const AdjointableOperator kt_adj = compose(adjoint(k), adjoint(t));  // K* T*
  const RangeInclusion adj_inc = range_inclusion(tk_adj, kt_adj, cfg);
  out.hypotheses.push_back(kframe_hypothesis("F is a K-frame", kb));
  out.hypotheses.push_back({"KT = TK", comm <= cfg.rel_tol, comm});
  out.hypotheses.push_back({"R(T* K*) subset R(K* T*)", adj_inc.holds, adj_inc.relative_residual});
  out.hypotheses.push_back({"T has closed range", true, 0.0});

  // Lower bound on the submodule R(T): compress S' and K K* by P = P_R(T).
  const FrameFamily image = f.mapped(t);
  const AdjointableOperator p = range_projector(t, cfg);
  const AdjointableOperator s_c = compose(p, compose(image.frame_operator(), p));
  const AdjointableOperator q_c = compose(p, compose(outer_square(k), p));
  // A compression that vanishes in exact arithmetic leaves rounding noise, which a
  // relative rank cutoff would read as full rank; measure against the uncompressed scale.
  const auto compressed = [&](const AdjointableOperator& c, double reference) {
    Matrix h = linalg::hermitian_part(c.matrix());
    if (linalg::spectral_norm(h) <= cfg.rank_tol * reference) h.setZero();
    return AdjointableOperator(c.domain(), std::move(h));
  };
  const AdjointableOperator s_herm = compressed(s_c, image.frame_operator().norm());
  const AdjointableOperator q_herm = compressed(q_c, outer_square(k).norm());
  const auto lower = optimal_lower_bound(s_herm, q_herm, cfg);
  const double upper = bessel_check(image, cfg).upper;
  if (lower) {
    out.measured_bounds = FrameBounds{BoundKind::kframe, *lower, upper};
    const double c = std::isinf(*lower) ? 0.0 : *lower * (1.0 - kBoundSlack);
    out.conclusion_holds = psd_order(Scalar(c) * q_herm, s_herm, cfg).holds;
  }

  if (kb && std::isfinite(*kb->lower)) {
    // Proof route: lambda lambda' / ||(T^+)*||^2 with (KT)(KT)* <= (1/lambda')(TK)(TK)*.
    const DouglasReport dr = douglas_factorize(compose(k, t), compose(t, k), cfg);
    const double tpinv = pseudo_inverse(t, cfg).norm();
    if (dr.lambda_min && *dr.lambda_min > 0.0 && tpinv > 0.0) {
      const double lambda_prime = 1.0 / *dr.lambda_min;
      out.derived_bounds = FrameBounds{BoundKind::kframe, *kb->lower * lambda_prime / (tpinv * tpinv), upper};
      out.notes.push_back(format("proof bound lambda*lambda'/||(T^+)*||^2 = ", *out.derived_bounds->lower));
      out.notes.push_back(format("same with ||(T^+)*||^2 in the numerator = ",
                                 *kb->lower * lambda_prime * tpinv * tpinv));
    }
  }
  if (out.measured_bounds) out.notes.push_back(format("measured restricted bound = ", *out.measured_bounds->lower));
  return out;
}

TransformReport coisometry_image(const FrameFamily& f, const AdjointableOperator& k, const AdjointableOperator& t,
                                 const ToleranceConfig& cfg) {
  TransformReport out;
  const auto kb = kframe_check(f, k, cfg);
  const AdjointableOperator tt = outer_square(t);
  const double coiso = linalg::spectral_norm(tt.matrix() - Matrix::Identity(tt.domain().dim(), tt.domain().dim()));
  const AdjointableOperator tk_adj = compose(adjoint(t), adjoint(k));  // T* K*
  const AdjointableOperator kt_adj = compose(adjoint(k), adjoint(t));  // K* T*
  const RangeInclusion adj_inc = range_inclusion(tk_adj, kt_adj, cfg);
  out.hypotheses.push_back(kframe_hypothesis("F is a K-frame", kb));
  out.hypotheses.push_back({"T T* = I", coiso <= cfg.rel_tol, coiso});
  out.hypotheses.push_back({"R(T* K*) subset R(K* T*)", adj_inc.holds, adj_inc.relative_residual});
  out.hypotheses.push_back({"closure of R(TK) complemented", true, 0.0});

  const FrameFamily image = f.mapped(t);
  out.measured_bounds = kframe_check(image, k, cfg);
  out.conclusion_holds = out.measured_bounds.has_value();

  // ||T* K* x||^2 <= lambda' ||K* T* x||^2  <=>  R(KT) subset R(TK).
  const DouglasReport dr = douglas_factorize(compose(k, t), compose(t, k), cfg);
  out.notes.push_back(dr.inclusion_holds ? "R(KT) subset R(TK): holds" : "R(KT) subset R(TK): fails");
  if (kb && dr.lambda_min) {
    out.derived_bounds = FrameBounds{BoundKind::kframe, ratio(*kb->lower, *dr.lambda_min), kb->upper};
    out.notes.push_back(format("lambda' = ", *dr.lambda_min));
    if (out.measured_bounds) {
      out.conclusion_holds = at_least(*out.measured_bounds->lower, *out.derived_bounds->lower);
    }
  }
  return out;
}

TransformReport invertibility_consequence(const FrameFamily& f, const AdjointableOperator& k,
                                          const AdjointableOperator& t, const ToleranceConfig& cfg) {
  TransformReport out;
  out.notes.push_back("dense range of K read as surjectivity (finite rank)");
  out.hypotheses.push_back(surjective_hypothesis("K has dense range", k, cfg));
  out.hypotheses.push_back(kframe_hypothesis("F is a K-frame", kframe_check(f, k, cfg)));
  out.measured_bounds = kframe_check(f.mapped(t), k, cfg);
  out.hypotheses.push_back(kframe_hypothesis("{T x_j} is a K-frame", out.measured_bounds));
  out.hypotheses.push_back(kframe_hypothesis("{T* x_j} is a K-frame", kframe_check(f.mapped(adjoint(t)), k, cfg)));
  out.hypotheses.push_back({"T has closed range", true, 0.0});
  const RealVector s = linalg::singular_values(t.matrix());
  out.conclusion_holds = s(0) > 0.0 && s(s.size() - 1) > cfg.rank_tol * s(0);
  out.notes.push_back(format("smallest singular value of T = ", s(s.size() - 1)));
  return out;
}

TransformReport surjectivity_equivalence(const FrameFamily& f, const AdjointableOperator& k,
                                         const AdjointableOperator& t, const ToleranceConfig& cfg) {
  TransformReport out;
  out.notes.push_back("dense range of K read as surjectivity (finite rank)");
  const double comm = commutator_defect(k, t);
  out.hypotheses.push_back(surjective_hypothesis("K has dense range", k, cfg));
  out.hypotheses.push_back(kframe_hypothesis("F is a K-frame", kframe_check(f, k, cfg)));
  out.hypotheses.push_back({"TK = KT", comm <= cfg.rel_tol, comm});
  out.hypotheses.push_back({"T has closed range", true, 0.0});
  out.measured_bounds = kframe_check(f.mapped(t), k, cfg);
  const bool image_is_kframe = out.measured_bounds.has_value();
  const bool surjective = rank(t, cfg) == t.codomain().dim();
  out.notes.push_back(image_is_kframe ? "{T x_j} is a K-frame" : "{T x_j} is not a K-frame");
  out.notes.push_back(surjective ? "T is surjective" : "T is not surjective");
  out.conclusion_holds = image_is_kframe == surjective;
  return out;
}

}  // namespace kframe
