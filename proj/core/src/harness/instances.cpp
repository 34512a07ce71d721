#include "kframe/harness/instances.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "kframe/douglas.hpp"

namespace kframe::harness {
namespace {

constexpr int kMaxAttempts = 100;

constexpr std::array<const char*, 7> kScenarioNames = {"bessel",   "frame",     "kframe", "douglas_pair",
                                                       "sum_pair", "transform", "unitary"};

Scalar random_phase(Rng& rng) { return std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi)); }

Scalar random_value(Rng& rng) { return rng.uniform(0.5, 2.0) * random_phase(rng); }

ModuleElement random_element(Rng& rng, const ModuleSpace& space) {
  return ModuleElement(space, rng.gaussian(space.k(), space.dim()));
}

/// Builds one candidate; returns false when the scenario's hypotheses fail.
bool build(Instance& inst, Rng& rng, const ToleranceConfig& cfg) {
  const ModuleSpace& space = inst.space;
  const int J = inst.spec.J;
  const int dim = space.dim();
  switch (inst.spec.scenario) {
    case Scenario::bessel:
      inst.frame = random_family(rng, space, J);
      return true;
    case Scenario::frame:
      inst.frame = random_family(rng, space, J);
      return frame_check(*inst.frame, cfg).has_value();
    case Scenario::kframe: {
      KFramePair p = random_kframe(rng, space, J);
      const bool ok = kframe_check(p.frame, p.K, cfg).has_value();
      inst.frame = std::move(p.frame);
      inst.K = std::move(p.K);
      return ok;
    }
    case Scenario::douglas_pair: {
      const int p = rng.integer(1, space.n());
      const ModuleSpace pre(space.k(), p);
      inst.T = AdjointableOperator(space, rng.with_rank(dim, dim, rng.integer(0, dim)));
      if (rng.coin()) {
        inst.T_prime = AdjointableOperator(pre, space, rng.gaussian(pre.dim(), dim) * inst.T->matrix());
      } else {
        inst.T_prime = AdjointableOperator(pre, space, rng.with_rank(pre.dim(), dim, rng.integer(0, pre.dim())));
      }
      return true;
    }
    case Scenario::sum_pair: {
      KFramePair p = random_kframe(rng, space, J);
      FrameFamily g = polynomial_companion(rng, p.frame);
      const bool ok = kframe_sum(p.frame, g, p.K, cfg).hypotheses_hold();
      inst.frame = std::move(p.frame);
      inst.frame_g = std::move(g);
      inst.K = std::move(p.K);
      return ok;
    }
    case Scenario::transform: {
      TransformBundle b = random_transform(rng, space, J, J >= space.n() && rng.coin(1.0 / 3.0));
      const bool ok = kframe_check(b.frame, b.K, cfg).has_value();
      inst.frame = std::move(b.frame);
      inst.K = std::move(b.K);
      inst.T = std::move(b.T);
      inst.M = std::move(b.M);
      return ok;
    }
    case Scenario::unitary: {
      inst.system = cyclic_shift_system(space.n(), space.k());
      inst.psi = ModuleElement::basis(space, 0);
      inst.eta = random_element(rng, space);
      inst.K = AdjointableOperator(space, rng.with_rank(dim, dim, rng.integer(0, dim)));
      return is_wandering(*inst.system, *inst.psi, cfg);
    }
  }
  return false;
}

}  // namespace

const char* to_string(Scenario s) { return kScenarioNames.at(static_cast<std::size_t>(s)); }

Scenario scenario_from_string(const std::string& name) {
  for (std::size_t i = 0; i < kScenarioNames.size(); ++i) {
    if (name == kScenarioNames[i]) return static_cast<Scenario>(i);
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

void InstanceSpec::validate() const {
  if (k < 1 || k > 3) throw std::invalid_argument("instance spec: k must be in 1..3");
  if (n < 1 || n > 8) throw std::invalid_argument("instance spec: n must be in 1..8");
  if (J < 1 || J > 16) throw std::invalid_argument("instance spec: J must be in 1..16");
}

FrameFamily random_family(Rng& rng, const ModuleSpace& space, int J) {
  std::vector<ModuleElement> elems;
  elems.reserve(static_cast<std::size_t>(J));
  for (int j = 0; j < J; ++j) elems.push_back(random_element(rng, space));
  return FrameFamily(space, std::move(elems));
}

FrameFamily family_in_rows(Rng& rng, const ModuleSpace& space, const Matrix& basis, int J) {
  std::vector<ModuleElement> elems;
  elems.reserve(static_cast<std::size_t>(J));
  for (int j = 0; j < J; ++j) {
    elems.emplace_back(space, rng.gaussian(space.k(), static_cast<int>(basis.rows())) * basis);
  }
  return FrameFamily(space, std::move(elems));
}

KFramePair random_kframe(Rng& rng, const ModuleSpace& space, int J) {
  const int dim = space.dim();
  const int r = rng.integer(1, std::min(dim, space.k() * J));
  const Matrix basis = rng.orthonormal_columns(dim, r).adjoint();
  FrameFamily f = family_in_rows(rng, space, basis, J);
  const Matrix h = rng.with_rank(dim, r, rng.integer(0, r));
  return {std::move(f), AdjointableOperator(space, h * basis)};
}

TransformBundle random_transform(Rng& rng, const ModuleSpace& space, int J, bool surjective_k, int t_mode) {
  const int dim = space.dim();
  const Matrix q = rng.unitary(dim);
  const int r = surjective_k ? dim : rng.integer(1, std::min(dim, space.k() * J));

  Eigen::VectorXcd kappa = Eigen::VectorXcd::Zero(dim);
  for (int i = 0; i < r; ++i) {
    kappa(i) = (!surjective_k && rng.coin(0.2)) ? Scalar(0.0) : random_value(rng);
  }
  Eigen::VectorXcd tau(dim);
  const int mode = (t_mode >= 0 && t_mode <= 2) ? t_mode : rng.integer(0, 2);
  for (int i = 0; i < dim; ++i) {
    if (mode == 0) {
      tau(i) = random_phase(rng);
    } else if (mode == 1) {
      tau(i) = random_value(rng);
    } else {
      tau(i) = rng.coin(0.4) ? Scalar(0.0) : random_value(rng);
    }
  }
  const Matrix basis = q.leftCols(r).adjoint();
  FrameFamily f = family_in_rows(rng, space, basis, J);
  AdjointableOperator k(space, q * kappa.asDiagonal() * q.adjoint());
  AdjointableOperator t(space, q * tau.asDiagonal() * q.adjoint());
  Matrix m = rng.coin() ? Matrix(rng.gaussian(dim, dim) * k.matrix()) : rng.with_rank(dim, dim, rng.integer(1, dim));
  return {std::move(f), std::move(k), std::move(t), AdjointableOperator(space, std::move(m))};
}

FrameFamily polynomial_companion(Rng& rng, const FrameFamily& f) {
  const Matrix& s = f.frame_operator().matrix();
  const double c0 = rng.uniform(0.2, 1.0);
  const double c1 = rng.uniform(0.2, 1.0);
  const double c2 = rng.uniform(0.2, 1.0);
  const auto dim = s.rows();
  Matrix p = c0 * Matrix::Identity(dim, dim) + c1 * s + c2 * s * s;
  return f.mapped(AdjointableOperator(f.space(), linalg::hermitian_part(p)));
}

Instance generate_instance(const InstanceSpec& spec, const ToleranceConfig& cfg) {
  spec.validate();
  if (spec.scenario == Scenario::frame && spec.J < spec.n) {
    throw InstanceError(spec.seed, "frame scenario needs J >= n (seed " + std::to_string(spec.seed) + ")");
  }
  const auto stream = static_cast<std::uint64_t>(spec.scenario);
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(derive_seed(spec.seed, stream, static_cast<std::uint64_t>(attempt)));
    Instance inst(spec);
    if (build(inst, rng, cfg)) {
      inst.attempts = attempt + 1;
      return inst;
    }
  }
  throw InstanceError(spec.seed, "resampling cap exceeded for scenario " + std::string(to_string(spec.scenario)) +
                                     " (seed " + std::to_string(spec.seed) + ")");
}

}  // namespace kframe::harness
