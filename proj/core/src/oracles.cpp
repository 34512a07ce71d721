#include "kframe/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace kframe {
namespace {

constexpr int kPolishSteps = 30;

Matrix gaussian(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = Scalar(n01(gen), n01(gen));
  }
  return m;
}

}  // namespace

SamplingVerdict psd_sampling_oracle(const AdjointableOperator& p, int trials, std::uint64_t seed,
                                    const ToleranceConfig& cfg) {
  if (!p.is_endomorphism()) throw DimensionMismatch("psd_sampling_oracle: P must be an endomorphism");
  const Matrix herm = linalg::hermitian_part(p.matrix());
  const int k = p.domain().k();
  const int dim = p.domain().dim();
  const double sigma = linalg::spectral_norm(herm);
  const double scale = std::max(1.0, sigma);
  const Matrix shifted = Scalar(sigma) * Matrix::Identity(dim, dim) - herm;

  std::mt19937_64 gen(seed);
  SamplingVerdict out;
  for (int t = 0; t < trials; ++t) {
    Matrix x = gaussian(k, dim, gen);
    if (t % 2 == 1 && sigma > 0.0) {
      for (int s = 0; s < kPolishSteps; ++s) {
        Matrix next = x * shifted;
        const double nrm = linalg::spectral_norm(next);
        if (nrm == 0.0) break;
        x = next / nrm;
      }
    }
    const double xn = linalg::spectral_norm(x);
    if (xn == 0.0) continue;
    const Matrix form = x * herm * x.adjoint();
    const double lo = linalg::hermitian_eigenvalues(form)(0);
    const double normalized = lo / (xn * xn);
    ++out.trials_run;
    out.worst = std::min(out.worst, normalized);
    if (lo < -cfg.rel_tol * scale * xn * xn) {
      out.positive = false;
      break;
    }
  }
  return out;
}

double kframe_bound_bisection_oracle(const FrameFamily& f, const AdjointableOperator& k, const ToleranceConfig& cfg) {
  const AdjointableOperator kk = outer_square(k);
  const double kn = k.norm();
  if (rank(k, cfg) == 0) return std::numeric_limits<double>::infinity();
  const AdjointableOperator& s = f.frame_operator();
  ToleranceConfig tight = cfg;
  tight.rel_tol = std::min(cfg.rel_tol, 1e-12);
  const double d = linalg::spectral_norm(s.matrix());
  double lo = 0.0;
  double hi = d / (kn * kn) + 1.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (psd_order(Scalar(mid) * kk, s, tight).holds) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace kframe
