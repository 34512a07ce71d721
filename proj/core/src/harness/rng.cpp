#include "kframe/harness/rng.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/QR>

namespace kframe::harness {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t trial) {
  std::uint64_t state = seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ (stream * 0xd1b54a32d192ed03ULL);
  h = splitmix64(state);
  state = h ^ (trial * 0x8cb92ba72f3d8dd7ULL);
  return splitmix64(state);
}

double Rng::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }

double Rng::normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }

int Rng::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }

bool Rng::coin(double p) { return uniform(0.0, 1.0) < p; }

Matrix Rng::gaussian(int rows, int cols) {
  Matrix m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal();
      const double im = normal();
      m(i, j) = Scalar(re, im);
    }
  }
  return m;
}

Matrix Rng::unitary(int n) {
  if (n == 0) return Matrix(0, 0);
  const Matrix g = gaussian(n, n);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  return q;
}

Matrix Rng::with_rank(int rows, int cols, int rank, double lo, double hi) {
  rank = std::clamp(rank, 0, std::min(rows, cols));
  const Matrix u = unitary(rows);
  const Matrix v = unitary(cols);
  Matrix out = Matrix::Zero(rows, cols);
  for (int i = 0; i < rank; ++i) out += uniform(lo, hi) * u.col(i) * v.col(i).adjoint();
  return out;
}

Matrix Rng::orthonormal_columns(int n, int r) { return unitary(n).leftCols(r); }

Matrix Rng::positive(int n, int rank, double lo, double hi) {
  rank = std::clamp(rank, 0, n);
  const Matrix u = unitary(n);
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < rank; ++i) out += uniform(lo, hi) * u.col(i) * u.col(i).adjoint();
  return linalg::hermitian_part(out);
}

}  // namespace kframe::harness
