#include "kframe/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace kframe::linalg {

Svd svd(const Matrix& a) {
  if (a.size() == 0) {
    return {RealVector(0), Matrix(a.rows(), 0), Matrix(a.cols(), 0)};
  }
  Eigen::JacobiSVD<Matrix> solver(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return {solver.singularValues(), solver.matrixU(), solver.matrixV()};
}

RealVector singular_values(const Matrix& a) {
  if (a.size() == 0) return RealVector(0);
  Eigen::JacobiSVD<Matrix> solver(a);
  return solver.singularValues();
}

double spectral_norm(const Matrix& a) {
  const RealVector s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(0);
}

int numerical_rank(const RealVector& sigma, double rank_tol) {
  if (sigma.size() == 0 || sigma(0) <= 0.0) return 0;
  const double cutoff = rank_tol * sigma(0);
  int r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++r;
  }
  return r;
}

int numerical_rank(const Matrix& a, double rank_tol) {
  return numerical_rank(singular_values(a), rank_tol);
}

Matrix pinv(const Matrix& a, double rank_tol) {
  const Svd d = svd(a);
  const int r = numerical_rank(d.sigma, rank_tol);
  Matrix out = Matrix::Zero(a.cols(), a.rows());
  for (int i = 0; i < r; ++i) {
    out.noalias() += (d.v.col(i) / d.sigma(i)) * d.u.col(i).adjoint();
  }
  return out;
}

Matrix hermitian_part(const Matrix& a) {
  return (a + a.adjoint()) * 0.5;
}

double hermitian_defect(const Matrix& a) {
  const double scale = std::max(1.0, a.norm());
  return (a - a.adjoint()).norm() / scale;
}

HermitianEig hermitian_eig(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

RealVector hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

Matrix row_space_basis(const Matrix& a, double rank_tol) {
  const Svd d = svd(a);
  const int r = numerical_rank(d.sigma, rank_tol);
  return d.v.leftCols(r).adjoint();
}

}  // namespace kframe::linalg
