#pragma once

// Dense complex matrix helpers shared by every module. These work on raw
// matrices; the module-level vocabulary lives in algebra.hpp.

#include <complex>

#include <Eigen/Dense>

namespace kframe {

using Scalar = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

struct Svd {
  RealVector sigma;  // descending
  Matrix u;          // thin
  Matrix v;          // thin
};

Svd svd(const Matrix& a);
RealVector singular_values(const Matrix& a);

/// Largest singular value; 0 for an empty or zero matrix.
double spectral_norm(const Matrix& a);

/// Number of singular values strictly above rank_tol * sigma_max.
int numerical_rank(const RealVector& sigma, double rank_tol);
int numerical_rank(const Matrix& a, double rank_tol);

Matrix pinv(const Matrix& a, double rank_tol);

/// (A + A^H) / 2.
Matrix hermitian_part(const Matrix& a);

/// ||A - A^H||_F / max(1, ||A||_F).
double hermitian_defect(const Matrix& a);

struct HermitianEig {
  RealVector values;  // ascending
  Matrix vectors;
};

/// Eigendecomposition of the Hermitian part of `a`.
HermitianEig hermitian_eig(const Matrix& a);
RealVector hermitian_eigenvalues(const Matrix& a);

/// Orthonormal basis (as rows) of the row space of `a`.
Matrix row_space_basis(const Matrix& a, double rank_tol);

}  // namespace linalg
}  // namespace kframe
