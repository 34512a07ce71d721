#pragma once

#include <gtest/gtest.h>

#include <kframe/algebra.hpp>
#include <kframe/harness/rng.hpp>

namespace kt {

using kframe::AdjointableOperator;
using kframe::Matrix;
using kframe::ModuleElement;
using kframe::ModuleSpace;
using kframe::Scalar;

inline Matrix real(std::initializer_list<std::initializer_list<double>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.begin()->size());
  Matrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double v : row) m(i, j++) = Scalar(v);
    ++i;
  }
  return m;
}

inline Matrix diag(std::initializer_list<double> d) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) {
    m(i, i) = Scalar(v);
    ++i;
  }
  return m;
}

inline ModuleElement row(const ModuleSpace& s, std::initializer_list<double> v) {
  return ModuleElement(s, real({v}));
}

inline double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace kt
