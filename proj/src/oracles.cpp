// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include "gdapep/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>

#include "gdapep/errors.hpp"

namespace gdapep {

void SaddleOracle::check_dims(const Vector& x, const Vector& y) const {
  if (x.size() != dim_x() || y.size() != dim_y())
    throw DimensionError("oracle expects dimensions (" +
                         std::to_string(dim_x()) + ", " +
                         std::to_string(dim_y()) + "), got (" +
                         std::to_string(x.size()) + ", " +
                         std::to_string(y.size()) + ")");
}

namespace {

ProblemParams spectral_params(const Matrix& A, const Matrix& B,
                              const Matrix& C) {
  Eigen::SelfAdjointEigenSolver<Matrix> ea(A), ec(C);
  const double la_min = ea.eigenvalues().minCoeff();
  const double la_max = ea.eigenvalues().maxCoeff();
  const double lc_min = ec.eigenvalues().minCoeff();
  const double lc_max = ec.eigenvalues().maxCoeff();
  const double tol_a = 1e-9 * std::max(1.0, std::abs(la_max));
  const double tol_c = 1e-9 * std::max(1.0, std::abs(lc_max));
  if (la_min < -tol_a || lc_min < -tol_c)
    throw ParameterError("quadratic blocks must be positive semidefinite");
  double lxy = 0.0;
  if (B.size() > 0) {
    Eigen::JacobiSVD<Matrix> svd(B);
    lxy = svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
  }
  return {std::max(la_max, 0.0), std::max(lc_max, 0.0), lxy,
          std::max(la_min, 0.0), std::max(lc_min, 0.0)};
}

Matrix stationary_nullspace(const Matrix& A, const Matrix& B,
                            const Matrix& C) {
  const auto n = A.rows(), m = C.rows();
  Matrix M(n + m, n + m);
  M.topLeftCorner(n, n) = A;
  M.topRightCorner(n, m) = B;
  M.bottomLeftCorner(m, n) = B.transpose();
  M.bottomRightCorner(m, m) = -C;
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return Matrix::Identity(n + m, n + m);
  const double tol = 1e-12 * smax * static_cast<double>(n + m);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > tol) ++rank;
  return svd.matrixV().rightCols(n + m - rank);
}

}  // namespace

QuadraticSaddle::QuadraticSaddle(Matrix A, Matrix B, Matrix C)
    : A_(std::move(A)),
      B_(std::move(B)),
      C_(std::move(C)),
      params_(1, 1, 0, 0, 0) {
  if (A_.rows() == 0 || C_.rows() == 0)
    throw DimensionError("A and C must be nonempty");
  if (A_.rows() != A_.cols() || C_.rows() != C_.cols())
    throw DimensionError("A and C must be square");
  if (B_.rows() != A_.rows() || B_.cols() != C_.rows())
    throw DimensionError("B must be dim_x() by dim_y()");
  const double asym_a = (A_ - A_.transpose()).cwiseAbs().maxCoeff();
  const double asym_c = (C_ - C_.transpose()).cwiseAbs().maxCoeff();
  const double scale_a = std::max(1.0, A_.cwiseAbs().maxCoeff());
  const double scale_c = std::max(1.0, C_.cwiseAbs().maxCoeff());
  if (asym_a > 1e-12 * scale_a || asym_c > 1e-12 * scale_c)
    throw ParameterError("A and C must be symmetric");
  A_ = ((A_ + A_.transpose()) / 2.0).eval();
  C_ = ((C_ + C_.transpose()) / 2.0).eval();
  params_ = spectral_params(A_, B_, C_);
  null_basis_ = stationary_nullspace(A_, B_, C_);
}

double QuadraticSaddle::eval(const Vector& x, const Vector& y) const {
  check_dims(x, y);
  return 0.5 * x.dot(A_ * x) + x.dot(B_ * y) - 0.5 * y.dot(C_ * y);
}

Vector QuadraticSaddle::grad_x(const Vector& x, const Vector& y) const {
  check_dims(x, y);
  return A_ * x + B_ * y;
}

Vector QuadraticSaddle::grad_y(const Vector& x, const Vector& y) const {
  check_dims(x, y);
  return B_.transpose() * x - C_ * y;
}

std::pair<Vector, Vector> QuadraticSaddle::project_solution(
    const Vector& x, const Vector& y) const {
  check_dims(x, y);
  Vector z(x.size() + y.size());
  z << x, y;
  const Vector p = null_basis_ * (null_basis_.transpose() * z);
  return {p.head(x.size()), p.tail(y.size())};
}

double PiecewiseQGGExample::f(double s) {
  if (s > 1.0) return (s - 1.0) * (s - 1.0);
  if (s < -1.0) return (s + 1.0) * (s + 1.0);
  return 0.0;
}

double PiecewiseQGGExample::fprime(double s) {
  if (s > 1.0) return 2.0 * (s - 1.0);
  if (s < -1.0) return 2.0 * (s + 1.0);
  return 0.0;
}

double PiecewiseQGGExample::eval(const Vector& x, const Vector& y) const {
  check_dims(x, y);
  return f(x(0) + y(0)) - 2.0 * y(0) * y(0);
}

Vector PiecewiseQGGExample::grad_x(const Vector& x, const Vector& y) const {
  check_dims(x, y);
  Vector g(1);
  g(0) = fprime(x(0) + y(0));
  return g;
}

Vector PiecewiseQGGExample::grad_y(const Vector& x, const Vector& y) const {
  check_dims(x, y);
  Vector g(1);
  g(0) = fprime(x(0) + y(0)) - 4.0 * y(0);
  return g;
}

std::pair<Vector, Vector> PiecewiseQGGExample::project_solution(
    const Vector& x, const Vector& y) const {
  check_dims(x, y);
  Vector px(1), py(1);
  px(0) = std::clamp(x(0), -1.0, 1.0);
  py(0) = 0.0;
  return {px, py};
}

double UncoupledPiecewiseExample::eval(const Vector& x,
                                       const Vector& y) const {
  check_dims(x, y);
  return PiecewiseQGGExample::f(x(0)) - PiecewiseQGGExample::f(y(0));
}

Vector UncoupledPiecewiseExample::grad_x(const Vector& x,
                                         const Vector& y) const {
  check_dims(x, y);
  Vector g(1);
  g(0) = PiecewiseQGGExample::fprime(x(0));
  return g;
}

Vector UncoupledPiecewiseExample::grad_y(const Vector& x,
                                         const Vector& y) const {
  check_dims(x, y);
  Vector g(1);
  g(0) = -PiecewiseQGGExample::fprime(y(0));
  return g;
}

std::pair<Vector, Vector> UncoupledPiecewiseExample::project_solution(
    const Vector& x, const Vector& y) const {
  check_dims(x, y);
  Vector px(1), py(1);
  px(0) = std::clamp(x(0), -1.0, 1.0);
  py(0) = std::clamp(y(0), -1.0, 1.0);
  return {px, py};
}

QuadraticSaddle quadratic_from_params(const ProblemParams& p) {
  Matrix A = Matrix::Zero(2, 2), B = Matrix::Zero(2, 2), C = Matrix::Zero(2, 2);
  A(0, 0) = p.Lx();
  A(1, 1) = p.mu_x();
  C(0, 0) = p.Ly();
  C(1, 1) = p.mu_y();
  B(0, 1) = p.Lxy();
  B(1, 0) = p.Lxy();
  QuadraticSaddle q(A, B, C);
  // The constants of this construction are its diagonal entries and the
  // coupling strength; bypass the spectral recomputation's rounding.
  q.params_ = p;
  return q;
}

std::pair<Vector, Vector> eval_grads(const SaddleOracle& oracle,
                                     const Vector& x, const Vector& y) {
  return {oracle.grad_x(x, y), oracle.grad_y(x, y)};
}

Projection project_solution_set(const SaddleOracle& oracle, const Vector& x,
                                const Vector& y) {
  if (!oracle.has_solution_set())
    throw UnsupportedOracleError(
        "oracle has no closed-form solution set to project onto");
  auto [px, py] = oracle.project_solution(x, y);
  const double d2 = (x - px).squaredNorm() + (y - py).squaredNorm();
  return {std::move(px), std::move(py), d2};
}

}  // namespace gdapep
