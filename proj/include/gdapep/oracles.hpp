// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <memory>
#include <utility>

#include "gdapep/params.hpp"

namespace gdapep {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Evaluation interface for a smooth convex-concave saddle function F(x, y).
// Implementations are immutable after construction and safe to evaluate from
// many threads.
class SaddleOracle {
 public:
  virtual ~SaddleOracle() = default;

  virtual int dim_x() const = 0;
  virtual int dim_y() const = 0;

  virtual double eval(const Vector& x, const Vector& y) const = 0;
  virtual Vector grad_x(const Vector& x, const Vector& y) const = 0;
  virtual Vector grad_y(const Vector& x, const Vector& y) const = 0;

  // Smoothness/convexity constants of the oracle's class membership.
  virtual ProblemParams params() const = 0;

  // Whether the solution set is available in closed form.
  virtual bool has_solution_set() const = 0;

  // Euclidean projection onto the solution set.  Throws
  // UnsupportedOracleError when has_solution_set() is false.
  virtual std::pair<Vector, Vector> project_solution(const Vector& x,
                                                     const Vector& y) const = 0;

 protected:
  void check_dims(const Vector& x, const Vector& y) const;
};

// F(x, y) = x'Ax/2 + x'By - y'Cy/2 with A, C symmetric positive
// semidefinite.  The solution set is the nullspace of the stationarity map
// [A B; B' -C]; projection onto it works for singular A or C too.
class QuadraticSaddle final : public SaddleOracle {
 public:
  QuadraticSaddle(Matrix A, Matrix B, Matrix C);

  const Matrix& A() const { return A_; }
  const Matrix& B() const { return B_; }
  const Matrix& C() const { return C_; }

  int dim_x() const override { return static_cast<int>(A_.rows()); }
  int dim_y() const override { return static_cast<int>(C_.rows()); }
  double eval(const Vector& x, const Vector& y) const override;
  Vector grad_x(const Vector& x, const Vector& y) const override;
  Vector grad_y(const Vector& x, const Vector& y) const override;
  ProblemParams params() const override { return params_; }
  bool has_solution_set() const override { return true; }
  std::pair<Vector, Vector> project_solution(const Vector& x,
                                             const Vector& y) const override;

 private:
  // quadratic_from_params pins params_ to the exact input constants; the
  // spectral recomputation in the constructor can be off by an ulp.
  friend QuadraticSaddle quadratic_from_params(const ProblemParams& p);

  Matrix A_, B_, C_;
  ProblemParams params_;
  Matrix null_basis_;  // orthonormal columns spanning the solution set
};

// The fixed 1x1 example F(x, y) = f(x + y) - 2 y^2 where f vanishes on
// [-1, 1] and grows quadratically outside; f is C^1 with 2-Lipschitz
// derivative.  Solution set {(x, 0) : |x| <= 1}.
class PiecewiseQGGExample final : public SaddleOracle {
 public:
  static double f(double s);
  static double fprime(double s);

  int dim_x() const override { return 1; }
  int dim_y() const override { return 1; }
  double eval(const Vector& x, const Vector& y) const override;
  Vector grad_x(const Vector& x, const Vector& y) const override;
  Vector grad_y(const Vector& x, const Vector& y) const override;
  // Derivative ranges: f'' in [0, 2], d^2F/dy^2 in [-4, -2].
  ProblemParams params() const override { return {2.0, 4.0, 2.0, 0.0, 2.0}; }
  bool has_solution_set() const override { return true; }
  std::pair<Vector, Vector> project_solution(const Vector& x,
                                             const Vector& y) const override;
};

// Uncoupled composition F(x, y) = f(x) - f(y) of the same hinge f; neither
// strongly convex nor strongly concave, solution set [-1, 1]^2.
class UncoupledPiecewiseExample final : public SaddleOracle {
 public:
  int dim_x() const override { return 1; }
  int dim_y() const override { return 1; }
  double eval(const Vector& x, const Vector& y) const override;
  Vector grad_x(const Vector& x, const Vector& y) const override;
  Vector grad_y(const Vector& x, const Vector& y) const override;
  ProblemParams params() const override { return {2.0, 2.0, 0.0, 0.0, 0.0}; }
  bool has_solution_set() const override { return true; }
  std::pair<Vector, Vector> project_solution(const Vector& x,
                                             const Vector& y) const override;
};

// The 2x2/2x2 diagonal-block instance A = diag(Lx, mu_x),
// B = [[0, Lxy], [Lxy, 0]], C = diag(Ly, mu_y); params() reproduces the
// input constants exactly.
QuadraticSaddle quadratic_from_params(const ProblemParams& p);

// Both partial gradients evaluated at the same point.
std::pair<Vector, Vector> eval_grads(const SaddleOracle& oracle,
                                     const Vector& x, const Vector& y);

struct Projection {
  Vector x_star;
  Vector y_star;
  double dist_sq;
};

// Euclidean projection onto the oracle's solution set plus the squared
// distance to it.
Projection project_solution_set(const SaddleOracle& oracle, const Vector& x,
                                const Vector& y);

}  // namespace gdapep
