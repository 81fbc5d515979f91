// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0
//
// Performance-estimation programs for one simultaneous GDA step.  The worst
// case over the function class is relaxed to a pair of Gram matrices (one per
// block) plus a vector of function values, subject to interpolation,
// cross-Lipschitz and normalization rows.  The resulting conic program is
// solved by bisection on the contraction factor, each feasibility query
// running Douglas-Rachford projections between the product cone
// (PSD x PSD x nonnegative slacks) and the affine subspace of the rows.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdapep/oracles.hpp"
#include "gdapep/params.hpp"

namespace gdapep {

// One affine row  <ax, X> + <ay, Y> + cf . f  (<= | ==)  rhs  over the Gram
// blocks X, Y and the function-value vector f.
struct PepConstraint {
  Matrix ax;
  Matrix ay;
  Vector cf;
  double rhs = 0.0;
  bool equality = false;
  std::string tag;
};

// Gram column layout (full mode, order 9).  Column 0 of the x block is the
// start point x1; columns 1..8 are the partial gradients G_x^{i,k} in the
// order (1,1),(1,2),(1,s),(2,1),(2,2),(2,s),(s,1),(s,2), where i is the
// x-point, k the y-point and s the saddle.  The y block mirrors this with
// column 0 = y1 and gradients G_y^{k,j} ordered
// (1,1),(2,1),(s,1),(1,2),(2,2),(s,2),(1,s),(2,s).  Function values are
// row-major over (i,k) in {1,2,s}^2 with F(s,s) pinned to zero by an equality
// row.  Reduced mode drops the post-step point (order 4): x columns
// (1,1),(1,s),(s,1), y columns (1,1),(s,1),(1,s), f over {1,s}^2.
struct PepProgram {
  int gram_order = 9;
  int n_fvals = 9;
  double t = 0.0;
  std::vector<PepConstraint> rows;
  Matrix obj_x;  // maximize <obj_x, X> + <obj_y, Y>
  Matrix obj_y;
  int normalization_row = -1;
  std::vector<std::string> warnings;
};

// Program for the smooth strongly-convex-strongly-concave class.  Requires
// t > 0 and mu_x < Lx, mu_y < Ly (the interpolation rows degenerate at
// equality).  Reduced mode keeps only the start and saddle points; the
// optimal value is unchanged because the certificates never touch the
// post-step triples.
PepProgram build_pep_strongly_convex(const ProblemParams& p, double t,
                                     bool reduced = false);

// Program for the convex-concave class with quadratic gradient growth
// mu_f at the saddle.  Requires 0 <= mu_f < l; mu_f == 0 is accepted but
// recorded as a warning since the growth row then carries no growth.
PepProgram build_pep_qgg(double l, double lxy, double mu_f, double t,
                         bool reduced = false);

enum class SolveStatus { kOptimal, kMaxIter, kInfeasible };
std::string to_string(SolveStatus status);

struct SdpSolution {
  // Objective divided by the normalization constant; rescaling the
  // normalization row leaves the reported value unchanged.
  double value = 0.0;
  Matrix gram_x;
  Matrix gram_y;
  Vector fvals;
  SolveStatus status = SolveStatus::kMaxIter;
  // max of the affine residual at the returned point and the final bisection
  // bracket width; NaN-free even on failure paths.
  double kkt_residual = 0.0;
  int queries = 0;
  long long projections = 0;
};

struct SolverOptions {
  double tol = 1e-6;              // bisection bracket target
  long long max_projections = 100000;  // DR iterations per feasibility query
  int max_queries = 50;
  double upper = 1.5;             // initial bracket is [0, upper]
  double over_relax = 1.8;        // DR relaxation factor
};

SdpSolution solve_sdp(const PepProgram& prog, const SolverOptions& opt = {});

// Worst violation of the program rows at a candidate point: |lhs - rhs| for
// equalities, max(0, lhs - rhs) for inequalities.
double constraint_violation(const PepProgram& prog, const Matrix& gram_x,
                            const Matrix& gram_y, const Vector& fvals);

// Objective value <obj_x, X> + <obj_y, Y> at a candidate point.
double objective_value(const PepProgram& prog, const Matrix& gram_x,
                       const Matrix& gram_y);

}  // namespace gdapep
