// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "gdapep/oracles.hpp"

namespace gdapep {

// A (point, gradient, value) triple from one function.
struct DataTriple {
  Vector x;
  Vector g;
  double f = 0.0;
};

// Residual of the smooth strongly convex interpolation inequality for the
// ordered pair (i, j): nonnegative iff the pair is consistent with some
// L-smooth mu-strongly convex function.  Requires 0 <= mu < L strictly.
double interp_convex_residual(const DataTriple& i, const DataTriple& j,
                              double mu, double L);

// Concave counterpart (sign-flipped condition).
double interp_concave_residual(const DataTriple& i, const DataTriple& j,
                               double mu, double L);

// Lxy^2 ||pa - pb||^2 - ||ga - gb||^2; nonnegative iff the squared
// cross-Lipschitz bound holds for this pair.
double cross_lipschitz_residual(const Vector& ga, const Vector& gb,
                                const Vector& pa, const Vector& pb,
                                double Lxy);

// <grad_x F, x - x*> - <grad_y F, y - y*> - muF * d^2 with (x*, y*) the
// projection of (x, y) onto the solution set; nonnegative iff the quadratic
// gradient growth inequality holds at (x, y).
double qgg_residual(const SaddleOracle& oracle, const Vector& x,
                    const Vector& y, double muF);

using PointList = std::vector<std::pair<Vector, Vector>>;

// Empirical quadratic-gradient-growth modulus: the minimum over samples of
// the growth ratio.  This is an UPPER bound on the sharp modulus (the true
// infimum is over the whole space).  Samples on the solution set are
// skipped; throws EmptySampleError when none remain.
double estimate_muF(const SaddleOracle& oracle, const PointList& samples);

// Low-discrepancy (Halton) points in the centered box of the given radius,
// deterministic in the seed.
PointList halton_box_sampler(int nx, int ny, double radius, int count,
                             std::uint64_t seed);

// Uniform n-by-n grid over [lo, hi]^2 for 1+1-dimensional oracles.
PointList grid_sampler_2d(double lo, double hi, int n_per_dim);

}  // namespace gdapep
