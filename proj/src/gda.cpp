// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include "gdapep/gda.hpp"

#include <cmath>
#include <string>

#include "gdapep/errors.hpp"

namespace gdapep {

std::pair<Vector, Vector> gda_step(const SaddleOracle& oracle, const Vector& x,
                                   const Vector& y, double t) {
  if (!(t > 0.0))
    throw StepRangeError(t, INFINITY, "gda_step: step must be positive");
  auto [gx, gy] = eval_grads(oracle, x, y);
  return {x - t * gx, y + t * gy};
}

namespace {

double distance_sq(const SaddleOracle& oracle, const Vector& x,
                   const Vector& y,
                   const std::optional<std::pair<Vector, Vector>>& reference) {
  if (oracle.has_solution_set())
    return project_solution_set(oracle, x, y).dist_sq;
  if (!reference)
    throw UnsupportedOracleError(
        "run: oracle has no solution set and no reference point was given");
  return (x - reference->first).squaredNorm() +
         (y - reference->second).squaredNorm();
}

}  // namespace

Trajectory run(const SaddleOracle& oracle, const Vector& x0, const Vector& y0,
               double t, int N,
               const std::optional<std::pair<Vector, Vector>>& reference) {
  if (N < 1) throw ParameterError("run: N must be at least 1");
  Trajectory traj;
  traj.step = t;
  traj.iterates.reserve(N + 1);
  traj.distances_sq.reserve(N + 1);
  traj.iterates.emplace_back(x0, y0);
  const double d0 = distance_sq(oracle, x0, y0, reference);
  traj.distances_sq.push_back(d0);
  for (int k = 0; k < N; ++k) {
    const auto& [x, y] = traj.iterates.back();
    auto [x2, y2] = gda_step(oracle, x, y, t);
    const double d2 = distance_sq(oracle, x2, y2, reference);
    if (d2 > 1e12 * std::max(d0, 1e-300))
      throw DivergedError("run: diverged at iteration " + std::to_string(k + 1));
    traj.iterates.emplace_back(std::move(x2), std::move(y2));
    traj.distances_sq.push_back(d2);
  }
  return traj;
}

double contraction_ratio(const Trajectory& traj, int k) {
  if (k < 1 || k >= static_cast<int>(traj.distances_sq.size()))
    throw ParameterError("contraction_ratio: index out of range");
  const double prev = traj.distances_sq[k - 1];
  if (!(prev > 0.0))
    throw DomainError(
        "contraction_ratio: previous iterate already solves the problem");
  return traj.distances_sq[k] / prev;
}

}  // namespace gdapep
