// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "gdapep/oracles.hpp"

namespace gdapep {

// Iterate sequence of a GDA run with per-iterate squared distances to the
// solution set (or to a designated saddle point).
struct Trajectory {
  std::vector<std::pair<Vector, Vector>> iterates;
  std::vector<double> distances_sq;
  double step = 0.0;
};

// One simultaneous update: both partial gradients are evaluated at the same
// (x, y) before either coordinate moves.
std::pair<Vector, Vector> gda_step(const SaddleOracle& oracle, const Vector& x,
                                   const Vector& y, double t);

// Runs N steps from (x0, y0).  Distances are measured against the oracle's
// solution set when it is available, otherwise against `reference`.  Aborts
// with DivergedError when the squared distance exceeds 1e12 times the
// initial one.
Trajectory run(const SaddleOracle& oracle, const Vector& x0, const Vector& y0,
               double t, int N,
               const std::optional<std::pair<Vector, Vector>>& reference =
                   std::nullopt);

// distances_sq[k] / distances_sq[k-1].
double contraction_ratio(const Trajectory& traj, int k);

}  // namespace gdapep
