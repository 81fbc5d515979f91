// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>

#include "gdapep/oracles.hpp"

namespace gdapep {

// A worst-case problem instance with its worst-case unit start point.
struct TightStart {
  QuadraticSaddle oracle;
  Vector x1;
  Vector y1;
};

struct TightnessReport {
  double ratio;  // measured one-step contraction of squared distance
  double alpha;  // closed-form factor
  double gap;    // |ratio - alpha|
};

struct LowerBoundInstance {
  QuadraticSaddle oracle;
  Vector x1;
  Vector y1;
  double alpha_lb;  // >= 1: no one-step contraction without strong convexity
};

// The diagonal-block bilinear-coupled instance attaining rate_alpha(L, mu,
// Lxy, t) with equality after one step: A = diag(L, mu_x), B the
// antidiagonal coupling of strength Lxy, C = diag(L, mu), and the start
// point of unit norm supported on the worst 2x2 block of the update map.
// mu_x defaults to mu and may be overridden upward (mu <= mu_x <= L); the
// start moves to the other coupled block in that case.  Requires Lxy > 0.
TightStart tight_bilinear_start(double L, double mu, double Lxy, double t,
                                std::optional<double> mu_x_override =
                                    std::nullopt);

// One GDA step from the constructed start; gap = |ratio - rate_alpha|.
TightnessReport verify_tightness(double L, double mu, double Lxy, double t,
                                 std::optional<double> mu_x_override =
                                     std::nullopt);

// The mu_x = 0 instance showing no contraction is possible without strong
// convexity on one side: start of norm r whose one-step squared-distance
// ratio equals alpha_lb >= 1.
LowerBoundInstance lower_bound_instance(double L, double Lxy, double mu_y,
                                        double t, double r);

}  // namespace gdapep
