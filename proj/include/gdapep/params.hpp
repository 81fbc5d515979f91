// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>

#include "gdapep/errors.hpp"

namespace gdapep {

// Step intervals are open; a point counts as inside only if it clears the
// upper endpoint by this relative margin.  Endpoints themselves are reachable
// through the explicit `unchecked` flags on the rate functions.
inline constexpr double kStepRelTol = 1e-12;

inline bool step_in_open_interval(double t, double upper) {
  return t > 0.0 && t < upper * (1.0 - kStepRelTol);
}

inline void require_step(double t, double upper, const char* context,
                         bool unchecked = false) {
  if (unchecked) {
    if (!(t >= 0.0)) throw StepRangeError(t, upper, context);
    return;
  }
  if (!step_in_open_interval(t, upper)) throw StepRangeError(t, upper, context);
}

// Smoothness/convexity description of a saddle function F(x, y): Lx, Ly are
// the per-block gradient Lipschitz constants, Lxy the cross-block one, and
// mu_x, mu_y the strong convexity/concavity moduli.
class ProblemParams {
 public:
  ProblemParams(double Lx, double Ly, double Lxy, double mu_x, double mu_y)
      : Lx_(Lx), Ly_(Ly), Lxy_(Lxy), mu_x_(mu_x), mu_y_(mu_y) {
    if (!(Lx >= 0.0) || !(Ly >= 0.0) || !(Lxy >= 0.0))
      throw ParameterError("smoothness constants must be nonnegative");
    if (!(mu_x >= 0.0) || !(mu_y >= 0.0))
      throw ParameterError("convexity moduli must be nonnegative");
    if (mu_x > Lx) throw ParameterError("mu_x exceeds Lx");
    if (mu_y > Ly) throw ParameterError("mu_y exceeds Ly");
  }

  double Lx() const { return Lx_; }
  double Ly() const { return Ly_; }
  double Lxy() const { return Lxy_; }
  double mu_x() const { return mu_x_; }
  double mu_y() const { return mu_y_; }

  // Aggregates used by the one-step rate formulas.
  double L() const { return std::max(Lx_, Ly_); }
  double mu() const { return std::min(mu_x_, mu_y_); }

  bool operator==(const ProblemParams&) const = default;

 private:
  double Lx_, Ly_, Lxy_, mu_x_, mu_y_;
};

}  // namespace gdapep
