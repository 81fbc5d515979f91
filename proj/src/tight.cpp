// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include "gdapep/tight.hpp"

#include <cmath>

#include "gdapep/gda.hpp"
#include "gdapep/rates.hpp"

namespace gdapep {

TightStart tight_bilinear_start(double L, double mu, double Lxy, double t,
                                std::optional<double> mu_x_override) {
  if (!(mu > 0.0) || !(mu <= L))
    throw ParameterError("tight_bilinear_start: requires 0 < mu <= L");
  if (!(Lxy > 0.0))
    throw ParameterError("tight_bilinear_start: requires coupling Lxy > 0");
  const double mu_x = mu_x_override.value_or(mu);
  if (!(mu_x >= mu) || !(mu_x <= L))
    throw ParameterError("tight_bilinear_start: mu_x override must lie in [mu, L]");
  require_step(t, rate_alpha_step_upper(L, mu, Lxy), "tight_bilinear_start");

  // Worst start in the coordinates of one coupled 2x2 block of the update
  // map [[1 - t a, -t Lxy], [t Lxy, 1 - t b]], written at (a, b) = (mu, L).
  const double b = beta(L, mu, Lxy, t);
  const double a = 2.0 - t * (L + mu) + b;
  const double v1 = std::sqrt(a / (2.0 * b));
  const double v2 = -Lxy * t * std::sqrt(2.0 / (b * a));

  QuadraticSaddle oracle = quadratic_from_params({L, L, Lxy, mu_x, mu});
  Vector x1 = Vector::Zero(2), y1 = Vector::Zero(2);
  if (mu_x == mu) {
    // Block (x_2, y_1) carries the (mu, L) pairing.
    x1(1) = v1;
    y1(0) = v2;
  } else {
    // With mu_x > mu the worst pairing moves to block (x_1, y_2), whose map
    // is the (L, mu) transpose-flip of the block above; its top singular
    // vector is the flipped image of v under the original block map.
    const double sigma = std::sqrt(rate_alpha(L, mu, Lxy, t).alpha);
    const double u1 = ((1.0 - t * mu) * v1 - t * Lxy * v2) / sigma;
    const double u2 = (t * Lxy * v1 + (1.0 - t * L) * v2) / sigma;
    x1(0) = u2;
    y1(1) = u1;
  }
  return {std::move(oracle), std::move(x1), std::move(y1)};
}

TightnessReport verify_tightness(double L, double mu, double Lxy, double t,
                                 std::optional<double> mu_x_override) {
  const TightStart ts = tight_bilinear_start(L, mu, Lxy, t, mu_x_override);
  const Trajectory traj = run(ts.oracle, ts.x1, ts.y1, t, 1);
  const double ratio = contraction_ratio(traj, 1);
  const double alpha = rate_alpha(L, mu, Lxy, t).alpha;
  return {ratio, alpha, std::abs(ratio - alpha)};
}

LowerBoundInstance lower_bound_instance(double L, double Lxy, double mu_y,
                                        double t, double r) {
  if (!(L > 0.0) || !(Lxy > 0.0) || !(mu_y > 0.0) || !(t > 0.0) || !(r > 0.0))
    throw ParameterError("lower_bound_instance: all arguments must be positive");
  const double b0 = beta(L, 0.0, Lxy, t);
  const double a0 = 2.0 - L * t + b0;
  Matrix A = Matrix::Zero(2, 2), B = Matrix::Zero(2, 2), C = Matrix::Zero(2, 2);
  A(0, 0) = L;
  B(0, 1) = Lxy;
  B(1, 0) = Lxy;
  C(0, 0) = L;
  C(1, 1) = mu_y;
  Vector x1 = Vector::Zero(2), y1 = Vector::Zero(2);
  x1(1) = r * std::sqrt(a0 / (2.0 * b0));
  y1(0) = -r * Lxy * t * std::sqrt(2.0 / (b0 * a0));
  const double alpha_lb =
      1.0 + 0.5 * (L * L + 2.0 * Lxy * Lxy) * t * t - L * t + 0.5 * L * t * b0;
  return {QuadraticSaddle(A, B, C), std::move(x1), std::move(y1), alpha_lb};
}

}  // namespace gdapep
