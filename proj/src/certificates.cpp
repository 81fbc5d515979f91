// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include "gdapep/certificates.hpp"

#include <cmath>

#include "gdapep/interpolation.hpp"
#include "gdapep/rates.hpp"
#include "gdapep/rng.hpp"

namespace gdapep {

Certificate certificate_strongly_convex(double L, double mu, double t) {
  if (!(mu > 0.0) || !(mu < L))
    throw ParameterError("certificate_strongly_convex: requires 0 < mu < L");
  require_step(t, rate_alpha_step_upper(L, mu, 1.0),
               "certificate_strongly_convex");
  const double b = beta(L, mu, 1.0, t);
  const double g1 =
      t * (-b + t * (L * (b + t * (L + mu) - 3.0) - mu + 2.0 * t) + 2.0) / b;
  const double g2 = t *
                    (t * t * (mu * (L + mu) + 2.0) - mu * t * b + b -
                     t * (L + 3.0 * mu) + 2.0) /
                    b;
  const double g3 = t * t * (b + L * t - mu * t) / (2.0 * b);
  const double z1 =
      0.5 * t *
      ((L * L + mu * mu) * b / (L - mu) - 2.0 * t * t * (L - mu) / b +
       (L + mu) * (t * (L + mu) - 2.0));
  const double den = 2.0 * t * t * (L + mu) * (L + mu) * (L * mu + 1.0) -
                     8.0 * L * mu * t * (L + mu) + 8.0 * L * mu;
  const double z2 =
      -((L * L * t - L - mu * mu * t + mu) * b -
        L * L * t * (L * t + mu * t - 3.0) -
        (L + mu) * (mu * mu * t * t - 2.0 * mu * t + 2.0 * t * t + 2.0) +
        mu * mu * t) /
      den;
  const double z3 = -(t * (L * L + 6.0 * L * mu + mu * mu) -
                      2.0 * t * t * (L + mu) * (L * mu + 1.0) -
                      (L - mu) * b - 2.0 * (L + mu)) /
                    den;
  const double z4 =
      t * (b + L * t - mu * t) * (b + L * t - mu * t) / (4.0 * (L - mu) * b);
  Certificate c;
  c.gammas = {g1, g2, g3};
  c.zetas = {z1, z2, z3, z4};
  c.beta = b;
  c.alpha = rate_alpha(L, mu, 1.0, t).alpha;
  return c;
}

namespace {

// The free data of one identity instantiation: both start blocks, the six
// gradients that appear, and the four shared function values.
struct Instantiation {
  Vector x1, y1, gx11, gx1s, gxs1, gy11, gy1s, gys1;
  double f11, f1s, fs1, fss;

  Instantiation(Rng& rng, int dim) {
    auto draw = [&](Vector& v) {
      v.resize(dim);
      for (int i = 0; i < dim; ++i) v(i) = rng.normal();
    };
    draw(x1);
    draw(y1);
    draw(gx11);
    draw(gx1s);
    draw(gxs1);
    draw(gy11);
    draw(gy1s);
    draw(gys1);
    f11 = rng.normal();
    f1s = rng.normal();
    fs1 = rng.normal();
    fss = rng.normal();
  }
};

// Weighted sum of the eight interpolation residuals (ordered pairs within
// the x-side and y-side triples), evaluated at convexity modulus `mu`.
double interp_combination(const Instantiation& d, double g1, double g2,
                          double mu, double L) {
  const Vector zero = Vector::Zero(d.x1.size());
  // x-side triples indexed by the frozen y-point k; points are 1 and star.
  const DataTriple xk1_p1{d.x1, d.gx11, d.f11}, xk1_ps{zero, d.gxs1, d.fs1};
  const DataTriple xks_p1{d.x1, d.gx1s, d.f1s}, xks_ps{zero, zero, d.fss};
  // y-side triples indexed by the frozen x-point k.
  const DataTriple yk1_p1{d.y1, d.gy11, d.f11}, yk1_ps{zero, d.gy1s, d.f1s};
  const DataTriple yks_p1{d.y1, d.gys1, d.fs1}, yks_ps{zero, zero, d.fss};
  double s = 0.0;
  s += g1 * interp_convex_residual(xk1_p1, xk1_ps, mu, L);
  s += g2 * interp_convex_residual(xk1_ps, xk1_p1, mu, L);
  s += g2 * interp_convex_residual(xks_p1, xks_ps, mu, L);
  s += g1 * interp_convex_residual(xks_ps, xks_p1, mu, L);
  s += g1 * interp_concave_residual(yk1_p1, yk1_ps, mu, L);
  s += g2 * interp_concave_residual(yk1_ps, yk1_p1, mu, L);
  s += g2 * interp_concave_residual(yks_p1, yks_ps, mu, L);
  s += g1 * interp_concave_residual(yks_ps, yks_p1, mu, L);
  return s;
}

// Rate expression and the four squared cross-Lipschitz residuals (coupling
// normalized to 1).
double rate_and_cross(const Instantiation& d, double alpha, double gcross,
                      double t) {
  double s = (d.x1 - t * d.gx11).squaredNorm() +
             (d.y1 + t * d.gy11).squaredNorm() -
             alpha * (d.x1.squaredNorm() + d.y1.squaredNorm());
  s += gcross * (d.x1.squaredNorm() - (d.gy11 - d.gys1).squaredNorm());
  s += gcross * (d.x1.squaredNorm() - d.gy1s.squaredNorm());
  s += gcross * (d.y1.squaredNorm() - (d.gx11 - d.gx1s).squaredNorm());
  s += gcross * (d.y1.squaredNorm() - d.gxs1.squaredNorm());
  return s;
}

double sum_of_squares_rhs(const Instantiation& d, const Certificate& c,
                          double sign_z2) {
  const double z1 = c.zetas[0], z2 = c.zetas[1], z3 = c.zetas[2],
               z4 = c.zetas[3];
  const Vector vx = d.x1 + sign_z2 * z2 * d.gx11 - z3 * (d.gx1s - d.gxs1);
  const Vector wx = d.gx11 - d.gx1s - d.gxs1;
  const Vector vy = d.y1 - sign_z2 * z2 * d.gy11 - z3 * (d.gy1s - d.gys1);
  const Vector wy = d.gy11 - d.gys1 - d.gy1s;
  return -z1 * vx.squaredNorm() - z4 * wx.squaredNorm() -
         z1 * vy.squaredNorm() - z4 * wy.squaredNorm();
}

void check_trials(int trials, int dim) {
  if (trials < 1 || dim < 1)
    throw ParameterError("identity check: trials and dim must be >= 1");
}

}  // namespace

double identity_residual_strongly_convex(const Certificate& c, double L,
                                         double mu, double t, int trials,
                                         int dim, std::uint64_t seed) {
  check_trials(trials, dim);
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Instantiation d(rng, dim);
    double lhs = rate_and_cross(d, c.alpha, c.gammas[2], t);
    lhs += interp_combination(d, c.gammas[0], c.gammas[1], mu, L);
    const double rhs = sum_of_squares_rhs(d, c, -1.0);
    const double scale = 1.0 + std::max(std::abs(lhs), std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double verify_identity_strongly_convex(double L, double mu, double t,
                                       int trials, int dim,
                                       std::uint64_t seed) {
  const Certificate c = certificate_strongly_convex(L, mu, t);
  return identity_residual_strongly_convex(c, L, mu, t, trials, dim, seed);
}

Certificate certificate_qgg(double L, double muF, double t) {
  if (!(muF > 0.0) || !(muF < L))
    throw ParameterError("certificate_qgg: requires 0 < muF < L");
  require_step(t, qgg_step_upper(L, muF, 1.0), "certificate_qgg");
  const double s = std::sqrt(muF * (L - muF));
  const double b = t * t * (muF * std::sqrt(L - muF) + std::sqrt(muF));
  const double g1 = t * t * (muF / s + muF);
  const double g2 = t * t * (muF * (L - muF) + s) / muF;
  const double g3 = -t * t * (muF * (L + muF) + s) / muF +
                    b / std::sqrt(L - muF) + 2.0 * t;
  const double g4 = 0.5 * t * t * (s + 1.0);
  const double z1 = muF * (b / std::sqrt(L - muF) - muF * t * t);
  const double z2 = b / (2.0 * muF * std::sqrt(muF) * t * t) - 1.0 / muF;
  const double z3 = (s + 1.0) / (2.0 * muF);
  const double q = 2.0 * muF * t * t * (muF - L) + b * std::sqrt(L - muF);
  const double z4 = 0.25 * (2.0 * t * t * (muF * (L - muF) + 1.0) / s -
                            q * q / (muF * (L - muF) * t * t * s));
  Certificate c;
  c.gammas = {g1, g2, g3, g4};
  c.zetas = {z1, z2, z3, z4};
  c.beta = b;
  c.alpha = qgg_rate(L, muF, 1.0, t).alpha;
  return c;
}

double identity_residual_qgg(const Certificate& c, double L, double muF,
                             double t, int trials, int dim,
                             std::uint64_t seed) {
  check_trials(trials, dim);
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Instantiation d(rng, dim);
    double lhs = rate_and_cross(d, c.alpha, c.gammas[3], t);
    lhs += interp_combination(d, c.gammas[0], c.gammas[1], 0.0, L);
    lhs += c.gammas[2] *
           (d.gx11.dot(d.x1) - d.gy11.dot(d.y1) -
            muF * (d.x1.squaredNorm() + d.y1.squaredNorm()));
    const double rhs = sum_of_squares_rhs(d, c, 1.0);
    const double scale = 1.0 + std::max(std::abs(lhs), std::abs(rhs));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double verify_identity_qgg(double L, double muF, double t, int trials,
                           int dim, std::uint64_t seed) {
  const Certificate c = certificate_qgg(L, muF, t);
  return identity_residual_qgg(c, L, muF, t, trials, dim, seed);
}

}  // namespace gdapep
