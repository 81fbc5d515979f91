// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include "gdapep/rates.hpp"

#include <cmath>

namespace gdapep {

namespace {

void check_class(double L, double mu, const char* context) {
  if (!(mu > 0.0)) throw ParameterError(std::string(context) + ": mu must be positive");
  if (!(mu <= L)) throw ParameterError(std::string(context) + ": mu must not exceed L");
}

}  // namespace

double baseline_step_upper(double L, double mu) { return mu / (2.0 * L * L); }

double baseline_rate(double L, double mu, double t, bool unchecked) {
  check_class(L, mu, "baseline_rate");
  require_step(t, baseline_step_upper(L, mu), "baseline_rate", unchecked);
  return 1.0 + 4.0 * L * L * t * t - 2.0 * mu * t;
}

double beta(double L, double mu, double Lxy, double t) {
  if (!(t >= 0.0)) throw StepRangeError(t, INFINITY, "beta");
  const double a = L * t + mu * t - 2.0;
  return std::sqrt(a * a + 4.0 * Lxy * Lxy * t * t);
}

double rate_alpha_step_upper(double L, double mu, double Lxy) {
  return 2.0 * mu / (mu * L + Lxy * Lxy);
}

RateResult rate_alpha(double L, double mu, double Lxy, double t,
                      bool unchecked) {
  check_class(L, mu, "rate_alpha");
  if (!(Lxy >= 0.0)) throw ParameterError("rate_alpha: Lxy must be nonnegative");
  const double upper = rate_alpha_step_upper(L, mu, Lxy);
  require_step(t, upper, "rate_alpha", unchecked);
  const double b = beta(L, mu, Lxy, t);
  const double alpha = 1.0 +
                       0.5 * (L * L + mu * mu + 2.0 * Lxy * Lxy) * t * t -
                       (L + mu) * t + 0.5 * (L - mu) * t * b;
  return {alpha, t, upper};
}

double lemma_u(double L, double mu, double c, double t, bool unchecked) {
  if (!(c >= 0.0)) throw ParameterError("lemma_u: c must be nonnegative");
  return rate_alpha(L, mu, c, t, unchecked).alpha - 1.0;
}

double optimal_step(double L, double mu, double Lxy) {
  check_class(L, mu, "optimal_step");
  if (Lxy == 0.0) return 2.0 / (L + mu);
  const double s = std::sqrt(Lxy * Lxy + L * mu);
  const double num = 2.0 * ((L + mu) * s + Lxy * (mu - L));
  const double den = (4.0 * Lxy * Lxy + (L + mu) * (L + mu)) * s;
  return num / den;
}

double optimal_rate(double L, double mu, double Lxy) {
  check_class(L, mu, "optimal_rate");
  const double d = L - mu;
  if (Lxy == 0.0) return (d / (L + mu)) * (d / (L + mu));
  const double q = L * mu + Lxy * Lxy;
  const double den = (L + mu) * (L + mu) + 4.0 * Lxy * Lxy;
  const double num = 8.0 * Lxy * (L * L - mu * mu) * std::sqrt(q) +
                     (L * L - mu * mu) * (L * L - mu * mu) +
                     16.0 * Lxy * Lxy * q;
  return num / (den * den);
}

double optimal_step(const ProblemParams& p) {
  return optimal_step(p.L(), p.mu(), p.Lxy());
}

double optimal_rate(const ProblemParams& p) {
  return optimal_rate(p.L(), p.mu(), p.Lxy());
}

double qgg_step_upper(double L, double muF, double Lxy) {
  const double s = std::sqrt(muF * (L - muF));
  return 2.0 * muF / (L * muF + 2.0 * Lxy * s + Lxy * Lxy);
}

RateResult qgg_rate(double L, double muF, double Lxy, double t,
                    bool unchecked) {
  if (!(muF > 0.0)) throw ParameterError("qgg_rate: muF must be positive");
  if (!(muF < L)) throw ParameterError("qgg_rate: muF must be strictly below L");
  if (!(Lxy >= 0.0)) throw ParameterError("qgg_rate: Lxy must be nonnegative");
  const double upper = qgg_step_upper(L, muF, Lxy);
  require_step(t, upper, "qgg_rate", unchecked);
  const double s = std::sqrt(muF * (L - muF));
  const double alpha =
      t * (2.0 * t * Lxy * s + muF * (L * t - 2.0) + t * Lxy * Lxy) + 1.0;
  return {alpha, t, upper};
}

const char* to_string(ConjectureBranch b) {
  switch (b) {
    case ConjectureBranch::kAI: return "a.i";
    case ConjectureBranch::kAII: return "a.ii";
    case ConjectureBranch::kBI: return "b.i";
    case ConjectureBranch::kBII: return "b.ii";
  }
  return "?";
}

ConjectureRate conjecture_rate(const ProblemParams& p, double t,
                               bool unchecked) {
  const double Lx = p.Lx(), Ly = p.Ly(), Lxy = p.Lxy();
  const double mx = p.mu_x(), my = p.mu_y();
  if (!(my > mx) || !(mx > 0.0))
    throw ParameterError("conjecture_rate: requires mu_y > mu_x > 0");
  if (!(Lx >= Ly))
    throw ParameterError("conjecture_rate: requires Lx >= Ly (swap roles first)");
  if (!(Lxy > 0.0))
    throw ParameterError("conjecture_rate: requires Lxy > 0");

  const bool case_a = mx * my * (Lx - Ly) >= Lxy * Lxy * (my - mx);
  const double upper = case_a ? 2.0 * my / (Lx * my + Lxy * Lxy)
                              : 2.0 * mx / (Ly * mx + Lxy * Lxy);
  require_step(t, upper, "conjecture_rate", unchecked);

  const double c = 0.5 * (Ly * Ly + mx * mx) * t - (Ly + mx) +
                   0.5 * (Ly - mx) * beta(Ly, mx, Lxy, t);
  const double w = c + Lx * (2.0 - Lx * t);
  const double root = std::sqrt(1.0 + t * (c + t * Lxy * Lxy));
  // Threshold in mu_y at which the two candidate rates coincide, in the
  // parameter regions where they cross at all.  Selection below compares the
  // candidates directly, which matches the threshold test in the generic
  // case and stays correct in corners where no crossing exists.
  const double mu_bar =
      (c + 2.0 * Lx - Lx * Lx * t + Lx * Lxy * Lxy * t * t - w * root) /
      (t * (c + t * Lxy * Lxy + Lx * (2.0 - Lx * t)));

  const double alpha_low = rate_alpha(Lx, my, Lxy, t, true).alpha;
  const double alpha_high = rate_alpha(Ly, mx, Lxy, t, true).alpha;
  const bool low = alpha_low >= alpha_high;
  const double alpha = low ? alpha_low : alpha_high;
  const ConjectureBranch branch =
      case_a ? (low ? ConjectureBranch::kAI : ConjectureBranch::kAII)
             : (low ? ConjectureBranch::kBI : ConjectureBranch::kBII);
  return {branch, alpha, c, mu_bar, upper};
}

}  // namespace gdapep
