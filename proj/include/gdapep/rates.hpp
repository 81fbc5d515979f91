// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "gdapep/params.hpp"

namespace gdapep {

// A one-step contraction factor together with the step it was evaluated at
// and the sup of the admissible open step interval (0, step_upper).
struct RateResult {
  double alpha;
  double step;
  double step_upper;
};

// Coarse rate 1 + 4L^2 t^2 - 2 mu t for GDA when every smoothness constant
// is bounded by L.  Valid step interval: (0, mu / (2 L^2)).
double baseline_step_upper(double L, double mu);
double baseline_rate(double L, double mu, double t, bool unchecked = false);

// beta = sqrt((L t + mu t - 2)^2 + 4 Lxy^2 t^2).
double beta(double L, double mu, double Lxy, double t);

// Sharp one-step contraction factor in the aggregate parameters:
//   alpha = 1 + (L^2 + mu^2 + 2 Lxy^2) t^2 / 2 - (L + mu) t
//             + (L - mu) t beta / 2,
// valid for t in (0, 2 mu / (mu L + Lxy^2)).
double rate_alpha_step_upper(double L, double mu, double Lxy);
RateResult rate_alpha(double L, double mu, double Lxy, double t,
                      bool unchecked = false);

// u(t) = alpha(t) - 1 with c in place of Lxy; convex on the valid interval
// with values in [-1, 0).
double lemma_u(double L, double mu, double c, double t, bool unchecked = false);

// Step minimizing alpha over its interval, and the minimal value.  For
// Lxy = 0 these reduce to 2/(L+mu) and ((L-mu)/(L+mu))^2.
double optimal_step(double L, double mu, double Lxy);
double optimal_rate(double L, double mu, double Lxy);
double optimal_step(const ProblemParams& p);
double optimal_rate(const ProblemParams& p);

// Contraction factor under quadratic gradient growth with modulus muF:
//   alpha = t (2 t Lxy sqrt(muF (L - muF)) + muF (L t - 2) + t Lxy^2) + 1,
// valid for t in (0, 2 muF / (L muF + 2 Lxy sqrt(muF (L - muF)) + Lxy^2)).
// Requires 0 < muF < L strictly.
double qgg_step_upper(double L, double muF, double Lxy);
RateResult qgg_rate(double L, double muF, double Lxy, double t,
                    bool unchecked = false);

// Case labels for the conjectured five-constant rate.  The case letter is
// decided by the sign of mu_x mu_y (Lx - Ly) - Lxy^2 (mu_y - mu_x); the
// roman numeral picks the larger of the two candidate rates
// rate_alpha(Lx, mu_y) (i) and rate_alpha(Ly, mu_x) (ii).  Both candidates
// are exactly realized by 2x2 block instances inside the class, so the
// bound must be their max; mu_bar is the mu_y value where the candidates
// cross, when such a crossing exists, and the two selection rules then
// agree.
enum class ConjectureBranch { kAI, kAII, kBI, kBII };

const char* to_string(ConjectureBranch b);

// Conjectured (not proven) one-step contraction factor for the full
// five-constant class.  Callers must normalize coordinates so that
// Lx >= Ly and mu_y > mu_x > 0; the function refuses to swap roles itself.
struct ConjectureRate {
  ConjectureBranch branch;
  double alpha;
  double c;
  double mu_bar;
  double step_upper;  // case-dependent admissible interval sup
};

ConjectureRate conjecture_rate(const ProblemParams& p, double t,
                               bool unchecked = false);

}  // namespace gdapep
