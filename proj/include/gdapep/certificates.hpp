// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "gdapep/params.hpp"

namespace gdapep {

// Closed-form dual multipliers certifying a one-step contraction factor.
// The weighted sum of interpolation / cross-Lipschitz (/ gradient-growth)
// residuals equals the rate inequality exactly as polynomials; gammas and
// zetas[0], zetas[3] are nonnegative on the valid step interval.  The
// coupling constant is normalized to 1 inside certificates; other couplings
// are reached by scaling (step Lxy*t, constants divided by Lxy).
struct Certificate {
  std::vector<double> gammas;  // 3 entries (strongly convex) or 4 (qgg)
  std::vector<double> zetas;   // zeta1..zeta4
  double beta = 0.0;
  double alpha = 0.0;
  double residual = 0.0;  // max identity violation; filled by verify_*
};

// Multipliers for the strongly convex-strongly concave rate at coupling 1.
// Requires 0 < mu < L strictly and t in (0, 2 mu / (mu L + 1)).
Certificate certificate_strongly_convex(double L, double mu, double t);

// Max scale-relative identity violation over `trials` random unconstrained
// instantiations of all free vectors (dimension `dim`) and scalars.  The
// identity is polynomial, so it must vanish for arbitrary values, feasible
// or not; anything above ~1e-12 indicates a transcription error.
double verify_identity_strongly_convex(double L, double mu, double t,
                                       int trials, int dim,
                                       std::uint64_t seed);

// Same residual evaluated with caller-supplied multipliers; lets tests
// confirm the check has power against perturbed certificates.
double identity_residual_strongly_convex(const Certificate& c, double L,
                                         double mu, double t, int trials,
                                         int dim, std::uint64_t seed);

// Multipliers for the quadratic-gradient-growth rate at coupling 1.
// Requires 0 < muF < L and t in the corresponding interval.
Certificate certificate_qgg(double L, double muF, double t);

double verify_identity_qgg(double L, double muF, double t, int trials,
                           int dim, std::uint64_t seed);

double identity_residual_qgg(const Certificate& c, double L, double muF,
                             double t, int trials, int dim,
                             std::uint64_t seed);

}  // namespace gdapep
