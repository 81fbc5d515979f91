// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gdapep/oracles.hpp"
#include "gdapep/pep.hpp"
#include "gdapep/rates.hpp"

namespace gdapep {

// A concrete instance realizing the worst observed one-step contraction,
// together with the unit-norm start that attains it.
struct WorstCaseWitness {
  double ratio = 0.0;      // squared-distance contraction after one step
  QuadraticSaddle oracle;  // realizing 2x2-diagonal-block instance
  Vector x1, y1;
};

// Searches 2x2-diagonal-block quadratic instances (A = diag in [mu_x, Lx],
// C = diag in [mu_y, Ly], coupling with largest singular value at most Lxy)
// for the largest exact one-step contraction of the squared distance to the
// stationary set.  Deterministic for a fixed seed: a fixed set of corner
// instances is scanned first, then `budget` rounds of random draws
// interleaved with local refinement around the incumbent.  The returned
// ratio is re-verified by running the step through the oracle.
WorstCaseWitness empirical_worst_case(const ProblemParams& p, double t,
                                      int budget, std::uint64_t seed);

enum class ProbeVerdict { kConsistent, kViolation, kOutOfRange };
const char* to_string(ProbeVerdict v);

struct ProbeRow {
  double t = 0.0;
  ConjectureBranch branch = ConjectureBranch::kAI;
  double alpha_conjectured = 0.0;
  double alpha_sdp = 0.0;
  double alpha_empirical = 0.0;
  ProbeVerdict verdict = ProbeVerdict::kOutOfRange;
};

// Cross-checks the five-constant rate prediction on a grid of steps: for
// each t the closed form, the SDP value, and the empirical search must agree
// up to kProbeTol in the order  empirical <= sdp <= conjectured (each with
// additive slack).  Steps outside the admissible interval are reported, not
// errors.
inline constexpr double kProbeTol = 1e-4;

// Solver settings for the probe: the bound queries near the optimum need a
// larger projection budget than the default to certify, and the bracket only
// has to be located to kProbeTol accuracy.
SolverOptions probe_solver_options();

std::vector<ProbeRow> conjecture_probe(const ProblemParams& p,
                                       const std::vector<double>& t_grid,
                                       int budget, std::uint64_t seed,
                                       const SolverOptions& opt =
                                           probe_solver_options());

}  // namespace gdapep
