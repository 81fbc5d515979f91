// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "doctest.h"
#include "gdapep/gda.hpp"
#include "gdapep/pep.hpp"
#include "gdapep/rates.hpp"
#include "gdapep/rng.hpp"
#include "gdapep/search.hpp"

using namespace gdapep;

namespace {

int count_tag_prefix(const PepProgram& prog, const std::string& prefix) {
  int n = 0;
  for (const auto& r : prog.rows)
    if (r.tag.rfind(prefix, 0) == 0) ++n;
  return n;
}

int count_equalities(const PepProgram& prog) {
  int n = 0;
  for (const auto& r : prog.rows)
    if (r.equality) ++n;
  return n;
}

// Embeds an actual one-step GDA run on a concrete quadratic into the Gram
// parameterization of the program, following the documented column order.
struct Embedding {
  Matrix X, Y;
  Vector f;
  double obj;
};

Embedding embed_run(const QuadraticSaddle& o, Vector x1, Vector y1, double t,
                    bool reduced) {
  const double s0 = std::sqrt(x1.squaredNorm() + y1.squaredNorm());
  x1 /= s0;
  y1 /= s0;
  const Matrix &A = o.A(), &B = o.B(), &C = o.C();
  const int n = static_cast<int>(A.rows());
  const Vector x2 = x1 - t * (A * x1 + B * y1);
  const Vector y2 = y1 + t * (B.transpose() * x1 - C * y1);
  const Vector zx = Vector::Zero(n), zy = Vector::Zero(n);
  // Labels in program order: 1, 2, saddle (the saddle is the origin).
  const std::vector<Vector> xs = reduced ? std::vector<Vector>{x1, zx}
                                         : std::vector<Vector>{x1, x2, zx};
  const std::vector<Vector> ys = reduced ? std::vector<Vector>{y1, zy}
                                         : std::vector<Vector>{y1, y2, zy};
  const int m = static_cast<int>(xs.size());
  const int order = 1 + m * m - 1;
  Matrix Vx(n, order), Vy(n, order);
  Vx.col(0) = x1;
  Vy.col(0) = y1;
  int cx = 1, cy = 1;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (i == m - 1 && k == m - 1) continue;
      Vx.col(cx++) = A * xs[i] + B * ys[k];
    }
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      if (j == m - 1 && k == m - 1) continue;
      Vy.col(cy++) = B.transpose() * xs[k] - C * ys[j];
    }
  Vector f(m * m);
  int fi = 0;
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k)
      f(fi++) = 0.5 * xs[i].dot(A * xs[i]) + xs[i].dot(B * ys[k]) -
                0.5 * ys[k].dot(C * ys[k]);
  return {Vx.transpose() * Vx, Vy.transpose() * Vy, f,
          x2.squaredNorm() + y2.squaredNorm()};
}

}  // namespace

TEST_SUITE("pep") {

TEST_CASE("program shapes, full and reduced") {
  const ProblemParams p(2, 1.5, 0.8, 0.5, 0.4);
  const PepProgram full = build_pep_strongly_convex(p, 0.25);
  CHECK(full.gram_order == 9);
  CHECK(full.n_fvals == 9);
  CHECK(full.rows.size() == 56);
  CHECK(count_tag_prefix(full, "x-interp") == 18);
  CHECK(count_tag_prefix(full, "y-interp") == 18);
  CHECK(count_tag_prefix(full, "x-cross") == 9);
  CHECK(count_tag_prefix(full, "y-cross") == 9);
  CHECK(count_equalities(full) == 2);
  CHECK(full.normalization_row == 54);
  CHECK(full.rows[54].tag == "normalization");
  CHECK(full.rows[54].equality);
  CHECK(full.rows[54].rhs == 1.0);
  CHECK(full.rows[55].tag == "saddle-value-pin");
  CHECK(full.t == 0.25);
  CHECK(full.warnings.empty());

  const PepProgram red = build_pep_strongly_convex(p, 0.25, true);
  CHECK(red.gram_order == 4);
  CHECK(red.n_fvals == 4);
  CHECK(red.rows.size() == 14);

  const PepProgram qgg = build_pep_qgg(2.0, 1.0, 1.0, 0.2);
  CHECK(qgg.rows.size() == 57);
  CHECK(count_tag_prefix(qgg, "gradient-growth") == 1);
  CHECK(build_pep_qgg(2.0, 1.0, 1.0, 0.2, true).rows.size() == 15);
}

TEST_CASE("builder validates degenerate inputs") {
  const ProblemParams ok(2, 1.5, 0.8, 0.5, 0.4);
  CHECK_THROWS_AS((void)build_pep_strongly_convex(ok, 0.0), StepRangeError);
  CHECK_THROWS_AS((void)build_pep_strongly_convex(ok, -1.0), StepRangeError);
  CHECK_THROWS_AS(
      (void)build_pep_strongly_convex(ProblemParams(2, 1.5, 0.8, 2.0, 0.4),
                                      0.25),
      ParameterError);
  CHECK_THROWS_AS((void)build_pep_qgg(2.0, 1.0, 2.0, 0.1), ParameterError);
  CHECK_THROWS_AS((void)build_pep_qgg(2.0, 1.0, -0.5, 0.1), ParameterError);
  const PepProgram warned = build_pep_qgg(2.0, 1.0, 0.0, 0.1);
  CHECK(warned.warnings.size() == 1);
}

TEST_CASE("a real GDA run is feasible for the program") {
  const ProblemParams p(2, 1.5, 0.8, 0.5, 0.4);
  const double t = 0.25;
  const QuadraticSaddle o = quadratic_from_params(p);
  Rng rng(61);
  Vector x1(2), y1(2);
  for (int i = 0; i < 2; ++i) {
    x1(i) = rng.normal();
    y1(i) = rng.normal();
  }
  const PepProgram full = build_pep_strongly_convex(p, t);
  const Embedding e = embed_run(o, x1, y1, t, false);
  CHECK(constraint_violation(full, e.X, e.Y, e.f) <= 1e-10);
  CHECK(std::abs(objective_value(full, e.X, e.Y) - e.obj) <= 1e-12);

  const PepProgram red = build_pep_strongly_convex(p, t, true);
  const Embedding er = embed_run(o, x1, y1, t, true);
  CHECK(constraint_violation(red, er.X, er.Y, er.f) <= 1e-10);
  CHECK(std::abs(objective_value(red, er.X, er.Y) - er.obj) <= 1e-12);

  // The embedded objective can never exceed the closed-form worst case.
  CHECK(e.obj <= rate_alpha(p.L(), p.mu(), p.Lxy(), t).alpha + 1e-12);
}

TEST_CASE("solver reproduces the closed-form factor") {
  for (auto [L, mu, Lxy, frac] :
       {std::tuple{2.0, 1.0, 1.0, 0.5}, {1.5, 0.7, 0.3, 0.6}}) {
    const double t = rate_alpha_step_upper(L, mu, Lxy) * frac;
    const double alpha = rate_alpha(L, mu, Lxy, t).alpha;
    const ProblemParams p(L, L, Lxy, mu, mu);
    const SdpSolution full = solve_sdp(build_pep_strongly_convex(p, t));
    CHECK(full.status == SolveStatus::kOptimal);
    CHECK(std::abs(full.value - alpha) <= 1e-4);
    const SdpSolution red = solve_sdp(build_pep_strongly_convex(p, t, true));
    CHECK(red.status == SolveStatus::kOptimal);
    CHECK(std::abs(red.value - alpha) <= 1e-4);
    CHECK(std::abs(red.value - full.value) <= 1e-4);
  }
}

TEST_CASE("solver reproduces the gradient-growth factor") {
  const SdpSolution sol = solve_sdp(build_pep_qgg(2.0, 1.0, 1.0, 0.2));
  CHECK(sol.status == SolveStatus::kOptimal);
  CHECK(std::abs(sol.value - 0.8) <= 1e-4);

  // Solution self-consistency at the returned point.
  const PepProgram prog = build_pep_qgg(2.0, 1.0, 1.0, 0.2);
  const Eigen::SelfAdjointEigenSolver<Matrix> ex(sol.gram_x), ey(sol.gram_y);
  CHECK(ex.eigenvalues().minCoeff() >= -1e-8);
  CHECK(ey.eigenvalues().minCoeff() >= -1e-8);
  CHECK(constraint_violation(prog, sol.gram_x, sol.gram_y, sol.fvals) <=
        1e-8);
  CHECK(sol.kkt_residual <= 1e-5);
  CHECK(sol.queries > 0);
  CHECK(sol.projections > 0);
}

TEST_CASE("objective is invariant to the normalization scale") {
  const ProblemParams p(2, 2, 1, 1, 1);
  const double t = 0.3;
  PepProgram prog = build_pep_strongly_convex(p, t, true);
  const double v1 = solve_sdp(prog).value;
  prog.rows[prog.normalization_row].rhs = 0.5;
  const double vh = solve_sdp(prog).value;
  prog.rows[prog.normalization_row].rhs = 2.0;
  const double vd = solve_sdp(prog).value;
  CHECK(std::abs(vh - v1) <= 5e-4);
  CHECK(std::abs(vd - v1) <= 5e-4);
  CHECK(std::abs(v1 - rate_alpha(2.0, 1.0, 1.0, t).alpha) <= 1e-4);
}

TEST_CASE("status strings") {
  CHECK(to_string(SolveStatus::kOptimal) == "optimal");
  CHECK(to_string(SolveStatus::kMaxIter) == "max-iter");
  CHECK(to_string(SolveStatus::kInfeasible) == "infeasible");
  CHECK(std::string(to_string(ProbeVerdict::kConsistent)) == "CONSISTENT");
  CHECK(std::string(to_string(ProbeVerdict::kViolation)) == "VIOLATION");
  CHECK(std::string(to_string(ProbeVerdict::kOutOfRange)) == "out-of-range");
}

TEST_CASE("corner scan alone attains the conjectured factor") {
  const ProblemParams nocross(1.69, 1.462, 0.2577, 1.2508, 1.3);
  const double t_nc = 0.55 * conjecture_rate(nocross, 0.0, true).step_upper;
  const std::pair<ProblemParams, double> cases[] = {
      {ProblemParams(2, 1, 1, 0.5, 0.8), 0.3},
      {ProblemParams(3, 1, 0.5, 0.8, 0.9), 0.33559322033898303},
      {nocross, t_nc},
  };
  for (const auto& [p, t] : cases) {
    const double conj = conjecture_rate(p, t).alpha;
    const WorstCaseWitness w = empirical_worst_case(p, t, 0, 1);
    CHECK(std::abs(w.ratio - conj) <= 1e-10);
    // The witness runs through the oracle at the claimed ratio.
    const Trajectory traj = run(w.oracle, w.x1, w.y1, t, 1);
    CHECK(std::abs(contraction_ratio(traj, 1) - w.ratio) <= 1e-9);
    // And stays inside the advertised class.
    const ProblemParams q = w.oracle.params();
    CHECK(q.Lx() <= p.Lx() + 1e-9);
    CHECK(q.Ly() <= p.Ly() + 1e-9);
    CHECK(q.Lxy() <= p.Lxy() + 1e-9);
    CHECK(q.mu_x() >= p.mu_x() - 1e-9);
    CHECK(q.mu_y() >= p.mu_y() - 1e-9);
  }
}

TEST_CASE("random search respects the conjectured ceiling") {
  const ProblemParams p(2, 1, 1, 0.5, 0.8);
  const double t = 0.3;
  const double conj = conjecture_rate(p, t).alpha;
  const WorstCaseWitness a = empirical_worst_case(p, t, 400, 99);
  const WorstCaseWitness b = empirical_worst_case(p, t, 400, 99);
  CHECK(a.ratio == b.ratio);
  CHECK(a.x1 == b.x1);
  CHECK(a.y1 == b.y1);
  CHECK(a.ratio <= conj + 1e-10);
  CHECK(a.ratio >= conj - 1e-10);  // corners already attain it
  CHECK_THROWS_AS((void)empirical_worst_case(p, 0.0, 10, 1), StepRangeError);
  CHECK_THROWS_AS((void)empirical_worst_case(p, 0.3, -1, 1), ParameterError);
  CHECK_THROWS_AS(
      (void)empirical_worst_case(ProblemParams(2, 1, 1, 0.0, 0.8), 0.3, 10, 1),
      ParameterError);
}

TEST_CASE("probe flags steps outside the admissible interval") {
  const ProblemParams p(2, 1, 1, 0.5, 0.8);
  const auto rows = conjecture_probe(p, {0.7}, 10, 1);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].verdict == ProbeVerdict::kOutOfRange);
  CHECK(rows[0].t == 0.7);
}

TEST_CASE("probe cross-checks all three values on the pinned tuple") {
  const ProblemParams p(2, 1, 1, 0.5, 0.8);
  const auto rows = conjecture_probe(p, {0.3}, 2000, 3);
  REQUIRE(rows.size() == 1);
  const ProbeRow& r = rows[0];
  CHECK(r.verdict == ProbeVerdict::kConsistent);
  CHECK(r.branch == ConjectureBranch::kAII);
  CHECK(std::abs(r.alpha_conjectured - 0.82090577603946002) <= 1e-12);
  CHECK(std::abs(r.alpha_sdp - r.alpha_conjectured) <= 1e-4);
  CHECK(r.alpha_empirical <= r.alpha_sdp + kProbeTol);
  CHECK(r.alpha_empirical >= r.alpha_conjectured - 1e-9);
}

}  // TEST_SUITE
