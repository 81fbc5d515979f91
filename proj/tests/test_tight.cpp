// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include "doctest.h"
#include "gdapep/gda.hpp"
#include "gdapep/rates.hpp"
#include "gdapep/tight.hpp"

using namespace gdapep;

TEST_SUITE("tight") {

TEST_CASE("pinned worst-case start for the reference parameters") {
  const TightStart ts = tight_bilinear_start(2.0, 1.0, 1.0, 0.5);
  REQUIRE(ts.x1.size() == 2);
  REQUIRE(ts.y1.size() == 2);
  CHECK(std::abs(ts.x1(0)) <= 1e-15);
  CHECK(std::abs(ts.x1(1) - 0.8506508083520401) <= 1e-14);
  CHECK(std::abs(ts.y1(0) - (-0.52573111211913348)) <= 1e-14);
  CHECK(std::abs(ts.y1(1)) <= 1e-15);
  CHECK(std::abs(ts.x1.squaredNorm() + ts.y1.squaredNorm() - 1.0) <= 1e-14);
  CHECK(ts.oracle.A()(0, 0) == 2.0);
  CHECK(ts.oracle.A()(1, 1) == 1.0);
  CHECK(ts.oracle.C()(0, 0) == 2.0);
  CHECK(ts.oracle.C()(1, 1) == 1.0);
  CHECK(ts.oracle.B()(0, 1) == 1.0);
  CHECK(ts.oracle.B()(1, 0) == 1.0);
  CHECK(ts.oracle.B()(0, 0) == 0.0);

  // One step realizes the closed-form factor exactly.
  const Trajectory traj = run(ts.oracle, ts.x1, ts.y1, 0.5, 1);
  CHECK(std::abs(contraction_ratio(traj, 1) - 0.65450849718747373) <= 1e-12);
}

TEST_CASE("tightness gap across the parameter grid") {
  for (double L : {1.5, 2.0, 5.0}) {
    for (double mu : {0.1, 1.0}) {
      for (double Lxy : {0.5, 1.0, 2.0}) {
        const double up = rate_alpha_step_upper(L, mu, Lxy);
        for (int k = 1; k <= 5; ++k) {
          const double t = up * (2 * k - 1) / 10.0;
          const TightnessReport rep = verify_tightness(L, mu, Lxy, t);
          CHECK(rep.gap <= 1e-10);
          CHECK(std::abs(rep.alpha - rate_alpha(L, mu, Lxy, t).alpha) <=
                1e-15);
        }
      }
    }
  }
}

TEST_CASE("raising the unconstrained block keeps the bound tight") {
  const TightnessReport rep = verify_tightness(2.0, 1.0, 1.0, 0.4, 1.5);
  CHECK(rep.gap <= 1e-10);
  // Support moves to the block coupling the overridden curvature with L.
  const TightStart ts = tight_bilinear_start(2.0, 1.0, 1.0, 0.4, 1.5);
  CHECK(std::abs(ts.x1(1)) <= 1e-15);
  CHECK(std::abs(ts.y1(0)) <= 1e-15);
  CHECK(std::abs(ts.x1(0)) > 0.1);
  CHECK(std::abs(ts.y1(1)) > 0.1);
  CHECK(ts.oracle.A()(1, 1) == 1.5);

  // Explicitly passing the default modulus must match the default exactly.
  const TightStart def = tight_bilinear_start(2.0, 1.0, 1.0, 0.4);
  const TightStart same = tight_bilinear_start(2.0, 1.0, 1.0, 0.4, 1.0);
  CHECK(def.x1 == same.x1);
  CHECK(def.y1 == same.y1);
}

TEST_CASE("tight construction validates its inputs") {
  CHECK_THROWS_AS((void)tight_bilinear_start(2, 1, 0.0, 0.1), ParameterError);
  CHECK_THROWS_AS((void)tight_bilinear_start(2, 0, 1.0, 0.1), ParameterError);
  CHECK_THROWS_AS((void)tight_bilinear_start(2, 3, 1.0, 0.1), ParameterError);
  CHECK_THROWS_AS((void)tight_bilinear_start(2, 1, 1.0, 0.1, 0.5),
                  ParameterError);
  CHECK_THROWS_AS((void)tight_bilinear_start(2, 1, 1.0, 0.1, 2.5),
                  ParameterError);
  CHECK_THROWS_AS((void)tight_bilinear_start(2, 1, 1.0, 2.0 / 3.0),
                  StepRangeError);
  CHECK_THROWS_AS((void)tight_bilinear_start(2, 1, 1.0, 0.0), StepRangeError);
}

TEST_CASE("no-contraction instance without strong convexity on one side") {
  for (auto [L, Lxy, muy, t, r] :
       {std::tuple{2.0, 1.0, 1.0, 0.3, 2.0},
        {1.5, 0.5, 0.8, 0.9, 0.7},
        {4.0, 2.0, 3.0, 0.4, 1.0}}) {
    const LowerBoundInstance lb = lower_bound_instance(L, Lxy, muy, t, r);
    const double norm =
        std::sqrt(lb.x1.squaredNorm() + lb.y1.squaredNorm());
    CHECK(std::abs(norm - r) <= 1e-12 * (1.0 + r));
    CHECK(lb.alpha_lb >= 1.0);
    const Trajectory traj = run(lb.oracle, lb.x1, lb.y1, t, 1);
    const double ratio = contraction_ratio(traj, 1);
    CHECK(ratio >= 1.0 - 1e-12);
    CHECK(ratio >= lb.alpha_lb - 1e-10);
    CHECK(std::abs(ratio - lb.alpha_lb) <= 1e-9);
    // The x block really is only convex, not strongly so.
    CHECK(lb.oracle.params().mu_x() == 0.0);
  }
  CHECK_THROWS_AS((void)lower_bound_instance(2, 0.0, 1, 0.1, 1), DomainError);
  CHECK_THROWS_AS((void)lower_bound_instance(2, 1.0, 1, 0.0, 1), DomainError);
  CHECK_THROWS_AS((void)lower_bound_instance(2, 1.0, 1, 0.1, 0), DomainError);
}

}  // TEST_SUITE
