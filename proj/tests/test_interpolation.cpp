// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "gdapep/interpolation.hpp"
#include "gdapep/rng.hpp"

using namespace gdapep;

namespace {

Vector rand_vec(Rng& rng, int n) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

Matrix rand_spd(Rng& rng, int n, double lo, double hi) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rng.normal();
  const Matrix q = Eigen::HouseholderQR<Matrix>(m).householderQ();
  Vector eig(n);
  for (int i = 0; i < n; ++i) eig(i) = rng.uniform(lo, hi);
  return q * eig.asDiagonal() * q.transpose();
}

std::vector<DataTriple> quadratic_triples(Rng& rng, const Matrix& Q, int n) {
  std::vector<DataTriple> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    DataTriple d;
    d.x = rand_vec(rng, static_cast<int>(Q.rows())) * 2.0;
    d.g = Q * d.x;
    d.f = 0.5 * d.x.dot(d.g);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

TEST_SUITE("interpolation") {

TEST_CASE("convex residuals are nonnegative on in-class data") {
  Rng rng(41);
  const Matrix Q = rand_spd(rng, 3, 0.5, 2.0);
  const auto tr = quadratic_triples(rng, Q, 20);
  const Eigen::SelfAdjointEigenSolver<Matrix> es(Q);
  const double mu = es.eigenvalues().minCoeff();
  const double L = es.eigenvalues().maxCoeff();
  for (const auto& a : tr)
    for (const auto& b : tr) {
      if (&a == &b) continue;
      CHECK(interp_convex_residual(a, b, mu, L) >= -1e-9);
      // Still consistent with any looser class.
      CHECK(interp_convex_residual(a, b, 0.5 * mu, 2.0 * L) >= -1e-9);
    }
}

TEST_CASE("convex residual rejects out-of-class data") {
  // Data from a concave parabola cannot come from a 0.5-strongly convex
  // function.
  DataTriple a, b;
  a.x = Vector::Zero(1);
  a.g = Vector::Zero(1);
  a.f = 0.0;
  b.x = Vector::Ones(1);
  b.g = -Vector::Ones(1);
  b.f = -0.5;
  const bool violated = interp_convex_residual(a, b, 0.5, 2.0) < -1e-6 ||
                        interp_convex_residual(b, a, 0.5, 2.0) < -1e-6;
  CHECK(violated);
}

TEST_CASE("concave residuals mirror the convex ones") {
  Rng rng(42);
  const Matrix Q = rand_spd(rng, 2, 0.4, 1.6);
  auto tr = quadratic_triples(rng, Q, 15);
  // Flip to data from the concave function -q.
  for (auto& d : tr) {
    d.g = -d.g;
    d.f = -d.f;
  }
  for (const auto& a : tr)
    for (const auto& b : tr) {
      if (&a == &b) continue;
      CHECK(interp_concave_residual(a, b, 0.4, 1.6) >= -1e-9);
    }
  CHECK_THROWS_AS((void)interp_convex_residual(tr[0], tr[1], 2.0, 2.0),
                  ParameterError);
}

TEST_CASE("cross-Lipschitz residual sign and equality structure") {
  Vector pa(2), pb(2);
  pa << 1.0, 0.0;
  pb << 0.0, 0.0;
  Matrix B(2, 2);
  B << 0, 1.5, 1.5, 0;
  // Difference along a coordinate axis through the antidiagonal coupling
  // hits the bound exactly.
  const Vector ga = B * pa, gb = B * pb;
  CHECK(std::abs(cross_lipschitz_residual(ga, gb, pa, pb, 1.5)) <= 1e-12);
  CHECK(cross_lipschitz_residual(ga, gb, pa, pb, 2.0) > 0.0);
  CHECK(cross_lipschitz_residual(ga, gb, pa, pb, 1.0) < 0.0);
}

TEST_CASE("gradient growth holds with the weaker modulus on quadratics") {
  Rng rng(43);
  for (int inst = 0; inst < 3; ++inst) {
    const Matrix A = rand_spd(rng, 2, 0.4, 2.5);
    const Matrix C = rand_spd(rng, 2, 0.3, 2.0);
    Matrix B(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) B(i, j) = rng.normal();
    const QuadraticSaddle o(A, B, C);
    const double muF = std::min(o.params().mu_x(), o.params().mu_y());
    const PointList pts = halton_box_sampler(2, 2, 5.0, 200, inst);
    for (const auto& [x, y] : pts)
      CHECK(qgg_residual(o, x, y, muF) >= -1e-9);
  }
}

TEST_CASE("piecewise example growth modulus over the reference grid") {
  const PiecewiseQGGExample o;
  const double est = estimate_muF(o, grid_sampler_2d(-4.0, 4.0, 200));
  // The one-sided estimate can only overshoot the sharp modulus.
  CHECK(est >= 1.0 - 1e-6);
  // Measured infimum of the growth ratio over this grid.
  CHECK(std::abs(est - 2.0) <= 1e-12);
}

TEST_CASE("estimate_muF requires off-set samples") {
  const PiecewiseQGGExample o;
  PointList on_set;
  Vector x(1), y(1);
  x << 0.3;
  y << 0.0;
  on_set.emplace_back(x, y);
  CHECK_THROWS_AS((void)estimate_muF(o, on_set), EmptySampleError);
  CHECK_THROWS_AS((void)estimate_muF(o, PointList{}), EmptySampleError);
}

TEST_CASE("halton sampler is deterministic and bounded") {
  const PointList a = halton_box_sampler(2, 2, 5.0, 64, 9);
  const PointList b = halton_box_sampler(2, 2, 5.0, 64, 9);
  const PointList c = halton_box_sampler(2, 2, 5.0, 64, 10);
  REQUIRE(a.size() == 64);
  bool all_equal = true, any_diff = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    all_equal = all_equal && a[i].first == b[i].first &&
                a[i].second == b[i].second;
    any_diff = any_diff || a[i].first != c[i].first;
    CHECK(a[i].first.cwiseAbs().maxCoeff() <= 5.0);
    CHECK(a[i].second.cwiseAbs().maxCoeff() <= 5.0);
  }
  CHECK(all_equal);
  CHECK(any_diff);
  CHECK_THROWS_AS((void)halton_box_sampler(2, 2, 5.0, 0, 1), ParameterError);
  CHECK_THROWS_AS((void)halton_box_sampler(9, 9, 5.0, 4, 1), ParameterError);
}

TEST_CASE("grid sampler covers the box inclusively") {
  const PointList g = grid_sampler_2d(-1.0, 1.0, 5);
  REQUIRE(g.size() == 25);
  CHECK(g.front().first(0) == -1.0);
  CHECK(g.front().second(0) == -1.0);
  CHECK(g.back().first(0) == 1.0);
  CHECK(g.back().second(0) == 1.0);
  for (const auto& [x, y] : g) {
    CHECK(x(0) >= -1.0);
    CHECK(x(0) <= 1.0);
    CHECK(y(0) >= -1.0);
    CHECK(y(0) <= 1.0);
  }
  CHECK_THROWS_AS((void)grid_sampler_2d(0.0, 1.0, 1), ParameterError);
}

}  // TEST_SUITE
