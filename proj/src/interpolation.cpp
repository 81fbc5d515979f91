// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include "gdapep/interpolation.hpp"

#include <array>
#include <cmath>

#include "gdapep/errors.hpp"

namespace gdapep {

namespace {

void check_pair(const DataTriple& i, const DataTriple& j, double mu, double L,
                const char* context) {
  if (!(mu >= 0.0) || !(L > 0.0) || !(mu < L))
    throw ParameterError(std::string(context) + ": requires 0 <= mu < L");
  if (i.x.size() != i.g.size() || j.x.size() != j.g.size() ||
      i.x.size() != j.x.size())
    throw DimensionError(std::string(context) + ": triple dimensions disagree");
}

}  // namespace

double interp_convex_residual(const DataTriple& i, const DataTriple& j,
                              double mu, double L) {
  check_pair(i, j, mu, L, "interp_convex_residual");
  const double quad = (i.g - j.g).squaredNorm() / L +
                      mu * (i.x - j.x).squaredNorm() -
                      (2.0 * mu / L) * (j.g - i.g).dot(j.x - i.x);
  return i.f - j.f - j.g.dot(i.x - j.x) - quad / (2.0 * (1.0 - mu / L));
}

double interp_concave_residual(const DataTriple& i, const DataTriple& j,
                               double mu, double L) {
  check_pair(i, j, mu, L, "interp_concave_residual");
  const double quad = (i.g - j.g).squaredNorm() / L +
                      mu * (i.x - j.x).squaredNorm() +
                      (2.0 * mu / L) * (j.g - i.g).dot(j.x - i.x);
  return -i.f + j.f + j.g.dot(i.x - j.x) - quad / (2.0 * (1.0 - mu / L));
}

double cross_lipschitz_residual(const Vector& ga, const Vector& gb,
                                const Vector& pa, const Vector& pb,
                                double Lxy) {
  if (ga.size() != gb.size() || pa.size() != pb.size())
    throw DimensionError("cross_lipschitz_residual: dimensions disagree");
  return Lxy * Lxy * (pa - pb).squaredNorm() - (ga - gb).squaredNorm();
}

double qgg_residual(const SaddleOracle& oracle, const Vector& x,
                    const Vector& y, double muF) {
  const Projection p = project_solution_set(oracle, x, y);
  const auto [gx, gy] = eval_grads(oracle, x, y);
  return gx.dot(x - p.x_star) - gy.dot(y - p.y_star) - muF * p.dist_sq;
}

double estimate_muF(const SaddleOracle& oracle, const PointList& samples) {
  double best = INFINITY;
  bool any = false;
  for (const auto& [x, y] : samples) {
    const Projection p = project_solution_set(oracle, x, y);
    if (p.dist_sq <= 1e-12) continue;
    const auto [gx, gy] = eval_grads(oracle, x, y);
    const double ratio =
        (gx.dot(x - p.x_star) - gy.dot(y - p.y_star)) / p.dist_sq;
    best = std::min(best, ratio);
    any = true;
  }
  if (!any)
    throw EmptySampleError("estimate_muF: every sample lies on the solution set");
  return best;
}

namespace {

double radical_inverse(std::uint64_t k, std::uint64_t base) {
  double inv = 1.0 / static_cast<double>(base), r = 0.0, scale = inv;
  while (k > 0) {
    r += static_cast<double>(k % base) * scale;
    k /= base;
    scale *= inv;
  }
  return r;
}

constexpr std::array<std::uint64_t, 16> kPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};

}  // namespace

PointList halton_box_sampler(int nx, int ny, double radius, int count,
                             std::uint64_t seed) {
  const int d = nx + ny;
  if (d > static_cast<int>(kPrimes.size()))
    throw ParameterError("halton_box_sampler: dimension too large");
  if (count < 1) throw ParameterError("halton_box_sampler: count must be >= 1");
  PointList pts;
  pts.reserve(count);
  // The seed shifts the start index along the sequence, so different seeds
  // give different (still low-discrepancy) point sets.
  const std::uint64_t start = 1 + seed * static_cast<std::uint64_t>(count);
  for (int k = 0; k < count; ++k) {
    Vector x(nx), y(ny);
    for (int c = 0; c < d; ++c) {
      const double u = radical_inverse(start + k, kPrimes[c]);
      const double v = radius * (2.0 * u - 1.0);
      if (c < nx)
        x(c) = v;
      else
        y(c - nx) = v;
    }
    pts.emplace_back(std::move(x), std::move(y));
  }
  return pts;
}

PointList grid_sampler_2d(double lo, double hi, int n_per_dim) {
  if (n_per_dim < 2) throw ParameterError("grid_sampler_2d: need at least 2 points per dim");
  PointList pts;
  pts.reserve(static_cast<std::size_t>(n_per_dim) * n_per_dim);
  const double h = (hi - lo) / (n_per_dim - 1);
  for (int i = 0; i < n_per_dim; ++i) {
    for (int j = 0; j < n_per_dim; ++j) {
      Vector x(1), y(1);
      x(0) = lo + h * i;
      y(0) = lo + h * j;
      pts.emplace_back(std::move(x), std::move(y));
    }
  }
  return pts;
}

}  // namespace gdapep
