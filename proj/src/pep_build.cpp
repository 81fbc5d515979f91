// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include "gdapep/pep.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "gdapep/errors.hpp"

namespace gdapep {
namespace {

constexpr int kStar = 0;

const char* point_name(int p) { return p == kStar ? "s" : (p == 1 ? "1" : "2"); }

Matrix outer_sym(const Vector& u, const Vector& v) {
  return 0.5 * (u * v.transpose() + v * u.transpose());
}

// Column/index bookkeeping for one build.  Point labels are 1, 2 and kStar;
// reduced mode drops point 2 everywhere except the objective, which still
// expresses the post-step iterate through the start column and G^{1,1}.
struct GramLayout {
  std::vector<int> pts;
  std::map<std::pair<int, int>, int> xcol;  // keyed (x-point, y-point)
  std::map<std::pair<int, int>, int> ycol;  // keyed (x-point, y-point)
  std::map<std::pair<int, int>, int> fidx;  // keyed (x-point, y-point)
  int order = 0;
  int nf = 0;
  double t = 0.0;

  GramLayout(bool reduced, double step) : t(step) {
    pts = reduced ? std::vector<int>{1, kStar} : std::vector<int>{1, 2, kStar};
    int n = 1;  // column 0 is the start point
    for (int i : pts)
      for (int k : pts)
        if (!(i == kStar && k == kStar)) xcol[{i, k}] = n++;
    order = n;
    n = 1;
    for (int j : pts)
      for (int k : pts)
        if (!(k == kStar && j == kStar)) ycol[{k, j}] = n++;
    n = 0;
    for (int i : pts)
      for (int k : pts) fidx[{i, k}] = n++;
    nf = n;
  }

  Vector ex(int i, int k) const {
    Vector v = Vector::Zero(order);
    if (!(i == kStar && k == kStar)) v(xcol.at({i, k})) = 1.0;
    return v;
  }
  Vector ey(int k, int j) const {
    Vector v = Vector::Zero(order);
    if (!(k == kStar && j == kStar)) v(ycol.at({k, j})) = 1.0;
    return v;
  }
  Vector xpoint(int i) const {
    Vector v = Vector::Zero(order);
    if (i == 1) {
      v(0) = 1.0;
    } else if (i == 2) {
      v(0) = 1.0;
      v -= t * ex(1, 1);
    }
    return v;
  }
  Vector ypoint(int j) const {
    Vector v = Vector::Zero(order);
    if (j == 1) {
      v(0) = 1.0;
    } else if (j == 2) {
      v(0) = 1.0;
      v += t * ey(1, 1);
    }
    return v;
  }
  Vector fvec(int i, int k, double c) const {
    Vector v = Vector::Zero(nf);
    v(fidx.at({i, k})) = c;
    return v;
  }
};

void push_row(PepProgram& prog, Matrix ax, Matrix ay, Vector cf, double rhs,
              bool eq, std::string tag) {
  prog.rows.push_back(
      {std::move(ax), std::move(ay), std::move(cf), rhs, eq, std::move(tag)});
}

std::string pair_tag(const char* family, int i, int j, int k) {
  std::ostringstream os;
  os << family << "(" << point_name(i) << "," << point_name(j)
     << ";k=" << point_name(k) << ")";
  return os.str();
}

// Shared between both program variants: interpolation rows with the given
// block constants, cross-Lipschitz rows, optional gradient-growth row,
// normalization and the F(s,s) pin.
PepProgram build_core(double lx, double ly, double lxy, double mux, double muy,
                      double t, bool reduced, bool qgg, double mu_f) {
  if (!(t > 0.0)) {
    throw StepRangeError(t, std::numeric_limits<double>::infinity(),
                         "pep builder");
  }
  if (!(lx > 0.0) || !(ly > 0.0)) {
    throw ParameterError("pep builder: smoothness constants must be positive");
  }
  if (mux >= lx || muy >= ly) {
    throw ParameterError(
        "pep builder: interpolation rows degenerate when a strong convexity "
        "constant equals its smoothness constant");
  }

  GramLayout g(reduced, t);
  PepProgram prog;
  prog.gram_order = g.order;
  prog.n_fvals = g.nf;
  prog.t = t;

  const Matrix zax = Matrix::Zero(g.order, g.order);
  const Vector zcf = Vector::Zero(g.nf);

  // x-side interpolation at each fixed y-point k: residual >= 0 encoded as
  // -residual <= 0.
  const double prefx = 1.0 / (2.0 * (1.0 - mux / lx));
  for (int k : g.pts) {
    for (int i : g.pts) {
      for (int j : g.pts) {
        if (i == j) continue;
        const Vector pi = g.xpoint(i), pj = g.xpoint(j);
        const Vector gi = g.ex(i, k), gj = g.ex(j, k);
        Matrix ax = outer_sym(gj, pi - pj);
        ax += prefx * ((1.0 / lx) * outer_sym(gi - gj, gi - gj) +
                       mux * outer_sym(pi - pj, pi - pj) -
                       (2.0 * mux / lx) * outer_sym(gj - gi, pj - pi));
        Vector cf = g.fvec(i, k, -1.0) + g.fvec(j, k, 1.0);
        push_row(prog, std::move(ax), zax, std::move(cf), 0.0, false,
                 pair_tag("x-interp", i, j, k));
      }
    }
  }
  // y-side interpolation at each fixed x-point k.
  const double prefy = 1.0 / (2.0 * (1.0 - muy / ly));
  for (int k : g.pts) {
    for (int i : g.pts) {
      for (int j : g.pts) {
        if (i == j) continue;
        const Vector qi = g.ypoint(i), qj = g.ypoint(j);
        const Vector gi = g.ey(k, i), gj = g.ey(k, j);
        Matrix ay = -outer_sym(gj, qi - qj);
        ay += prefy * ((1.0 / ly) * outer_sym(gi - gj, gi - gj) +
                       muy * outer_sym(qi - qj, qi - qj) +
                       (2.0 * muy / ly) * outer_sym(gj - gi, qj - qi));
        Vector cf = g.fvec(k, i, 1.0) + g.fvec(k, j, -1.0);
        push_row(prog, zax, std::move(ay), std::move(cf), 0.0, false,
                 pair_tag("y-interp", i, j, k));
      }
    }
  }
  // Cross-Lipschitz rows, squared form.
  const double l2 = lxy * lxy;
  std::vector<std::pair<int, int>> upairs;
  for (std::size_t a = 0; a < g.pts.size(); ++a)
    for (std::size_t b = a + 1; b < g.pts.size(); ++b)
      upairs.emplace_back(g.pts[a], g.pts[b]);
  for (int k : g.pts) {
    for (auto [i, j] : upairs) {
      const Vector dg = g.ex(k, i) - g.ex(k, j);
      const Vector dy = g.ypoint(i) - g.ypoint(j);
      push_row(prog, outer_sym(dg, dg), -l2 * outer_sym(dy, dy), zcf, 0.0,
               false, pair_tag("x-cross", i, j, k));
    }
  }
  for (int k : g.pts) {
    for (auto [i, j] : upairs) {
      const Vector dg = g.ey(i, k) - g.ey(j, k);
      const Vector dx = g.xpoint(i) - g.xpoint(j);
      push_row(prog, -l2 * outer_sym(dx, dx), outer_sym(dg, dg), zcf, 0.0,
               false, pair_tag("y-cross", i, j, k));
    }
  }
  if (qgg) {
    const Vector x1 = g.xpoint(1), y1 = g.ypoint(1);
    Matrix ax = mu_f * outer_sym(x1, x1) - outer_sym(g.ex(1, 1), x1);
    Matrix ay = mu_f * outer_sym(y1, y1) + outer_sym(g.ey(1, 1), y1);
    push_row(prog, std::move(ax), std::move(ay), zcf, 0.0, false,
             "gradient-growth");
  }
  {
    const Vector x1 = g.xpoint(1), y1 = g.ypoint(1);
    prog.normalization_row = static_cast<int>(prog.rows.size());
    push_row(prog, outer_sym(x1, x1), outer_sym(y1, y1), zcf, 1.0, true,
             "normalization");
  }
  push_row(prog, zax, zax, g.fvec(kStar, kStar, 1.0), 0.0, true,
           "saddle-value-pin");

  const Vector x2 = g.xpoint(2), y2 = g.ypoint(2);
  prog.obj_x = outer_sym(x2, x2);
  prog.obj_y = outer_sym(y2, y2);
  return prog;
}

}  // namespace

PepProgram build_pep_strongly_convex(const ProblemParams& p, double t,
                                     bool reduced) {
  return build_core(p.Lx(), p.Ly(), p.Lxy(), p.mu_x(), p.mu_y(), t, reduced,
                    false, 0.0);
}

PepProgram build_pep_qgg(double l, double lxy, double mu_f, double t,
                         bool reduced) {
  if (mu_f < 0.0 || mu_f >= l) {
    throw ParameterError(
        "pep builder: gradient-growth constant must lie in [0, l)");
  }
  PepProgram prog = build_core(l, l, lxy, 0.0, 0.0, t, reduced, true, mu_f);
  if (mu_f == 0.0) {
    prog.warnings.push_back(
        "gradient-growth constant is zero; the growth row adds no growth");
  }
  return prog;
}

double constraint_violation(const PepProgram& prog, const Matrix& gram_x,
                            const Matrix& gram_y, const Vector& fvals) {
  if (gram_x.rows() != prog.gram_order || gram_y.rows() != prog.gram_order ||
      fvals.size() != prog.n_fvals) {
    throw DimensionError("constraint_violation: point does not match program");
  }
  double worst = 0.0;
  for (const auto& r : prog.rows) {
    const double lhs = (r.ax.cwiseProduct(gram_x)).sum() +
                       (r.ay.cwiseProduct(gram_y)).sum() + r.cf.dot(fvals);
    const double v = r.equality ? std::abs(lhs - r.rhs) : lhs - r.rhs;
    if (v > worst) worst = v;
  }
  return worst;
}

double objective_value(const PepProgram& prog, const Matrix& gram_x,
                       const Matrix& gram_y) {
  return (prog.obj_x.cwiseProduct(gram_x)).sum() +
         (prog.obj_y.cwiseProduct(gram_y)).sum();
}

}  // namespace gdapep
