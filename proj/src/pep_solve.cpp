// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "gdapep/errors.hpp"
#include "gdapep/pep.hpp"

namespace gdapep {
namespace {

// Symmetric half-vectorization with sqrt(2) off-diagonal scaling so that
// <A, B> = svec(A) . svec(B); diagonal entry first within each row.
Vector svec(const Matrix& m) {
  const int n = static_cast<int>(m.rows());
  Vector out(n * (n + 1) / 2);
  const double s2 = std::sqrt(2.0);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    out(k++) = m(i, i);
    for (int j = i + 1; j < n; ++j) out(k++) = s2 * m(i, j);
  }
  return out;
}

Matrix smat(const Eigen::Ref<const Vector>& v, int n) {
  Matrix m(n, n);
  const double s2 = std::sqrt(2.0);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    m(i, i) = v(k++);
    for (int j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = v(k++) / s2;
    }
  }
  return m;
}

struct QueryResult {
  bool feasible = false;
  Vector best_p;
  Vector w_end;
  double best_res = std::numeric_limits<double>::infinity();
  long long used = 0;
};

// The stacked variable is [svec(X), svec(Y), f, slacks, objective slack];
// cone A is (PSD, PSD, free, nonneg), set B the affine rows C w = d.
class DrSolver {
 public:
  DrSolver(const PepProgram& prog, const SolverOptions& opt)
      : opt_(opt),
        n_(prog.gram_order),
        sv_(n_ * (n_ + 1) / 2),
        nz_(2 * sv_ + prog.n_fvals) {
    if (prog.normalization_row >= 0) {
      nrm_ = prog.rows[prog.normalization_row].rhs;
      if (!(nrm_ > 0.0)) {
        throw ParameterError("sdp solver: normalization constant must be positive");
      }
    }
    const int n_rows = static_cast<int>(prog.rows.size());
    int m_in = 0;
    for (const auto& r : prog.rows)
      if (!r.equality) ++m_in;
    m_ = n_rows + 1;
    nw_ = nz_ + m_in + 1;
    c_ = Matrix::Zero(m_, nw_);
    d0_ = Vector::Zero(n_rows);
    int si = 0;
    for (int r = 0; r < n_rows; ++r) {
      const auto& row = prog.rows[r];
      c_.row(r).segment(0, sv_) = svec(row.ax);
      c_.row(r).segment(sv_, sv_) = svec(row.ay);
      c_.row(r).segment(2 * sv_, prog.n_fvals) = row.cf;
      d0_(r) = row.rhs;
      if (!row.equality) c_(r, nz_ + si++) = 1.0;
    }
    c_.row(m_ - 1).segment(0, sv_) = svec(prog.obj_x);
    c_.row(m_ - 1).segment(sv_, sv_) = svec(prog.obj_y);
    c_(m_ - 1, nz_ + m_in) = -1.0;
    Matrix cct = c_ * c_.transpose();
    cct.diagonal().array() += 1e-13;
    llt_.compute(cct);
    if (llt_.info() != Eigen::Success) {
      throw DomainError("sdp solver: constraint normal matrix factorization failed");
    }
  }

  int num_vars() const { return nw_; }

  // Levels are ratios against the normalization constant, so the bisection
  // bracket and the reported value do not move when that row is rescaled.
  Vector rhs(double alpha) const {
    Vector d(m_);
    d.head(m_ - 1) = d0_;
    d(m_ - 1) = alpha * nrm_;
    return d;
  }

  Vector project_cone(const Vector& w) const {
    Vector out = w;
    clamp_psd(out, 0);
    clamp_psd(out, sv_);
    out.tail(nw_ - nz_) = out.tail(nw_ - nz_).cwiseMax(0.0);
    return out;
  }

  Vector project_affine(const Vector& w, const Vector& d) const {
    Vector lam = llt_.solve(c_ * w - d);
    return w - c_.transpose() * lam;
  }

  // Runs DR until the affine residual certifies feasibility or the iteration
  // cap runs out.  There is deliberately no early "looks stalled" exit: near
  // the optimum, feasible queries plateau for long stretches and then certify
  // abruptly, so any stall heuristic ends up rejecting feasible levels and
  // biasing the bisection low.  A query that exhausts its cap counts as
  // infeasible, which can only shrink the reported value, never inflate it.
  QueryResult query(double alpha, const Vector& w0, long long cap,
                    long long* total_iters) const {
    const Vector d = rhs(alpha);
    QueryResult qr;
    Vector w = w0;
    constexpr long long kCheck = 25;
    constexpr double kEpsFeas = 1e-9;
    long long k = 0;
    while (k < cap) {
      const Vector p = project_cone(w);
      const Vector q = project_affine(2.0 * p - w, d);
      w += opt_.over_relax * (q - p);
      ++k;
      ++*total_iters;
      if (k % kCheck == 0) {
        const double res = (c_ * p - d).cwiseAbs().maxCoeff();
        if (res < qr.best_res) {
          qr.best_res = res;
          qr.best_p = p;
        }
        if (qr.best_res <= kEpsFeas) {
          qr.feasible = true;
          qr.w_end = std::move(w);
          qr.used = k;
          return qr;
        }
      }
    }
    qr.w_end = std::move(w);
    qr.used = k;
    return qr;
  }

  double objective_at(const Vector& p) const {
    return c_.row(m_ - 1).head(nz_).dot(p.head(nz_)) / nrm_;
  }

  int sv() const { return sv_; }
  int nz() const { return nz_; }

 private:
  void clamp_psd(Vector& w, int offset) const {
    Matrix x = smat(w.segment(offset, sv_), n_);
    Eigen::SelfAdjointEigenSolver<Matrix> es(x);
    const Vector ev = es.eigenvalues().cwiseMax(0.0);
    x = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
    w.segment(offset, sv_) = svec(x);
  }

  SolverOptions opt_;
  int n_, sv_, nz_, m_, nw_;
  double nrm_ = 1.0;
  Matrix c_;
  Vector d0_;
  Eigen::LLT<Matrix> llt_;
};

}  // namespace

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kMaxIter:
      return "max-iter";
    case SolveStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

SdpSolution solve_sdp(const PepProgram& prog, const SolverOptions& opt) {
  if (prog.rows.empty()) throw ParameterError("sdp solver: empty program");
  if (!(opt.tol > 0.0) || opt.max_projections <= 0 || opt.max_queries <= 0 ||
      !(opt.upper > 0.0)) {
    throw ParameterError("sdp solver: options out of range");
  }
  DrSolver solver(prog, opt);

  SdpSolution sol;
  sol.gram_x = Matrix::Zero(prog.gram_order, prog.gram_order);
  sol.gram_y = Matrix::Zero(prog.gram_order, prog.gram_order);
  sol.fvals = Vector::Zero(prog.n_fvals);

  const auto unpack = [&](const Vector& p) {
    sol.gram_x = smat(p.head(solver.sv()), prog.gram_order);
    sol.gram_y = smat(p.segment(solver.sv(), solver.sv()), prog.gram_order);
    sol.fvals = p.segment(2 * solver.sv(), prog.n_fvals);
  };

  // Feasibility at alpha = 0: the objective is a sum of squares, so this only
  // tests whether the rows themselves admit a point.  Failure means the
  // program is defective, not that the rate is large.
  ++sol.queries;
  QueryResult q0 = solver.query(0.0, Vector::Zero(solver.num_vars()),
                                opt.max_projections, &sol.projections);
  if (!q0.feasible) {
    sol.status = SolveStatus::kInfeasible;
    sol.value = std::numeric_limits<double>::quiet_NaN();
    sol.kkt_residual = q0.best_res;
    return sol;
  }
  Vector w_feas = q0.w_end;
  Vector best_point = q0.best_p;
  double best_point_res = q0.best_res;

  double lo = 0.0, hi = opt.upper;
  ++sol.queries;
  QueryResult qh = solver.query(hi, w_feas, opt.max_projections / 4,
                                &sol.projections);
  if (qh.feasible) {
    unpack(qh.best_p);
    sol.status = SolveStatus::kMaxIter;
    sol.value = hi;
    sol.kkt_residual = std::max(qh.best_res, hi - lo);
    return sol;
  }

  bool out_of_queries = false;
  // Coarse localization with a quarter budget, then refinement to tol with
  // the full budget; warm starts reuse the last feasible iterate.
  for (int phase = 0; phase < 2; ++phase) {
    const double width = phase == 0 ? 1e-4 : opt.tol;
    const long long cap =
        phase == 0 ? opt.max_projections / 4 : opt.max_projections;
    while (hi - lo > width) {
      if (sol.queries >= opt.max_queries) {
        out_of_queries = true;
        break;
      }
      const double mid = 0.5 * (lo + hi);
      ++sol.queries;
      QueryResult q = solver.query(mid, w_feas, cap, &sol.projections);
      if (q.feasible) {
        lo = mid;
        w_feas = q.w_end;
        best_point = q.best_p;
        best_point_res = q.best_res;
      } else {
        hi = mid;
      }
    }
    if (out_of_queries) break;
  }

  unpack(best_point);
  sol.value = std::max(lo, solver.objective_at(best_point));
  sol.status = out_of_queries ? SolveStatus::kMaxIter : SolveStatus::kOptimal;
  sol.kkt_residual = std::max(best_point_res, hi - lo);
  return sol;
}

}  // namespace gdapep
