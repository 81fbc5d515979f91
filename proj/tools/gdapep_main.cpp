// Copyright (c) 2026 the gdapep developers
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end.  Every subcommand wraps one library operation and
// writes a CSV table or a JSON document to stdout (or --out).  Exit codes:
// 0 success, 2 flag/usage errors, 3 domain errors (bad steps, parse
// failures, diverged runs).

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "gdapep/certificates.hpp"
#include "gdapep/errors.hpp"
#include "gdapep/gda.hpp"
#include "gdapep/interpolation.hpp"
#include "gdapep/io.hpp"
#include "gdapep/oracles.hpp"
#include "gdapep/pep.hpp"
#include "gdapep/rates.hpp"
#include "gdapep/rng.hpp"
#include "gdapep/search.hpp"
#include "gdapep/tight.hpp"
#include "json.hpp"

namespace {

using gdapep::Matrix;
using gdapep::Vector;
using ojson = nlohmann::ordered_json;

// Tabular results: cells are JSON scalars so one representation serves both
// output formats (numbers stay typed in JSON, CSV uses round-trip text).
struct Table {
  std::vector<std::string> cols;
  std::vector<std::vector<ojson>> rows;
};

std::string cell_text(const ojson& c) {
  if (c.is_null()) return "";
  if (c.is_string()) return c.get<std::string>();
  if (c.is_number_integer()) return std::to_string(c.get<long long>());
  if (c.is_number()) return gdapep::format_double(c.get<double>());
  return c.dump();
}

std::string table_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.cols.size(); ++i) {
    if (i) out += ',';
    out += t.cols[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += cell_text(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string table_json(const Table& t) {
  ojson rows = ojson::array();
  for (const auto& row : t.rows) {
    ojson obj = ojson::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.cols[i]] = row[i];
    rows.push_back(std::move(obj));
  }
  return rows.dump(2) + "\n";
}

// One-row CSV view of a JSON document: scalars keep their key, vectors
// append _i, matrices _r_c.
void flatten_doc(const std::string& key, const ojson& v, Table* t) {
  if (v.is_array() && !v.empty() && v[0].is_array()) {
    for (std::size_t r = 0; r < v.size(); ++r)
      for (std::size_t c = 0; c < v[r].size(); ++c) {
        t->cols.push_back(key + "_" + std::to_string(r) + "_" +
                          std::to_string(c));
        t->rows[0].push_back(v[r][c]);
      }
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      t->cols.push_back(key + "_" + std::to_string(i));
      t->rows[0].push_back(v[i]);
    }
  } else {
    t->cols.push_back(key);
    t->rows[0].push_back(v);
  }
}

std::string doc_csv(const ojson& doc) {
  Table t;
  t.rows.emplace_back();
  for (const auto& [key, value] : doc.items()) flatten_doc(key, value, &t);
  return table_csv(t);
}

ojson vector_json(const Vector& v) {
  ojson a = ojson::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

ojson matrix_json(const Matrix& m) {
  ojson rows = ojson::array();
  for (int r = 0; r < m.rows(); ++r) {
    ojson row = ojson::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson num_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

// Writes the fully assembled output; a file that cannot be written out
// completely is removed rather than left truncated.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (f) f << content;
  if (!f) {
    std::error_code ec;
    std::filesystem::remove(out_path, ec);
    throw gdapep::ParseError("cannot write output file: " + out_path);
  }
}

// Deterministic fan-out: items are claimed by index, results land in
// index order, and the first worker exception is rethrown after join.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex err_mu;
  std::vector<std::thread> pool;
  pool.reserve(jobs);
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&] {
      int i;
      while ((i = next.fetch_add(1)) < n && !failed.load()) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mu);
          if (!first_error) first_error = std::current_exception();
          failed.store(true);
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t mix_seed(std::uint64_t seed, std::size_t i) {
  return seed ^ (0x9e3779b97f4a7c15ULL * (i + 1));
}

// Reads --config JSON and turns it into flag tokens inserted ahead of the
// explicit flags, so explicitly passed values win (options take the last
// occurrence).
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::FileError::Missing(path);
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CLI::FileError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw CLI::FileError("config: expected a JSON object");
  std::vector<std::string> toks;
  for (const auto& [key, value] : j.items()) {
    if (value.is_boolean()) {
      toks.push_back("--" + key + "=" + (value.get<bool>() ? "true" : "false"));
    } else if (value.is_array()) {
      toks.push_back("--" + key);
      for (const auto& el : value)
        toks.push_back(el.is_string() ? el.get<std::string>() : el.dump());
    } else if (value.is_string()) {
      toks.push_back("--" + key + "=" + value.get<std::string>());
    } else {
      toks.push_back("--" + key + "=" + value.dump());
    }
  }
  return toks;
}

struct GlobalArgs {
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // "", "csv", "json"
  int jobs = 0;
};

void emit_table(const GlobalArgs& g, const Table& t) {
  emit(g.out, g.format == "json" ? table_json(t) : table_csv(t));
}

void emit_doc(const GlobalArgs& g, const ojson& doc) {
  emit(g.out, g.format == "csv" ? doc_csv(doc) : doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  GlobalArgs g;
  if (const char* env = std::getenv("SADDLE_PEP_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || env == end) {
      std::cerr << "error: SADDLE_PEP_SEED is not an unsigned integer\n";
      return 2;
    }
    g.seed = v;
  }
  g.jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (g.jobs <= 0) g.jobs = 1;

  CLI::App app{
      "gdapep: worst-case contraction rates of simultaneous gradient "
      "descent-ascent, their certificates, tight instances, and "
      "performance-estimation SDP cross-checks"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON object mirroring flags; explicit flags override")
      ->expected(1);
  app.add_option("--seed", g.seed,
                 "RNG seed (env SADDLE_PEP_SEED is the fallback)");
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "output format override")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", g.jobs, "worker threads for sweeps")
      ->check(CLI::PositiveNumber);

  int rc = 0;

  // ---- rate ----
  auto* rate = app.add_subcommand("rate", "closed-form contraction factors");
  rate->require_subcommand(1);
  struct {
    double L = 0, mu = 0, Lxy = 0, t = 0;
    int grid = 10;
  } ra;
  auto add_class_flags = [&](CLI::App* cmd) {
    cmd->add_option("--L", ra.L, "gradient Lipschitz constant")->required();
    cmd->add_option("--mu", ra.mu, "strong convexity/concavity modulus")
        ->required();
    cmd->add_option("--Lxy", ra.Lxy, "cross-block Lipschitz constant")
        ->required();
  };

  auto* rate_eval = rate->add_subcommand("eval", "factor at one step size");
  add_class_flags(rate_eval);
  rate_eval->add_option("--t", ra.t, "step size")->required();
  rate_eval->callback([&] {
    const gdapep::RateResult r = gdapep::rate_alpha(ra.L, ra.mu, ra.Lxy, ra.t);
    Table t{{"t", "alpha", "baseline", "step_upper"}, {}};
    const double bup = gdapep::baseline_step_upper(ra.L, ra.mu);
    const ojson base = gdapep::step_in_open_interval(ra.t, bup)
                           ? ojson(gdapep::baseline_rate(ra.L, ra.mu, ra.t))
                           : ojson(nullptr);
    t.rows.push_back({ra.t, r.alpha, base, r.step_upper});
    emit_table(g, t);
  });

  auto* rate_sweep = rate->add_subcommand("sweep", "factor over a step grid");
  add_class_flags(rate_sweep);
  rate_sweep->add_option("--t-grid", ra.grid, "number of interior grid steps")
      ->check(CLI::PositiveNumber);
  rate_sweep->callback([&] {
    const double upper = gdapep::rate_alpha_step_upper(ra.L, ra.mu, ra.Lxy);
    const double bup = gdapep::baseline_step_upper(ra.L, ra.mu);
    Table t{{"t", "alpha", "baseline", "step_upper"}, {}};
    t.rows.resize(ra.grid);
    parallel_for(ra.grid, g.jobs, [&](int i) {
      const double ti = upper * (i + 1) / (ra.grid + 1);
      const gdapep::RateResult r = gdapep::rate_alpha(ra.L, ra.mu, ra.Lxy, ti);
      const ojson base = gdapep::step_in_open_interval(ti, bup)
                             ? ojson(gdapep::baseline_rate(ra.L, ra.mu, ti))
                             : ojson(nullptr);
      t.rows[i] = {ti, r.alpha, base, r.step_upper};
    });
    emit_table(g, t);
  });

  auto* rate_opt = rate->add_subcommand("optimal", "best step and factor");
  add_class_flags(rate_opt);
  rate_opt->callback([&] {
    Table t{{"t_star", "alpha_star"}, {}};
    t.rows.push_back({gdapep::optimal_step(ra.L, ra.mu, ra.Lxy),
                      gdapep::optimal_rate(ra.L, ra.mu, ra.Lxy)});
    emit_table(g, t);
  });

  // ---- run ----
  auto* run_cmd =
      app.add_subcommand("run", "GDA trajectory on a JSON instance");
  struct {
    std::string instance;
    double t = 0;
    int steps = 20;
    std::vector<double> x0, y0;
  } ru;
  run_cmd->add_option("--instance", ru.instance, "instance JSON file")
      ->required();
  run_cmd->add_option("--t", ru.t, "step size")->required();
  run_cmd->add_option("--steps", ru.steps, "number of GDA steps")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--x0", ru.x0, "start point, x block")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  run_cmd->add_option("--y0", ru.y0, "start point, y block")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  run_cmd->callback([&] {
    const gdapep::QuadraticSaddle inst =
        gdapep::load_instance_json(ru.instance);
    Vector x0, y0;
    if (!ru.x0.empty() || !ru.y0.empty()) {
      x0 = Eigen::Map<const Vector>(ru.x0.data(),
                                    static_cast<int>(ru.x0.size()));
      y0 = Eigen::Map<const Vector>(ru.y0.data(),
                                    static_cast<int>(ru.y0.size()));
    } else {
      gdapep::Rng rng(g.seed);
      x0 = Vector::NullaryExpr(inst.dim_x(), [&](int) { return rng.normal(); });
      y0 = Vector::NullaryExpr(inst.dim_y(), [&](int) { return rng.normal(); });
    }
    const gdapep::Trajectory traj =
        gdapep::run(inst, x0, y0, ru.t, ru.steps);
    Table t{{"k", "dist_sq", "ratio"}, {}};
    for (std::size_t k = 0; k < traj.distances_sq.size(); ++k) {
      const ojson ratio =
          k > 0 && traj.distances_sq[k - 1] != 0.0
              ? ojson(traj.distances_sq[k] / traj.distances_sq[k - 1])
              : ojson(nullptr);
      t.rows.push_back(
          {static_cast<long long>(k), traj.distances_sq[k], ratio});
    }
    emit_table(g, t);
  });

  // ---- tight ----
  auto* tight_cmd = app.add_subcommand(
      "tight", "worst-case instance attaining the one-step factor");
  struct {
    double L = 0, mu = 0, Lxy = 0, t = 0;
    std::optional<double> mux;
  } ti;
  tight_cmd->add_option("--L", ti.L)->required();
  tight_cmd->add_option("--mu", ti.mu)->required();
  tight_cmd->add_option("--Lxy", ti.Lxy)->required();
  tight_cmd->add_option("--t", ti.t)->required();
  tight_cmd->add_option("--mux", ti.mux,
                        "x-side modulus override (mu <= mux <= L)");
  tight_cmd->callback([&] {
    const gdapep::TightStart ts =
        gdapep::tight_bilinear_start(ti.L, ti.mu, ti.Lxy, ti.t, ti.mux);
    const gdapep::TightnessReport rep =
        gdapep::verify_tightness(ti.L, ti.mu, ti.Lxy, ti.t, ti.mux);
    ojson doc;
    doc["A"] = matrix_json(ts.oracle.A());
    doc["B"] = matrix_json(ts.oracle.B());
    doc["C"] = matrix_json(ts.oracle.C());
    doc["x1"] = vector_json(ts.x1);
    doc["y1"] = vector_json(ts.y1);
    doc["alpha"] = rep.alpha;
    doc["ratio"] = rep.ratio;
    doc["gap"] = rep.gap;
    emit_doc(g, doc);
  });

  // ---- certify ----
  auto* cert_cmd = app.add_subcommand(
      "certify", "evaluate the closed-form dual certificate identity");
  struct {
    std::string kind;
    double L = 0, mu = 0, muF = 0, t = 0, tol = 1e-8;
    int trials = 100, dim = 4;
  } ce;
  cert_cmd->add_option("--kind", ce.kind, "certificate family")
      ->required()
      ->check(CLI::IsMember({"strong", "qgg"}));
  cert_cmd->add_option("--L", ce.L)->required();
  cert_cmd->add_option("--mu", ce.mu, "modulus (strong kind)");
  cert_cmd->add_option("--muF", ce.muF, "gradient-growth constant (qgg kind)");
  cert_cmd->add_option("--t", ce.t)->required();
  cert_cmd->add_option("--trials", ce.trials)->check(CLI::PositiveNumber);
  cert_cmd->add_option("--dim", ce.dim)->check(CLI::PositiveNumber);
  cert_cmd->add_option("--tol", ce.tol, "max accepted identity residual");
  cert_cmd->callback([&] {
    gdapep::Certificate c;
    double residual = 0.0;
    if (ce.kind == "strong") {
      c = gdapep::certificate_strongly_convex(ce.L, ce.mu, ce.t);
      residual = gdapep::verify_identity_strongly_convex(
          ce.L, ce.mu, ce.t, ce.trials, ce.dim, g.seed);
    } else {
      c = gdapep::certificate_qgg(ce.L, ce.muF, ce.t);
      residual = gdapep::verify_identity_qgg(ce.L, ce.muF, ce.t, ce.trials,
                                             ce.dim, g.seed);
    }
    ojson doc;
    doc["kind"] = ce.kind;
    doc["alpha"] = c.alpha;
    doc["beta"] = c.beta;
    doc["gammas"] = c.gammas;
    doc["zetas"] = c.zetas;
    doc["residual"] = residual;
    doc["tol"] = ce.tol;
    doc["pass"] = residual <= ce.tol;
    emit_doc(g, doc);
    if (!(residual <= ce.tol)) {
      std::cerr << "certificate identity residual " << residual
                << " exceeds tolerance " << ce.tol << "\n";
      rc = 3;
    }
  });

  // ---- pep ----
  auto* pep_cmd = app.add_subcommand(
      "pep", "solve the one-step performance-estimation SDP");
  struct {
    double Lx = 0, Ly = 0, Lxy = 0, mux = 0, muy = 0, t = 0;
    double muF = 0;
    bool qgg = false, reduced = false;
    gdapep::SolverOptions opt;
  } pe;
  pep_cmd->add_option("--Lx", pe.Lx)->required();
  pep_cmd->add_option("--Ly", pe.Ly)->required();
  pep_cmd->add_option("--Lxy", pe.Lxy)->required();
  pep_cmd->add_option("--mux", pe.mux);
  pep_cmd->add_option("--muy", pe.muy);
  pep_cmd->add_option("--t", pe.t)->required();
  pep_cmd->add_option("--tol", pe.opt.tol, "bisection bracket target");
  pep_cmd->add_option("--max-proj", pe.opt.max_projections,
                      "projection budget per feasibility query");
  pep_cmd->add_flag("--qgg", pe.qgg,
                    "use the gradient-growth program (L = max(Lx, Ly))");
  pep_cmd->add_option("--muF", pe.muF, "gradient-growth constant (with --qgg)");
  pep_cmd->add_flag("--reduced", pe.reduced,
                    "drop the post-step point from the program");
  pep_cmd->callback([&] {
    const gdapep::PepProgram prog =
        pe.qgg ? gdapep::build_pep_qgg(std::max(pe.Lx, pe.Ly), pe.Lxy, pe.muF,
                                       pe.t, pe.reduced)
               : gdapep::build_pep_strongly_convex(
                     gdapep::ProblemParams(pe.Lx, pe.Ly, pe.Lxy, pe.mux,
                                           pe.muy),
                     pe.t, pe.reduced);
    for (const auto& w : prog.warnings) std::cerr << "warning: " << w << "\n";
    const gdapep::SdpSolution sol = gdapep::solve_sdp(prog, pe.opt);
    ojson doc;
    doc["value"] = num_or_null(sol.value);
    doc["status"] = gdapep::to_string(sol.status);
    doc["kkt_residual"] = sol.kkt_residual;
    emit_doc(g, doc);
  });

  // ---- conjecture ----
  auto* conj_cmd = app.add_subcommand(
      "conjecture", "five-constant rate cross-check: closed form vs SDP vs "
                    "empirical search");
  struct {
    double Lx = 0, Ly = 0, Lxy = 0, mux = 0, muy = 0;
    int grid = 8, budget = 40000;
    gdapep::SolverOptions opt = gdapep::probe_solver_options();
  } co;
  conj_cmd->add_option("--Lx", co.Lx)->required();
  conj_cmd->add_option("--Ly", co.Ly)->required();
  conj_cmd->add_option("--Lxy", co.Lxy)->required();
  conj_cmd->add_option("--mux", co.mux)->required();
  conj_cmd->add_option("--muy", co.muy)->required();
  conj_cmd->add_option("--t-grid", co.grid, "number of interior grid steps")
      ->check(CLI::PositiveNumber);
  conj_cmd->add_option("--budget", co.budget, "random search iterations")
      ->check(CLI::NonNegativeNumber);
  conj_cmd->add_option("--max-proj", co.opt.max_projections);
  conj_cmd->add_option("--tol", co.opt.tol);
  conj_cmd->callback([&] {
    const gdapep::ProblemParams p(co.Lx, co.Ly, co.Lxy, co.mux, co.muy);
    const double upper = gdapep::conjecture_rate(p, 0.0, true).step_upper;
    Table t{{"t", "alpha_conj", "alpha_sdp", "alpha_emp", "verdict"}, {}};
    t.rows.resize(co.grid);
    parallel_for(co.grid, g.jobs, [&](int i) {
      const double ti = upper * (i + 1) / (co.grid + 1);
      const gdapep::ProbeRow row =
          gdapep::conjecture_probe(p, {ti}, co.budget, mix_seed(g.seed, i),
                                   co.opt)
              .front();
      t.rows[i] = {row.t, num_or_null(row.alpha_conjectured),
                   num_or_null(row.alpha_sdp), num_or_null(row.alpha_empirical),
                   gdapep::to_string(row.verdict)};
    });
    emit_table(g, t);
  });

  // ---- qgg ----
  auto* qgg_cmd = app.add_subcommand(
      "qgg", "estimate the gradient-growth constant of a built-in example");
  struct {
    std::string example;
    int grid = 200;
  } qg;
  qgg_cmd->add_option("--example", qg.example, "built-in 1+1d example")
      ->required()
      ->check(CLI::IsMember({"piecewise", "uncoupled"}));
  qgg_cmd->add_option("--grid", qg.grid, "grid points per dimension")
      ->check(CLI::PositiveNumber);
  qgg_cmd->callback([&] {
    const gdapep::PiecewiseQGGExample piecewise;
    const gdapep::UncoupledPiecewiseExample uncoupled;
    const gdapep::SaddleOracle& oracle =
        qg.example == "piecewise"
            ? static_cast<const gdapep::SaddleOracle&>(piecewise)
            : uncoupled;
    const gdapep::PointList samples =
        gdapep::grid_sampler_2d(-4.0, 4.0, qg.grid);
    const double hat = gdapep::estimate_muF(oracle, samples);
    Table t{{"example", "grid", "mu_f_hat"}, {}};
    t.rows.push_back({qg.example, qg.grid, hat});
    emit_table(g, t);
  });

  // App-level flags are accepted after the subcommand name too (and config
  // tokens land there); each nesting level forwards unmatched options up.
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; })) {
    sub->fallthrough();
    for (CLI::App* inner : sub->get_subcommands([](CLI::App*) { return true; }))
      inner->fallthrough();
  }

  // --config is resolved before the real parse so its tokens sit between
  // the subcommand name and the explicit flags.
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    std::string cfg;
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        cfg = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
        break;
      }
      if (args[i].rfind("--config=", 0) == 0) {
        cfg = args[i].substr(9);
        args.erase(args.begin() + i);
        break;
      }
    }
    if (!cfg.empty() && !args.empty()) {
      std::vector<std::string> toks = config_tokens(cfg);
      std::size_t at = 1;  // after the subcommand name
      if (args[0] == "rate" && args.size() >= 2) at = 2;
      args.insert(args.begin() + at, toks.begin(), toks.end());
    }
    // CLI11 parses reversed token vectors.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const gdapep::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return rc;
}
