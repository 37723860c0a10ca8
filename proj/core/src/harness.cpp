#include "caginalp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <thread>

#include "caginalp/csv_io.hpp"
#include "caginalp/error.hpp"
#include "caginalp/initial_data.hpp"
#include "caginalp/interpolants.hpp"

namespace caginalp {

namespace fs = std::filesystem;

namespace {

constexpr double kRateThreshold = 0.4;
constexpr double kSourceRateThreshold = 0.5;
constexpr double kUniformityLimit = 10.0;
constexpr double kIdentityTolerance = 1e-10;

std::string grid_label(const Grid& g) {
  std::string s = std::to_string(g.points(0));
  if (g.dim() == 2) s += "x" + std::to_string(g.points(1));
  return s;
}

std::ofstream open_csv(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw PreconditionError("cannot open " + path.string() + " for writing");
  return out;
}

std::vector<std::string> norm_header(std::initializer_list<std::string> lead) {
  std::vector<std::string> h(lead);
  for (auto n : NormReport::monitored_names()) h.emplace_back(n);
  h.insert(h.end(), {"energy_violation", "betahat_infeasible_count", "boundary_layer_fraction"});
  return h;
}

std::vector<std::string> norm_cells(std::vector<std::string> lead, const NormReport& r) {
  for (double v : r.monitored()) lead.push_back(format_real(v));
  lead.push_back(format_real(r.energy_violation));
  lead.push_back(std::to_string(r.betahat_infeasible_count));
  lead.push_back(format_real(r.boundary_layer_fraction));
  return lead;
}

void write_identities(const fs::path& path, const std::string& run_id, const IdentityReport& rep) {
  std::ofstream out = open_csv(path);
  write_csv_row(out, {"run_id", "name", "lhs", "rhs", "equality", "relative_defect"});
  for (const IdentityCheck& c : rep.checks) {
    write_csv_row(out, {run_id, c.name, format_real(c.lhs), format_real(c.rhs), c.equality ? "1" : "0",
                        format_real(c.relative_defect())});
  }
}

struct Setup {
  Grid grid;
  Field theta0;
  Field phi0;
  SourceSpec source;
};

Setup make_setup(const RunConfig& cfg) {
  const Grid grid = cfg.grid.make();
  return {grid, make_initial_field(cfg.theta0, grid), make_initial_field(cfg.phi0, grid),
          cfg.source.make(grid, cfg.ell)};
}

HarnessResult failure(int code, std::string message) {
  HarnessResult r;
  r.exit_code = code;
  r.message = std::move(message);
  return r;
}

std::string status(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

int harness_thread_count() {
  if (const char* env = std::getenv("CAGINALP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 256L));
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!first) first = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

bool ConvergenceResult::pass(double threshold) const {
  return !slopes.empty() &&
         std::all_of(slopes.begin(), slopes.end(), [&](double s) { return s >= threshold; });
}

ConvergenceResult convergence_study(const SchemeParams& base, const Field& theta0, const Field& phi0,
                                    const SourceSpec& source, std::span<const int> N_list, int N_ref,
                                    int threads) {
  if (N_list.size() < 2) throw PreconditionError("convergence_study: need at least two step counts");
  std::vector<int> counts(N_list.begin(), N_list.end());
  counts.push_back(N_ref);
  std::vector<Trajectory> runs(counts.size());
  parallel_for(counts.size(), threads, [&](std::size_t i) {
    SchemeParams p = base;
    p.N = counts[i];
    runs[i] = run(p, theta0, phi0, source);
  });

  ConvergenceResult out;
  out.N_ref = N_ref;
  const Trajectory& ref = runs.back();
  std::vector<double> hs;
  std::vector<std::vector<double>> errs(ErrorReport::names().size());
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) {
    ConvergenceRow row{counts[i], runs[i].h(), error_report(runs[i], ref)};
    hs.push_back(row.h);
    const std::vector<double> v = row.errors.values();
    for (std::size_t k = 0; k < v.size(); ++k) errs[k].push_back(v[k]);
    out.rows.push_back(row);
  }
  for (const auto& e : errs) {
    const bool positive = std::all_of(e.begin(), e.end(), [](double x) { return x > 0.0; });
    out.slopes.push_back(positive ? loglog_slope(hs, e) : std::numeric_limits<double>::quiet_NaN());
  }
  return out;
}

double UniformityRow::ratio() const {
  if (max == 0.0) return 1.0;
  if (min == 0.0) return std::numeric_limits<double>::infinity();
  return max / min;
}

std::vector<UniformityRow> uniformity(std::span<const SweepRow> rows) {
  std::vector<UniformityRow> out;
  const auto names = NormReport::monitored_names();
  for (std::size_t k = 0; k < names.size(); ++k) {
    UniformityRow u{std::string(names[k]), std::numeric_limits<double>::infinity(), 0.0};
    for (const SweepRow& r : rows) {
      const double v = r.norms.monitored()[k];
      u.min = std::min(u.min, v);
      u.max = std::max(u.max, v);
    }
    if (rows.empty()) u.min = 0.0;
    out.push_back(u);
  }
  return out;
}

std::vector<SweepRow> apriori_sweep(const SchemeParams& base, const Field& theta0, const Field& phi0,
                                    const SourceSpec& source, std::span<const int> N_list, int threads) {
  std::vector<SweepRow> rows(N_list.size());
  parallel_for(N_list.size(), threads, [&](std::size_t i) {
    SchemeParams p = base;
    p.N = N_list[i];
    p.monitor_estimates = true;
    const Trajectory traj = run(p, theta0, phi0, source);
    rows[i] = SweepRow{p.N, p.h(), apriori_report(traj)};
  });
  return rows;
}

HarnessResult run_single(const RunConfig& cfg, const fs::path& out_dir) {
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    return failure(1, std::string("invalid config: ") + e.what());
  }
  fs::create_directories(out_dir);
  HarnessResult result;
  const Setup s = make_setup(cfg);
  const SchemeParams params = cfg.scheme(cfg.N);

  const fs::path diag_path = out_dir / "diagnostics.csv";
  std::ofstream diag = open_csv(diag_path);
  write_csv_row(diag, {"run_id", "step", "newton_iterations", "newton_residual", "eps", "phase_cg_iterations",
                       "theta_cg_iterations", "theta_cg_residual"});
  result.artifacts.push_back(diag_path);
  Trajectory traj;
  try {
    traj = run(params, s.theta0, s.phi0, s.source, [&](const StepDiagnostics& d) {
      write_csv_row(diag, {cfg.run_id, std::to_string(d.step), std::to_string(d.phase.iterations),
                           format_real(d.phase.final_residual), format_real(d.phase.eps_used),
                           std::to_string(d.phase.linear_iterations), std::to_string(d.theta.iterations),
                           format_real(d.theta.relative_residual)});
    });
  } catch (const ConvergenceError& e) {
    const fs::path fail_path = out_dir / "diagnostics_failure.csv";
    std::ofstream fail = open_csv(fail_path);
    write_csv_row(fail, {"iteration", "residual"});
    for (std::size_t i = 0; i < e.residuals().size(); ++i) {
      write_csv_row(fail, {std::to_string(i), format_real(e.residuals()[i])});
    }
    return failure(2, std::string("solver failure: ") + e.what() + "; diagnostics in " + fail_path.string());
  } catch (const PreconditionError& e) {
    return failure(1, std::string("invalid run: ") + e.what());
  }
  diag.close();

  const fs::path traj_path = out_dir / ("trajectory_" + cfg.run_id + ".csv");
  write_trajectory_csv(traj_path, traj);
  result.artifacts.push_back(traj_path);

  const IdentityReport ids = check_identities(traj);
  const fs::path id_path = out_dir / "identities.csv";
  write_identities(id_path, cfg.run_id, ids);
  result.artifacts.push_back(id_path);

  if (params.h() < estimate_threshold(params.potential)) {
    const NormReport norms = apriori_report(traj);
    const fs::path est_path = out_dir / "estimates.csv";
    std::ofstream est = open_csv(est_path);
    write_csv_row(est, norm_header({"run_id", "h", "grid", "potential"}));
    write_csv_row(est, norm_cells({cfg.run_id, format_real(params.h()), grid_label(s.grid),
                                   std::string(to_string(params.potential.kind()))},
                                  norms));
    result.artifacts.push_back(est_path);
  }
  result.message = "run " + cfg.run_id + ": " + std::to_string(params.N) + " steps, identities " +
                   status(ids.all_hold(kIdentityTolerance));
  return result;
}

HarnessResult run_study(const RunConfig& cfg, const fs::path& out_dir) {
  if (cfg.mode == RunMode::Single) return run_single(cfg, out_dir);
  try {
    cfg.validate();
  } catch (const ConfigError& e) {
    return failure(1, std::string("invalid config: ") + e.what());
  }
  fs::create_directories(out_dir);
  HarnessResult result;
  const Setup s = make_setup(cfg);
  const SchemeParams base = cfg.scheme(cfg.N_list.front());
  const std::string potential(to_string(cfg.potential.kind()));
  const std::string grid = grid_label(s.grid);
  const int threads = harness_thread_count();

  try {
    switch (cfg.mode) {
      case RunMode::ConvergenceStudy: {
        const ConvergenceResult study =
            convergence_study(base, s.theta0, s.phi0, s.source, cfg.N_list, cfg.N_ref, threads);
        const fs::path err_path = out_dir / "errors.csv";
        std::ofstream err = open_csv(err_path);
        std::vector<std::string> header{"run_id", "h", "N", "N_ref", "grid", "potential"};
        for (auto n : ErrorReport::names()) header.emplace_back(n);
        write_csv_row(err, header);
        for (const ConvergenceRow& row : study.rows) {
          std::vector<std::string> cells{cfg.run_id, format_real(row.h), std::to_string(row.N),
                                         std::to_string(cfg.N_ref), grid, potential};
          for (double v : row.errors.values()) cells.push_back(format_real(v));
          write_csv_row(err, cells);
        }
        const fs::path rate_path = out_dir / "rates.csv";
        std::ofstream rates = open_csv(rate_path);
        write_csv_row(rates, {"run_id", "norm", "slope", "threshold", "status"});
        for (std::size_t k = 0; k < study.slopes.size(); ++k) {
          write_csv_row(rates, {cfg.run_id, std::string(ErrorReport::names()[k]), format_real(study.slopes[k]),
                                format_real(kRateThreshold), status(study.slopes[k] >= kRateThreshold)});
        }
        result.artifacts = {err_path, rate_path};
        result.message = "convergence study " + cfg.run_id + ": " + status(study.pass(kRateThreshold));
        break;
      }
      case RunMode::AprioriSweep: {
        const std::vector<SweepRow> rows = apriori_sweep(base, s.theta0, s.phi0, s.source, cfg.N_list, threads);
        const fs::path est_path = out_dir / "estimates.csv";
        std::ofstream est = open_csv(est_path);
        write_csv_row(est, norm_header({"run_id", "h", "N", "grid", "potential"}));
        for (const SweepRow& r : rows) {
          write_csv_row(est, norm_cells({cfg.run_id, format_real(r.h), std::to_string(r.N), grid, potential}, r.norms));
        }
        const fs::path uni_path = out_dir / "uniformity.csv";
        std::ofstream uni = open_csv(uni_path);
        write_csv_row(uni, {"run_id", "norm", "min", "max", "ratio", "limit", "status"});
        bool all = true;
        for (const UniformityRow& u : uniformity(rows)) {
          const bool ok = u.ratio() <= kUniformityLimit;
          all = all && ok;
          write_csv_row(uni, {cfg.run_id, u.norm, format_real(u.min), format_real(u.max), format_real(u.ratio()),
                              format_real(kUniformityLimit), status(ok)});
        }
        result.artifacts = {est_path, uni_path};
        result.message = "a-priori sweep " + cfg.run_id + ": " + status(all);
        break;
      }
      case RunMode::SourceAverageStudy: {
        const fs::path sa_path = out_dir / "source_average.csv";
        std::ofstream sa = open_csv(sa_path);
        write_csv_row(sa, {"run_id", "h", "N", "grid", "error", "bound"});
        std::vector<double> hs, errs, bounds(cfg.N_list.size());
        errs.resize(cfg.N_list.size());
        parallel_for(cfg.N_list.size(), threads, [&](std::size_t i) {
          const double h = cfg.T / cfg.N_list[i];
          errs[i] = source_average_error(s.source, s.grid, cfg.T, h);
          bounds[i] = s.source.regularity() == TimeRegularity::W11
                          ? source_average_bound(s.source, s.grid, cfg.T, h)
                          : std::numeric_limits<double>::quiet_NaN();
        });
        for (std::size_t i = 0; i < cfg.N_list.size(); ++i) {
          hs.push_back(cfg.T / cfg.N_list[i]);
          write_csv_row(sa, {cfg.run_id, format_real(hs[i]), std::to_string(cfg.N_list[i]), grid,
                             format_real(errs[i]), format_real(bounds[i])});
        }
        const bool positive = std::all_of(errs.begin(), errs.end(), [](double e) { return e > 0.0; });
        const double slope = positive ? loglog_slope(hs, errs) : std::numeric_limits<double>::quiet_NaN();
        const fs::path rate_path = out_dir / "rates.csv";
        std::ofstream rates = open_csv(rate_path);
        write_csv_row(rates, {"run_id", "norm", "slope", "threshold", "status"});
        write_csv_row(rates, {cfg.run_id, "source_average_l2h", format_real(slope),
                              format_real(kSourceRateThreshold), status(slope >= kSourceRateThreshold)});
        result.artifacts = {sa_path, rate_path};
        result.message = "source-average study " + cfg.run_id + ": " + status(slope >= kSourceRateThreshold);
        break;
      }
      case RunMode::Single:
        break;
    }
  } catch (const ConvergenceError& e) {
    const fs::path fail_path = out_dir / "diagnostics.csv";
    std::ofstream fail = open_csv(fail_path);
    write_csv_row(fail, {"iteration", "residual"});
    for (std::size_t i = 0; i < e.residuals().size(); ++i) {
      write_csv_row(fail, {std::to_string(i), format_real(e.residuals()[i])});
    }
    return failure(2, std::string("solver failure: ") + e.what() + "; diagnostics in " + fail_path.string());
  } catch (const PreconditionError& e) {
    return failure(1, std::string("invalid run: ") + e.what());
  }
  return result;
}

HarnessResult check_trajectory_identities(const fs::path& trajectory, const fs::path& out_dir,
                                          double tolerance) {
  Trajectory traj;
  try {
    traj = read_trajectory_csv(trajectory);
  } catch (const Error& e) {
    return failure(1, e.what());
  }
  const IdentityReport rep = check_identities(traj);
  HarnessResult result;
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    const fs::path path = out_dir / "identities.csv";
    write_identities(path, trajectory.stem().string(), rep);
    result.artifacts.push_back(path);
  }
  const bool ok = rep.all_hold(tolerance);
  result.exit_code = ok ? 0 : 3;
  result.message = "identities " + status(ok) + ", worst relative defect " + format_real(rep.worst_defect());
  return result;
}

}  // namespace caginalp
