#include "caginalp/estimates.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "caginalp/error.hpp"

namespace caginalp {

namespace {

constexpr std::array<std::string_view, NormReport::kMonitoredCount> kNormNames{
    "linf_h_theta_bar",        "l2_v_theta_bar", "l2_h_dt_theta_hat",
    "l2_h_dt_phi_hat",         "linf_v_phi_bar", "l1_linf_betahat_phi_bar",
    "l2_h_xi_bar",             "l2_h_lap_theta_bar", "l2_h_lap_phi_bar"};

constexpr std::array<std::string_view, 5> kErrorNames{
    "e_phi_linf_h", "e_phi_l2_v", "e_combo_linf_h", "e_theta_l2_v", "e_theta_linf_h"};

double envelope_integral(const Potential& p, double eps, const Field& phi) {
  const Grid& g = phi.grid();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) sum += g.weight(k) * beta_hat_envelope(p, eps, phi[k]);
  return sum;
}

bool in_boundary_band(const Grid& g, std::size_t flat) {
  const auto x = g.point(flat);
  for (int a = 0; a < g.dim(); ++a) {
    const double band = 0.1 * g.extent(a);
    if (x[a] < band || x[a] > g.extent(a) - band) return true;
  }
  return false;
}

int steps_for(double T, double h) {
  const double ratio = T / h;
  const double n = std::round(ratio);
  if (n < 1.0 || std::abs(ratio - n) > 1e-9 * ratio) {
    throw PreconditionError("T/h = " + std::to_string(ratio) + " is not a positive integer");
  }
  return static_cast<int>(n);
}

}  // namespace

std::vector<double> NormReport::monitored() const {
  return {linf_h_theta_bar, l2_v_theta_bar,          l2_h_dt_theta_hat,
          l2_h_dt_phi_hat,  linf_v_phi_bar,          l1_linf_betahat_phi_bar,
          l2_h_xi_bar,      l2_h_lap_theta_bar,      l2_h_lap_phi_bar};
}

std::span<const std::string_view> NormReport::monitored_names() { return kNormNames; }

std::vector<double> ErrorReport::values() const {
  return {e_phi_linf_h, e_phi_l2_v, e_combo_linf_h, e_theta_l2_v, e_theta_linf_h};
}

std::span<const std::string_view> ErrorReport::names() { return kErrorNames; }

std::vector<EnergyStep> energy_inequality(const Trajectory& traj) {
  const SchemeParams& prm = traj.params;
  const double h = traj.h();
  const double ell2 = prm.ell * prm.ell;
  const double lip = prm.potential.pi_lipschitz();
  const double eps = prm.solve.eps.resolve(h);
  std::vector<EnergyStep> out;
  out.reserve(traj.steps());

  double beta_prev = envelope_integral(prm.potential, eps, traj.states[0].phi);
  for (int n = 0; n < traj.steps(); ++n) {
    const State& a = traj.states[n];
    const State& b = traj.states[n + 1];
    const Field dtheta = b.theta - a.theta;
    const Field dphi = b.phi - a.phi;
    const double beta_next = envelope_integral(prm.potential, eps, b.phi);
    const double th_b = inner_h(b.theta, b.theta);
    const double th_a = inner_h(a.theta, a.theta);
    const double phi_b_v = inner_v(b.phi, b.phi);

    EnergyStep e;
    e.lhs = 0.5 * th_b - 0.5 * th_a + 0.5 * inner_h(dtheta, dtheta) +
            h * gradient_form(b.theta, b.theta) + 0.25 * ell2 * inner_h(dphi, dphi) / h +
            0.5 * ell2 * phi_b_v - 0.5 * ell2 * inner_v(a.phi, a.phi) +
            0.5 * ell2 * inner_v(dphi, dphi) + ell2 * (beta_next - beta_prev);
    const Field& f = traj.theta_source[n];
    e.rhs = 0.5 * h * inner_h(f, f) + 1.5 * h * th_b + h * ell2 * ell2 * th_a +
            2.0 * (lip * lip + 1.0) * ell2 * h * phi_b_v;
    out.push_back(e);
    beta_prev = beta_next;
  }
  return out;
}

NormReport apriori_report(const Trajectory& traj) {
  const SchemeParams& prm = traj.params;
  const double h = traj.h();
  if (!(h < estimate_threshold(prm.potential))) {
    throw PreconditionError("apriori_report: h = " + std::to_string(h) +
                            " is not below h1 = " + std::to_string(estimate_threshold(prm.potential)));
  }
  const double eps = prm.solve.eps.resolve(h);
  const Grid& grid = traj.grid();

  NormReport r;
  double theta_v = 0.0, dt_theta = 0.0, dt_phi = 0.0, xi_sq = 0.0, lap_theta = 0.0, lap_phi = 0.0;
  for (int n = 0; n < traj.steps(); ++n) {
    const State& a = traj.states[n];
    const State& b = traj.states[n + 1];
    r.linf_h_theta_bar = std::max(r.linf_h_theta_bar, norm_h(b.theta));
    r.linf_v_phi_bar = std::max(r.linf_v_phi_bar, norm_v(b.phi));
    theta_v += h * inner_v(b.theta, b.theta);
    const Field dtheta = b.theta - a.theta;
    const Field dphi = b.phi - a.phi;
    dt_theta += inner_h(dtheta, dtheta) / h;
    dt_phi += inner_h(dphi, dphi) / h;
    if (b.xi) xi_sq += h * inner_h(*b.xi, *b.xi);
    const Field lt = neumann_laplacian(b.theta);
    const Field lp = neumann_laplacian(b.phi);
    lap_theta += h * inner_h(lt, lt);
    lap_phi += h * inner_h(lp, lp);
    r.l1_linf_betahat_phi_bar =
        std::max(r.l1_linf_betahat_phi_bar, envelope_integral(prm.potential, eps, b.phi));

    double band = 0.0, total = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      if (std::isinf(beta_hat(prm.potential, b.phi[k]))) ++r.betahat_infeasible_count;
      const double e = grid.weight(k) * (b.theta[k] * b.theta[k] + b.phi[k] * b.phi[k]);
      total += e;
      if (in_boundary_band(grid, k)) band += e;
    }
    if (total > 0.0) r.boundary_layer_fraction = std::max(r.boundary_layer_fraction, band / total);
  }
  r.l2_v_theta_bar = std::sqrt(theta_v);
  r.l2_h_dt_theta_hat = std::sqrt(dt_theta);
  r.l2_h_dt_phi_hat = std::sqrt(dt_phi);
  r.l2_h_xi_bar = std::sqrt(xi_sq);
  r.l2_h_lap_theta_bar = std::sqrt(lap_theta);
  r.l2_h_lap_phi_bar = std::sqrt(lap_phi);

  if (traj.phase_source.empty()) {
    r.energy_violation = 0.0;
    for (const EnergyStep& e : energy_inequality(traj)) {
      r.energy_violation = std::max(r.energy_violation, e.violation());
    }
  } else {
    r.energy_violation = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

ErrorReport error_report(const Trajectory& coarse, const Trajectory& reference) {
  require_same_grid(coarse.grid(), reference.grid(), "error_report");
  const double Tc = coarse.params.T;
  const double Tr = reference.params.T;
  if (std::abs(Tc - Tr) > 1e-12 * std::max(Tc, Tr)) {
    throw PreconditionError("error_report: trajectories have different final times");
  }
  const int nc = coarse.steps();
  const int nr = reference.steps();
  if (nc < 1 || nr % nc != 0) {
    throw PreconditionError("error_report: reference N = " + std::to_string(nr) +
                            " is not a multiple of coarse N = " + std::to_string(nc));
  }
  if (coarse.params.ell != reference.params.ell) {
    throw PreconditionError("error_report: trajectories use different ell");
  }
  const int ratio = nr / nc;
  const double ell = coarse.params.ell;
  const double hr = reference.h();

  ErrorReport r;
  auto hat_coarse = [&](int j, auto member) {
    const int n = j / ratio;
    const int m = j % ratio;
    if (m == 0) return coarse.states[n].*member;
    const double s = static_cast<double>(m) / ratio;
    Field out = coarse.states[n].*member;
    out *= 1.0 - s;
    out.axpy(s, coarse.states[n + 1].*member);
    return out;
  };

  for (int j = 0; j <= nr; ++j) {
    const Field dphi = hat_coarse(j, &State::phi) - reference.states[j].phi;
    const Field dtheta = hat_coarse(j, &State::theta) - reference.states[j].theta;
    Field combo = dtheta;
    combo.axpy(ell, dphi);
    r.e_phi_linf_h = std::max(r.e_phi_linf_h, norm_h(dphi));
    r.e_theta_linf_h = std::max(r.e_theta_linf_h, norm_h(dtheta));
    r.e_combo_linf_h = std::max(r.e_combo_linf_h, norm_h(combo));
  }

  // bar coarse is constant on each fine interval, the reference hat linear:
  // int_0^1 ||(1-s) d0 + s d1||^2 ds = (||d0||^2 + (d0,d1) + ||d1||^2) / 3
  double phi_v = 0.0, theta_v = 0.0;
  for (int j = 0; j < nr; ++j) {
    const int n = j / ratio;
    const State& bar = coarse.states[n + 1];
    const Field p0 = bar.phi - reference.states[j].phi;
    const Field p1 = bar.phi - reference.states[j + 1].phi;
    const Field t0 = bar.theta - reference.states[j].theta;
    const Field t1 = bar.theta - reference.states[j + 1].theta;
    phi_v += hr / 3.0 * (inner_v(p0, p0) + inner_v(p0, p1) + inner_v(p1, p1));
    theta_v += hr / 3.0 * (inner_v(t0, t0) + inner_v(t0, t1) + inner_v(t1, t1));
  }
  r.e_phi_l2_v = std::sqrt(std::max(phi_v, 0.0));
  r.e_theta_l2_v = std::sqrt(std::max(theta_v, 0.0));
  return r;
}

double source_average_error(const SourceSpec& f, const Grid& grid, double T, double h) {
  const int N = steps_for(T, h);
  const double step = T / N;
  const std::vector<Field> avg = average_source(f, grid, T, N);
  double sum = 0.0;
  for (int k = 0; k < N; ++k) {
    const double mid = (k + 0.5) * step;
    for (std::size_t q = 0; q < GaussLegendre5::nodes.size(); ++q) {
      const double t = mid + 0.5 * step * GaussLegendre5::nodes[q];
      const Field diff = avg[k] - f.sample(grid, t);
      sum += 0.5 * step * GaussLegendre5::weights[q] * inner_h(diff, diff);
    }
  }
  return std::sqrt(sum);
}

double source_average_bound(const SourceSpec& f, const Grid& grid, double T, double h) {
  constexpr int kIntervals = 4096;
  const double step = T / kIntervals;
  double linf = std::max(norm_h(f.sample(grid, 0.0)), norm_h(f.sample(grid, T)));
  double l1_dt = 0.0;
  for (int k = 0; k < kIntervals; ++k) {
    const double mid = (k + 0.5) * step;
    for (std::size_t q = 0; q < GaussLegendre5::nodes.size(); ++q) {
      const double t = mid + 0.5 * step * GaussLegendre5::nodes[q];
      linf = std::max(linf, norm_h(f.sample(grid, t)));
      l1_dt += 0.5 * step * GaussLegendre5::weights[q] * norm_h(f.sample_time_derivative(grid, t));
    }
  }
  return std::sqrt(2.0 * linf * l1_dt * h);
}

double loglog_slope(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) {
    throw PreconditionError("loglog_slope: need at least two matching samples");
  }
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0.0) || !(err[i] > 0.0)) {
      throw PreconditionError("loglog_slope: samples must be positive");
    }
    mx += std::log(h[i]) / n;
    my += std::log(err[i]) / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double dx = std::log(h[i]) - mx;
    sxy += dx * (std::log(err[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double discrete_gronwall_bound(double c, double h, int m) {
  return c * std::pow(1.0 + c * h, m);
}

}  // namespace caginalp
