#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "caginalp/grid.hpp"
#include "caginalp/source.hpp"
#include "caginalp/stepper.hpp"

namespace caginalp {

/// Discrete analogues of the quantities bounded uniformly in h by the
/// a-priori estimates, with exact piecewise-in-time quadrature.
struct NormReport {
  double linf_h_theta_bar = 0.0;          ///< max_{n>=1} ||theta_n||_H
  double l2_v_theta_bar = 0.0;            ///< (h sum_{n>=1} ||theta_n||_V^2)^{1/2}
  double l2_h_dt_theta_hat = 0.0;         ///< ||d_t hat theta||_{L2H}
  double l2_h_dt_phi_hat = 0.0;           ///< ||d_t hat phi||_{L2H}
  double linf_v_phi_bar = 0.0;            ///< max_{n>=1} ||phi_n||_V
  double l1_linf_betahat_phi_bar = 0.0;   ///< max_{n>=1} int beta_hat_eps(phi_n)
  double l2_h_xi_bar = 0.0;               ///< ||bar xi||_{L2H}
  double l2_h_lap_theta_bar = 0.0;        ///< ||Lap bar theta||_{L2H}
  double l2_h_lap_phi_bar = 0.0;          ///< ||Lap bar phi||_{L2H}

  /// max over steps of (lhs - rhs)_+ in the per-step energy inequality;
  /// NaN when the phase equation carries a forcing (inequality not derived).
  double energy_violation = 0.0;
  /// Number of (level, point) pairs where the exact beta_hat is +infinity,
  /// i.e. phi_n left [-1, 1] by the O(eps) regularization slack.
  std::size_t betahat_infeasible_count = 0;
  /// max_n of the fraction of ||theta_n||^2 + ||phi_n||^2 carried by the
  /// outer 10% band of the box; flags truncation artifacts.
  double boundary_layer_fraction = 0.0;

  static constexpr std::size_t kMonitoredCount = 9;
  /// The nine monitored norms in declaration order.
  std::vector<double> monitored() const;
  static std::span<const std::string_view> monitored_names();
};

/// Left and right sides of the per-step energy inequality obtained by
/// testing the heat equation with h theta_{n+1} and the phase equation with
/// ell^2 (phi_{n+1} - phi_n), using the Moreau envelope of beta_hat at the
/// run's eps (the convex functional whose gradient the scheme uses).
struct EnergyStep {
  double lhs = 0.0;
  double rhs = 0.0;
  double violation() const { return lhs > rhs ? lhs - rhs : 0.0; }
};

std::vector<EnergyStep> energy_inequality(const Trajectory& traj);

/// Requires h < h1 (PreconditionError otherwise).
NormReport apriori_report(const Trajectory& traj);

/// Errors of a coarse run against a same-grid fine-h reference standing in
/// for the exact solution (its hat interpolant).
struct ErrorReport {
  double e_phi_linf_h = 0.0;    ///< ||hat phi_h - phi||_{LinfH}
  double e_phi_l2_v = 0.0;      ///< ||bar phi_h - phi||_{L2V}
  double e_combo_linf_h = 0.0;  ///< ||hat theta_h - theta + ell (hat phi_h - phi)||_{LinfH}
  double e_theta_l2_v = 0.0;    ///< ||bar theta_h - theta||_{L2V}
  double e_theta_linf_h = 0.0;  ///< ||hat theta_h - theta||_{LinfH}

  std::vector<double> values() const;
  static std::span<const std::string_view> names();
};

/// Throws GridMismatchError / PreconditionError for incompatible inputs
/// (different grid or T, reference N not a multiple of coarse N).
ErrorReport error_report(const Trajectory& coarse, const Trajectory& reference);

/// ||bar f_h - f||_{L2(0,T;H)} with f_k the interval averages; the time
/// integral uses 5-point Gauss-Legendre per interval.
double source_average_error(const SourceSpec& f, const Grid& grid, double T, double h);

/// sqrt(2 ||f||_{LinfH} ||d_t f||_{L1H} h): the a-priori bound on the
/// quantity above for W^{1,1} sources. Norms are estimated on the
/// Gauss-Legendre nodes of a 4096-interval partition.
double source_average_bound(const SourceSpec& f, const Grid& grid, double T, double h);

/// Least-squares slope of log(err) against log(h).
double loglog_slope(std::span<const double> h, std::span<const double> err);

/// Discrete Gronwall: if a_m <= c + c h sum_{j<m} a_j then
/// a_m <= c (1 + c h)^m <= c exp(c m h).
double discrete_gronwall_bound(double c, double h, int m);

}  // namespace caginalp
