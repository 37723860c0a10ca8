#include "caginalp/interpolants.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "caginalp/error.hpp"

namespace caginalp {

namespace {

struct TimeLocation {
  int interval;     // n with t in [nh, (n+1)h]
  double fraction;  // (t - nh) / h
  int node;         // level index when t sits on a node, else -1
};

TimeLocation locate(double t, double h, int steps) {
  const double s = t / h;
  const double nearest = std::round(s);
  if (std::abs(s - nearest) <= 1e-12 * std::max(1.0, s)) {
    const int node = static_cast<int>(nearest);
    return {std::min(node, steps - 1), node == steps ? 1.0 : 0.0, node};
  }
  const int n = std::clamp(static_cast<int>(std::floor(s)), 0, steps - 1);
  return {n, s - n, -1};
}

// Three-point Gauss-Legendre on [0, 1]; exact for the quadratic integrands
// produced by products of piecewise-linear interpolants.
constexpr std::array<double, 3> kGauss3Nodes{0.11270166537925831148, 0.5, 0.88729833462074168852};
constexpr std::array<double, 3> kGauss3Weights{5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

const Field& component_of(const State& s, Component c) {
  switch (c) {
    case Component::Theta:
      return s.theta;
    case Component::Phi:
      return s.phi;
    case Component::Xi:
      break;
  }
  if (!s.xi) throw PreconditionError("interpolant: xi is undefined at level 0");
  return *s.xi;
}

double sq(double x) { return x * x; }

}  // namespace

InterpolantView::InterpolantView(const Trajectory& traj, InterpolantKind kind, Component component)
    : traj_(&traj), kind_(kind), component_(component) {
  if (traj.states.size() < 2) throw PreconditionError("interpolant: trajectory has no steps");
  if (component == Component::Xi && kind != InterpolantKind::Bar) {
    throw PreconditionError("interpolant: xi is only defined as a right-constant (bar) interpolant");
  }
}

const Field& InterpolantView::level(int n) const { return component_of(traj_->states[n], component_); }

Field InterpolantView::eval(double t) const {
  const double T = traj_->params.T;
  if (!(t >= 0.0 && t <= T)) throw PreconditionError("interpolant: t outside [0, T]");
  const int steps = traj_->steps();
  const TimeLocation loc = locate(t, traj_->h(), steps);
  switch (kind_) {
    case InterpolantKind::Hat: {
      if (loc.node >= 0) return level(loc.node);
      Field out = level(loc.interval);
      out *= 1.0 - loc.fraction;
      out.axpy(loc.fraction, level(loc.interval + 1));
      return out;
    }
    case InterpolantKind::Bar:
      if (loc.node >= 0) return level(std::max(loc.node, 1));
      return level(loc.interval + 1);
    case InterpolantKind::Underline:
      if (loc.node >= 0) return level(std::min(loc.node, steps - 1));
      return level(loc.interval);
  }
  return level(0);
}

double IdentityCheck::relative_defect() const {
  const double scale = std::max(std::abs(lhs), std::abs(rhs));
  if (scale == 0.0) return 0.0;
  if (equality) return std::abs(lhs - rhs) / scale;
  return std::max(0.0, lhs - rhs) / scale;
}

bool IdentityReport::all_hold(double tolerance) const {
  return std::all_of(checks.begin(), checks.end(),
                     [&](const IdentityCheck& c) { return c.holds(tolerance); });
}

double IdentityReport::worst_defect() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.relative_defect());
  return worst;
}

IdentityReport check_identities(const Trajectory& traj) {
  const int steps = traj.steps();
  if (steps < 1) throw PreconditionError("check_identities: trajectory has no steps");
  const double h = traj.h();
  IdentityReport report;

  for (Component c : {Component::Theta, Component::Phi}) {
    const std::string tag = c == Component::Theta ? "theta" : "phi";
    const InterpolantView hat(traj, InterpolantKind::Hat, c);
    const InterpolantView bar(traj, InterpolantKind::Bar, c);
    auto lvl = [&](int n) -> const Field& { return component_of(traj.states[n], c); };

    // Gauss quadrature through the views
    double hat_l2 = 0.0;
    double bar_minus_hat_l2 = 0.0;
    for (int n = 0; n < steps; ++n) {
      for (std::size_t q = 0; q < kGauss3Nodes.size(); ++q) {
        const double t = (n + kGauss3Nodes[q]) * h;
        const Field hv = hat.eval(t);
        const Field diff = bar.eval(t) - hv;
        hat_l2 += h * kGauss3Weights[q] * inner_h(hv, hv);
        bar_minus_hat_l2 += h * kGauss3Weights[q] * inner_h(diff, diff);
      }
    }

    // closed-form level sums
    double bar_l2 = 0.0;
    double dt_l2 = 0.0;
    double bar_linf_v = 0.0;
    double hat_linf_v_sq = 0.0;
    for (int n = 0; n < steps; ++n) {
      const Field& a = lvl(n);
      const Field& b = lvl(n + 1);
      const Field d = b - a;
      bar_l2 += h * inner_h(b, b);
      dt_l2 += h * inner_h(d, d) / (h * h);
      bar_linf_v = std::max(bar_linf_v, norm_v(b));
      // ||a + s d||_V^2 is convex in s: its maximum on [0, 1] is at an end
      const double aa = inner_v(a, a);
      const double ad = inner_v(a, d);
      const double dd = inner_v(d, d);
      hat_linf_v_sq = std::max({hat_linf_v_sq, aa, aa + 2.0 * ad + dd});
    }
    const double u0_h_sq = inner_h(lvl(0), lvl(0));

    report.checks.push_back(
        {"hat_" + tag + "_l2h_bound", hat_l2, h * u0_h_sq + 2.0 * bar_l2, false});
    report.checks.push_back({"hat_" + tag + "_linfv_max", std::sqrt(hat_linf_v_sq),
                             std::max(norm_v(lvl(0)), bar_linf_v), true});
    report.checks.push_back(
        {"bar_minus_hat_" + tag + "_l2h", bar_minus_hat_l2, sq(h) / 3.0 * dt_l2, true});
  }
  return report;
}

}  // namespace caginalp
