#pragma once

#include <string>
#include <vector>

#include "caginalp/grid.hpp"
#include "caginalp/stepper.hpp"

namespace caginalp {

/// Hat: piecewise linear through the levels. Bar: theta_{n+1} on
/// (nh, (n+1)h], left-continuous. Underline: theta_n on [nh, (n+1)h),
/// right-continuous.
enum class InterpolantKind { Hat, Bar, Underline };
enum class Component { Theta, Phi, Xi };

/// Read-only time reconstruction of one component of a trajectory. Xi is
/// only available as Bar.
class InterpolantView {
 public:
  InterpolantView(const Trajectory& traj, InterpolantKind kind, Component component);

  /// Throws PreconditionError for t outside [0, T].
  Field eval(double t) const;

  InterpolantKind kind() const noexcept { return kind_; }
  Component component() const noexcept { return component_; }

 private:
  const Field& level(int n) const;

  const Trajectory* traj_;
  InterpolantKind kind_;
  Component component_;
};

/// Both sides of one interpolant identity or inequality.
struct IdentityCheck {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool equality = true;  ///< false: lhs <= rhs is asserted

  /// |lhs - rhs| / max(|lhs|, |rhs|) for equalities, relative excess of lhs
  /// over rhs for inequalities; 0 when both sides vanish.
  double relative_defect() const;
  bool holds(double tolerance) const { return relative_defect() <= tolerance; }
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;

  bool all_hold(double tolerance) const;
  double worst_defect() const;
};

/// Evaluates, with closed-form per-interval time integrals:
///   ||hat u||^2_{L2H} <= h ||u_0||^2_H + 2 ||bar u||^2_{L2H}   (u = theta, phi)
///   ||hat u||_{LinfV} = max{||u_0||_V, ||bar u||_{LinfV}}
///   ||bar u - hat u||^2_{L2H} = (h^2/3) ||d_t hat u||^2_{L2H}
IdentityReport check_identities(const Trajectory& traj);

}  // namespace caginalp
