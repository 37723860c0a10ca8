#pragma once

#include <limits>
#include <string_view>

namespace caginalp {

/// The three prototype double-well potentials F = beta_hat + pi_hat.
enum class PotentialKind { Regular, Logarithmic, DoubleObstacle };

/// Extended-real +infinity. beta_hat returns it outside the effective
/// domain of the singular kinds; it is a value, never an error.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Barrier offset for the logarithmic resolvent: iterates stay in
/// [-1 + kLogBarrier, 1 - kLogBarrier].
inline constexpr double kLogBarrier = 1e-13;

/// Convex part beta_hat (with maximal monotone graph beta = d beta_hat) plus
/// a Lipschitz perturbation pi = pi_hat'.
///
///   Regular         beta_hat = r^4/4,                  pi = -r
///   Logarithmic     beta_hat = (1+r)log(1+r)+(1-r)log(1-r) on [-1,1],
///                   pi = -2 c1 r,  c1 > 1
///   DoubleObstacle  beta_hat = indicator of [-1,1],    pi = -2 c2 r, c2 > 0
class Potential {
 public:
  static Potential regular();
  static Potential logarithmic(double c1 = 2.0);
  static Potential double_obstacle(double c2 = 1.0);

  PotentialKind kind() const noexcept { return kind_; }
  /// c1 for Logarithmic, c2 for DoubleObstacle, 0 for Regular.
  double coefficient() const noexcept { return coefficient_; }
  /// ||pi'||_inf.
  double pi_lipschitz() const noexcept;
  /// True when D(beta) = [-1, 1].
  bool bounded_domain() const noexcept { return kind_ != PotentialKind::Regular; }
  /// Membership in the closure of D(beta).
  bool in_domain(double r) const noexcept;

  bool operator==(const Potential&) const = default;

 private:
  Potential(PotentialKind kind, double coefficient) : kind_(kind), coefficient_(coefficient) {}

  PotentialKind kind_;
  double coefficient_;
};

double beta_hat(const Potential& p, double r);
double pi_eval(const Potential& p, double r);
double pi_hat(const Potential& p, double r);
/// pi'(r); constant for all three prototypes.
double pi_slope(const Potential& p, double r);

/// (I + lambda beta)^{-1} g. Throws ConvergenceError if the scalar solve
/// fails, PreconditionError if lambda <= 0.
double resolvent(const Potential& p, double lambda, double g);

/// Yosida approximation beta_eps(r) = (r - resolvent(eps, r)) / eps.
double yosida(const Potential& p, double eps, double r);

struct YosidaPoint {
  double value;      ///< beta_eps(r)
  double slope;      ///< a generalized derivative of beta_eps at r
  double resolvent;  ///< (I + eps beta)^{-1} r
};

/// beta_eps, its (semismooth) derivative and the resolvent from one solve.
/// For DoubleObstacle the slope is 1/eps strictly outside [-1,1] and 0 on it.
YosidaPoint yosida_point(const Potential& p, double eps, double r);

/// Moreau envelope beta_hat_eps(r) = beta_hat(J r) + (r - J r)^2 / (2 eps);
/// its derivative is beta_eps. Finite everywhere.
double beta_hat_envelope(const Potential& p, double eps, double r);

std::string_view to_string(PotentialKind kind);
/// Accepts "regular", "logarithmic", "double_obstacle". Throws
/// PreconditionError on anything else.
PotentialKind parse_potential_kind(std::string_view name);

}  // namespace caginalp
