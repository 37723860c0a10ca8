#include "caginalp/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "caginalp/error.hpp"

namespace caginalp {

namespace {

constexpr int kResolventMaxIter = 200;
constexpr double kResolventTol = 1e-14;

// Safeguarded Newton on an increasing scalar function with f(lo) <= 0 <= f(hi).
template <class Fn, class Slope>
double monotone_root(Fn f, Slope df, double lo, double hi, double guess) {
  double u = std::clamp(guess, lo, hi);
  std::vector<double> history;
  for (int it = 0; it < kResolventMaxIter; ++it) {
    const double fu = f(u);
    if (fu == 0.0) return u;
    if (fu < 0.0) {
      lo = u;
    } else {
      hi = u;
    }
    double next = u - fu / df(u);
    if (!(next > lo && next < hi)) next = lo + 0.5 * (hi - lo);
    if (std::abs(next - u) <= kResolventTol || hi - lo <= kResolventTol) return next;
    // bracket collapsed to adjacent doubles
    if (next == u || next == lo || next == hi) return next;
    u = next;
    if (history.size() < 16) history.push_back(std::abs(fu));
  }
  history.push_back(std::abs(f(u)));
  throw ConvergenceError("resolvent: scalar root-find did not converge, residual " +
                             std::to_string(history.back()),
                         std::move(history));
}

double log_beta(double u) { return std::log1p(u) - std::log1p(-u); }
double log_beta_slope(double u) { return 2.0 / ((1.0 - u) * (1.0 + u)); }

}  // namespace

Potential Potential::regular() { return Potential(PotentialKind::Regular, 0.0); }

Potential Potential::logarithmic(double c1) {
  if (!(c1 > 1.0)) throw PreconditionError("logarithmic potential needs c1 > 1");
  return Potential(PotentialKind::Logarithmic, c1);
}

Potential Potential::double_obstacle(double c2) {
  if (!(c2 > 0.0)) throw PreconditionError("double obstacle potential needs c2 > 0");
  return Potential(PotentialKind::DoubleObstacle, c2);
}

double Potential::pi_lipschitz() const noexcept {
  return kind_ == PotentialKind::Regular ? 1.0 : 2.0 * coefficient_;
}

bool Potential::in_domain(double r) const noexcept {
  return kind_ == PotentialKind::Regular ? std::isfinite(r) : (r >= -1.0 && r <= 1.0);
}

double beta_hat(const Potential& p, double r) {
  switch (p.kind()) {
    case PotentialKind::Regular:
      return 0.25 * r * r * r * r;
    case PotentialKind::Logarithmic:
      if (r == 1.0 || r == -1.0) return 2.0 * std::log(2.0);
      if (r > -1.0 && r < 1.0) return (1.0 + r) * std::log1p(r) + (1.0 - r) * std::log1p(-r);
      return kInfinity;
    case PotentialKind::DoubleObstacle:
      return (r >= -1.0 && r <= 1.0) ? 0.0 : kInfinity;
  }
  return kInfinity;
}

double pi_eval(const Potential& p, double r) { return pi_slope(p, r) * r; }

double pi_hat(const Potential& p, double r) {
  if (p.kind() == PotentialKind::Regular) return 0.25 * (1.0 - 2.0 * r * r);
  return -p.coefficient() * r * r;
}

double pi_slope(const Potential& p, double /*r*/) { return -p.pi_lipschitz(); }

double resolvent(const Potential& p, double lambda, double g) {
  if (!(lambda > 0.0)) throw PreconditionError("resolvent: lambda must be positive");
  switch (p.kind()) {
    case PotentialKind::Regular: {
      if (g == 0.0) return 0.0;
      // the root lies between 0 and g
      const double lo = std::min(0.0, g);
      const double hi = std::max(0.0, g);
      return monotone_root([&](double u) { return u + lambda * u * u * u - g; },
                           [&](double u) { return 1.0 + 3.0 * lambda * u * u; }, lo, hi, g);
    }
    case PotentialKind::Logarithmic: {
      if (g == 0.0) return 0.0;
      const double edge = 1.0 - kLogBarrier;
      auto f = [&](double u) { return u + lambda * log_beta(u) - g; };
      if (f(edge) <= 0.0) return edge;
      if (f(-edge) >= 0.0) return -edge;
      const double lo = std::max(-edge, std::min(0.0, g));
      const double hi = std::min(edge, std::max(0.0, g));
      return monotone_root(f, [&](double u) { return 1.0 + lambda * log_beta_slope(u); }, lo, hi,
                           g / (1.0 + 2.0 * lambda));
    }
    case PotentialKind::DoubleObstacle:
      return std::clamp(g, -1.0, 1.0);
  }
  return g;
}

YosidaPoint yosida_point(const Potential& p, double eps, double r) {
  const double u = resolvent(p, eps, r);
  const double value = (r - u) / eps;
  double slope = 0.0;
  switch (p.kind()) {
    case PotentialKind::Regular: {
      const double d = 3.0 * u * u;
      slope = d / (1.0 + eps * d);
      break;
    }
    case PotentialKind::Logarithmic: {
      const double d = log_beta_slope(u);
      slope = d / (1.0 + eps * d);
      break;
    }
    case PotentialKind::DoubleObstacle:
      slope = (r > 1.0 || r < -1.0) ? 1.0 / eps : 0.0;
      break;
  }
  return {value, slope, u};
}

double yosida(const Potential& p, double eps, double r) {
  if (!(eps > 0.0)) throw PreconditionError("yosida: eps must be positive");
  return yosida_point(p, eps, r).value;
}

double beta_hat_envelope(const Potential& p, double eps, double r) {
  if (!(eps > 0.0)) throw PreconditionError("beta_hat_envelope: eps must be positive");
  const double u = resolvent(p, eps, r);
  return beta_hat(p, u) + (r - u) * (r - u) / (2.0 * eps);
}

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::Regular:
      return "regular";
    case PotentialKind::Logarithmic:
      return "logarithmic";
    case PotentialKind::DoubleObstacle:
      return "double_obstacle";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(std::string_view name) {
  if (name == "regular") return PotentialKind::Regular;
  if (name == "logarithmic") return PotentialKind::Logarithmic;
  if (name == "double_obstacle") return PotentialKind::DoubleObstacle;
  throw PreconditionError("unknown potential kind '" + std::string(name) + "'");
}

}  // namespace caginalp
