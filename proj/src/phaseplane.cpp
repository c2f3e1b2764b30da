#include "imcf/phaseplane.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace imcf {

PhaseVec vector_field(const SolitonParams& params, const PhaseVec& state, const Tolerances& tol) {
  (void)classify_regime(params, tol.regime_eps);
  return {params.c * state[0] + (1.0 - params.d) * state[1], -state[0]};
}

Eigen::Matrix2d system_matrix(const SolitonParams& params, const Tolerances& tol) {
  (void)classify_regime(params, tol.regime_eps);
  Eigen::Matrix2d m;
  m << params.c, 1.0 - params.d, -1.0, 0.0;
  return m;
}

Eigen::Matrix2d propagator(const SolitonParams& params, double sbar, const Tolerances& tol) {
  return (sbar * system_matrix(params, tol)).exp();
}

std::vector<double> fixed_directions(const SolitonParams& params, const Tolerances& tol) {
  const Regime regime = classify_regime(params, tol.regime_eps);
  switch (regime.tag) {
    case RegimeTag::Undercritical:
      return {};
    case RegimeTag::Critical:
      return {std::atan(-0.5 * params.c)};
    case RegimeTag::Overcritical: {
      // roots -c/2 +- K of the direction quadratic are -beta and -alpha
      std::vector<double> dirs{std::atan(-*regime.alpha), std::atan(-*regime.beta)};
      if (dirs[0] > dirs[1]) std::swap(dirs[0], dirs[1]);
      return dirs;
    }
  }
  return {};
}

double theta_cd(const SolitonParams& params, double t, const Tolerances& tol) {
  const Regime regime = classify_regime(params, tol.regime_eps);
  const double u = t + 0.5 * params.c;
  const double K = regime.K;
  switch (regime.tag) {
    case RegimeTag::Critical:
      if (std::abs(u) <= tol.pole) throw PoleError("theta_cd pole at t = -c/2");
      return -1.0 / u;
    case RegimeTag::Overcritical:
      if (std::abs(std::abs(u) - K) <= tol.pole)
        throw PoleError("theta_cd pole at t = -c/2 +- K");
      return std::abs(u) < K ? -std::atanh(u / K) / K : -std::atanh(K / u) / K;
    case RegimeTag::Undercritical:
      return std::atan(u / K) / K;
  }
  return 0.0;
}

double r_of_phi(const SolitonParams& params, double phi, const Tolerances& tol) {
  const Regime regime = classify_regime(params, tol.regime_eps);
  if (!std::isfinite(phi)) throw NonFiniteError("phi must be finite");

  const double s = std::sin(phi), co = std::cos(phi);
  // cos^2(phi) * (tan^2 + c tan + 1 - d): finite for every phi
  const double q = s * s + params.c * s * co + (1.0 - params.d) * co * co;
  if (std::abs(q) <= tol.pole) throw PoleError("r(phi) pole on a fixed direction");

  double theta;
  if (regime.tag == RegimeTag::Undercritical) {
    // unwrap the atan branch so theta (and r) is continuous across tan-poles
    const double u = std::tan(phi) + 0.5 * params.c;
    const double n = std::floor((phi + 0.5 * pi) / pi);
    theta = (std::atan(u / regime.K) + pi * n) / regime.K;
  } else if (std::abs(co) <= tol.pole) {
    theta = 0.0;  // both closed forms tend to 0 as |tan phi| grows
  } else {
    theta = theta_cd(params, std::tan(phi), tol);
  }
  return std::exp(0.5 * params.c * theta) / std::sqrt(std::abs(q));
}

PhaseTrajectory integrate_trajectory(const SolitonParams& params, const PhaseState& start,
                                     double span, double step, const Tolerances& tol) {
  (void)classify_regime(params, tol.regime_eps);
  if (!(span > 0.0) || !(step > 0.0)) throw NonFiniteError("span and step must be positive");

  PhaseTrajectory trajectory;
  trajectory.params = params;
  PhaseVec v{start.tau, start.nu};
  double sbar = 0.0;
  auto record = [&] {
    trajectory.sbar_grid.push_back(sbar);
    trajectory.states.push_back(PhaseState::from_cartesian(v[0], v[1]));
  };
  auto field = [&](const PhaseVec& u) {
    return PhaseVec{params.c * u[0] + (1.0 - params.d) * u[1], -u[0]};
  };
  record();
  while (sbar < span) {
    const double h = std::min(step, span - sbar);
    const PhaseVec k1 = field(v);
    const PhaseVec k2 = field(v + 0.5 * h * k1);
    const PhaseVec k3 = field(v + 0.5 * h * k2);
    const PhaseVec k4 = field(v + h * k3);
    v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    sbar += h;
    if (!v.allFinite() || v.norm() > tol.blow_up)
      throw RangeError("phase trajectory magnitude passed the blow-up guard");
    record();
  }
  return trajectory;
}

}  // namespace imcf
