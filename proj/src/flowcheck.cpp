#include "imcf/flowcheck.hpp"

#include <cmath>

#include "imcf/diffgeo.hpp"

namespace imcf {
namespace {

double normal_speed_residual(const SolitonParams& params, Branch branch, double theta, double dt,
                             double rotation_sign, const Tolerances& tol) {
  if (!(dt > 0.0)) throw NonFiniteError("dt must be positive");
  const CurveSample at = frenet_at(params, branch, theta, DerivMode::Analytic, tol);

  PlanarPoint velocity;
  if (branch == Branch::TranslatingCycloid) {
    const PlanarPoint up{0.0, 1.0};
    velocity = ((at.position + dt * up) - (at.position - dt * up)) / (2.0 * dt);
  } else {
    (void)classify_regime(params, tol.regime_eps);
    const PlanarPoint rate{params.d, rotation_sign * params.c};
    velocity =
        (std::exp(rate * dt) - std::exp(-rate * dt)) * at.position / (2.0 * dt);
  }
  const double normal_speed =
      velocity.real() * at.normal.real() + velocity.imag() * at.normal.imag();
  return std::abs(normal_speed + 1.0 / at.curvature);
}

}  // namespace

PlanarPoint evolve(const SolitonParams& params, PlanarPoint point, double t,
                   const Tolerances& tol) {
  (void)classify_regime(params, tol.regime_eps);
  if (!std::isfinite(t)) throw NonFiniteError("t must be finite");
  return std::exp(PlanarPoint{params.d, params.c} * t) * point;
}

double imcf_normal_speed_residual(const SolitonParams& params, Branch branch, double theta,
                                  double dt, const Tolerances& tol) {
  return normal_speed_residual(params, branch, theta, dt, -1.0, tol);
}

double imcf_normal_speed_residual_flipped_rotation(const SolitonParams& params, Branch branch,
                                                   double theta, double dt,
                                                   const Tolerances& tol) {
  return normal_speed_residual(params, branch, theta, dt, +1.0, tol);
}

}  // namespace imcf
