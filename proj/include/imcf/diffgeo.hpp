#pragma once
// Frenet data, soliton residuals, and numeric cusp detection.
//
// This module only consumes curve evaluations (positions and, in analytic
// mode, the exact derivative values); it shares no internal structure with
// the generators, so agreement between the two is a real check.

#include "imcf/core.hpp"

namespace imcf {

enum class DerivMode : std::uint8_t { Analytic, FiniteDifference };

// Which defining equation the residual measures.
//   RotationScaling: c*tau - d*nu - 1/k          (default)
//   Translation:     <(0,1), N> + 1/k = T_x + 1/k (cycloid)
enum class SolitonLaw : std::uint8_t { RotationScaling, Translation };

// Frenet frame, curvature, tau/nu, and residual from a raw 2-jet.
// Throws SingularityError when |x'| or |k| sits below its floor.
CurveSample sample_from_jet(const SolitonParams& params, double theta, PlanarPoint x,
                            PlanarPoint dx, PlanarPoint ddx,
                            SolitonLaw law = SolitonLaw::RotationScaling,
                            const Tolerances& tol = {});

// Sample one branch point. FiniteDifference mode rebuilds x', x'' from
// position evaluations alone with central differences of step tol.fd_step.
CurveSample frenet_at(const SolitonParams& params, Branch branch, double theta,
                      DerivMode mode = DerivMode::Analytic, const Tolerances& tol = {});

// Uniform grid over [theta_min, theta_max] with samples points; grid points
// within tol.cusp_exclusion of a closed-form cusp are dropped.
SampledCurve sample_branch(const SolitonParams& params, Branch branch, double theta_min,
                           double theta_max, int samples, DerivMode mode = DerivMode::Analytic,
                           const Tolerances& tol = {});

struct ResidualProfile {
  double max_abs_residual = 0.0;
  std::vector<double> per_sample;
};

ResidualProfile residual_profile(const SampledCurve& curve);

// All zeros of |x'|^2 inside the window: local minima of the speed are
// bracketed on a dense grid, refined by bisection on d/dtheta |x'|^2, and
// kept only when the refined speed is negligible against the local speed
// scale. Uses position evaluations only (independent of the closed-form
// cusp list).
std::vector<double> find_cusps_numeric(const SolitonParams& params, Branch branch,
                                       double theta_min, double theta_max, int grid = 8192,
                                       const Tolerances& tol = {});

}  // namespace imcf
