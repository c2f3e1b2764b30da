#include "imcf/diffgeo.hpp"

#include <algorithm>
#include <cmath>

#include "imcf/generators.hpp"

namespace imcf {
namespace {

constexpr PlanarPoint kI{0.0, 1.0};

double inner(PlanarPoint a, PlanarPoint b) {
  return a.real() * b.real() + a.imag() * b.imag();
}

// |x'|^2 rebuilt from positions alone; shared by the numeric cusp finder.
double speed_squared_fd(const SolitonParams& params, Branch branch, double theta, double h,
                        const Tolerances& tol) {
  const PlanarPoint p = eval_branch(params, branch, theta + h, tol);
  const PlanarPoint m = eval_branch(params, branch, theta - h, tol);
  return std::norm((p - m) / (2.0 * h));
}

}  // namespace

CurveSample sample_from_jet(const SolitonParams& params, double theta, PlanarPoint x,
                            PlanarPoint dx, PlanarPoint ddx, SolitonLaw law,
                            const Tolerances& tol) {
  const double speed = std::abs(dx);
  if (!(speed > tol.speed_floor))
    throw SingularityError("|x'| below tolerance: too close to a cusp");

  CurveSample s;
  s.theta = theta;
  s.position = x;
  s.tangent = dx / speed;
  s.normal = kI * s.tangent;
  s.curvature = (std::conj(dx) * ddx).imag() / (speed * speed * speed);
  if (std::abs(s.curvature) < tol.curvature_floor)
    throw SingularityError("|k| below tolerance: 1/k overflows");
  s.tau = inner(x, s.tangent);
  s.nu = inner(x, s.normal);
  s.residual = law == SolitonLaw::Translation
                   ? s.tangent.real() + 1.0 / s.curvature
                   : params.c * s.tau - params.d * s.nu - 1.0 / s.curvature;
  return s;
}

CurveSample frenet_at(const SolitonParams& params, Branch branch, double theta, DerivMode mode,
                      const Tolerances& tol) {
  const PlanarPoint x = eval_branch(params, branch, theta, tol);
  PlanarPoint dx, ddx;
  if (mode == DerivMode::Analytic) {
    dx = eval_branch_derivative(params, branch, theta, tol);
    ddx = eval_branch_second_derivative(params, branch, theta, tol);
  } else {
    const double h = tol.fd_step;
    const PlanarPoint p = eval_branch(params, branch, theta + h, tol);
    const PlanarPoint m = eval_branch(params, branch, theta - h, tol);
    dx = (p - m) / (2.0 * h);
    ddx = (p - 2.0 * x + m) / (h * h);
  }
  const SolitonLaw law = branch == Branch::TranslatingCycloid ? SolitonLaw::Translation
                                                              : SolitonLaw::RotationScaling;
  return sample_from_jet(params, theta, x, dx, ddx, law, tol);
}

SampledCurve sample_branch(const SolitonParams& params, Branch branch, double theta_min,
                           double theta_max, int samples, DerivMode mode, const Tolerances& tol) {
  if (!(theta_min < theta_max)) throw NonFiniteError("empty theta window");
  if (samples < 2) throw NonFiniteError("need at least two samples");

  SampledCurve curve;
  curve.params = params;
  curve.branch = branch;
  curve.cusps = cusp_locations_closed_form(params, branch, theta_min, theta_max, tol);

  for (int i = 0; i < samples; ++i) {
    const double theta = theta_min + (theta_max - theta_min) * i / (samples - 1);
    const bool near_cusp =
        std::any_of(curve.cusps.begin(), curve.cusps.end(),
                    [&](double cusp) { return std::abs(theta - cusp) < tol.cusp_exclusion; });
    if (near_cusp) continue;
    curve.theta_grid.push_back(theta);
    curve.samples.push_back(frenet_at(params, branch, theta, mode, tol));
  }
  return curve;
}

ResidualProfile residual_profile(const SampledCurve& curve) {
  if (curve.samples.empty()) throw Error("residual profile of an empty curve");
  ResidualProfile profile;
  profile.per_sample.reserve(curve.samples.size());
  for (const CurveSample& s : curve.samples) {
    profile.per_sample.push_back(s.residual);
    profile.max_abs_residual = std::max(profile.max_abs_residual, std::abs(s.residual));
  }
  return profile;
}

std::vector<double> find_cusps_numeric(const SolitonParams& params, Branch branch,
                                       double theta_min, double theta_max, int grid,
                                       const Tolerances& tol) {
  if (!(theta_min < theta_max)) throw NonFiniteError("empty theta window");
  if (grid < 16) throw NonFiniteError("grid too coarse");

  const double h = tol.fd_step;
  auto g = [&](double theta) { return speed_squared_fd(params, branch, theta, h, tol); };

  std::vector<double> values(grid);
  for (int i = 0; i < grid; ++i)
    values[i] = g(theta_min + (theta_max - theta_min) * i / (grid - 1));

  std::vector<double> cusps;
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 1; i + 1 < grid; ++i) {
    if (!(values[i] < values[i - 1] && values[i] <= values[i + 1])) continue;

    // golden-section refinement of the bracketed minimum
    double a = theta_min + (theta_max - theta_min) * (i - 1) / (grid - 1);
    double b = theta_min + (theta_max - theta_min) * (i + 1) / (grid - 1);
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > 1e-12) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - golden * (b - a);
        f1 = g(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + golden * (b - a);
        f2 = g(x2);
      }
    }
    const double theta_star = 0.5 * (a + b);

    // keep only minima that are negligible against the local speed scale
    const double probe = std::min(0.1, 0.1 * (theta_max - theta_min));
    const double scale2 =
        std::max({g(std::max(theta_min, theta_star - probe)),
                  g(std::min(theta_max, theta_star + probe)), 1e-300});
    if (g(theta_star) <= 1e-10 * scale2) {
      if (cusps.empty() || theta_star - cusps.back() > 1e-6) cusps.push_back(theta_star);
    }
  }
  return cusps;
}

}  // namespace imcf
