#pragma once
// Closed-form soliton branches with exact derivatives.
//
// Every non-cycloid branch is a sum of at most two terms of the shape
//   (A + B*theta) * exp(G*theta),   A, B, G complex,
// a family closed under d/dtheta, so first and second derivatives are
// evaluated exactly rather than numerically. The cycloid is kept in its
// trigonometric form.

#include "imcf/core.hpp"

namespace imcf {

// Curve position / first / second derivative with respect to theta.
// Throws AdmissibilityError when the branch does not belong to the regime
// of params, and RangeError when an exponent would overflow.
PlanarPoint eval_branch(const SolitonParams& params, Branch branch, double theta,
                        const Tolerances& tol = {});
PlanarPoint eval_branch_derivative(const SolitonParams& params, Branch branch, double theta,
                                   const Tolerances& tol = {});
PlanarPoint eval_branch_second_derivative(const SolitonParams& params, Branch branch,
                                          double theta, const Tolerances& tol = {});

// Cusp locations (zeros of x') inside [theta_min, theta_max], ascending.
//   CriticalGeneral:      theta = -4c / (4 + c^2)
//   OvercriticalMinus:    theta = log((1+beta^2)/(1+alpha^2)) / (alpha - beta)
//   UndercriticalGeneral: zeros of Re((1+gamma^2) e^{i K theta}),
//                         gamma = c/2 + K i, spaced pi/K
//   TranslatingCycloid:   theta in 2*pi*Z
// Smooth branches return an empty list.
std::vector<double> cusp_locations_closed_form(const SolitonParams& params, Branch branch,
                                               double theta_min, double theta_max,
                                               const Tolerances& tol = {});

// Offset that turns a soliton-with-translation into a pure soliton of the
// same (c,d): a curve moving with extra translation velocity v satisfies
// the pure equation after the shift x -> x + v/(d - ci).
PlanarPoint recenter_offset(const SolitonParams& params, PlanarPoint translation_velocity,
                            const Tolerances& tol = {});

// Cross-check of OvercriticalPlus at c = 0, d > 1 against the independently
// derived hyperbolic form
//   x_ref(theta) = (-a sinh(a theta) + i cosh(a theta)) e^{i theta},
//   a = sqrt(d-1),
// fitting one complex constant at theta = 0. Returns the maximum absolute
// gap |x_plus - fit * x_ref| over an n-point grid on [theta_min, theta_max].
double hyperbolic_form_crosscheck(double d, double theta_min, double theta_max, int n,
                                  const Tolerances& tol = {});

// Largest half-width W <= hard_limit such that max |x| over [-W, W] stays
// below magnitude_cap (probed on a coarse grid). Keeps float noise in
// residuals proportionate to the stated absolute tolerances.
double safe_theta_window(const SolitonParams& params, Branch branch, double magnitude_cap = 50.0,
                         double hard_limit = 3.0 * pi, const Tolerances& tol = {});

}  // namespace imcf
