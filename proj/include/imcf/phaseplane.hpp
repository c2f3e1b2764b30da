#pragma once
// Phase plane of the soliton equation in the (tau, nu) variables.
//
// Along a soliton, after reparametrizing arc length by s-bar with
// ds/ds-bar = c*tau - d*nu, the pair (tau, nu) obeys the linear system
//   tau' = c*tau + (1-d)*nu,
//   nu'  = -tau,
// whose matrix has eigenvalues alpha, beta in the overcritical regime; the
// eigendirections tan(phi0) = -alpha, -beta are the logarithmic spirals.
// Flow lines in polar form r(phi) (nu = r cos phi, tau = r sin phi) have the
// closed form  r = exp((c/2) theta_cd(tan phi)) / sqrt(|Q(phi)|)  with
// Q(phi) = sin^2 phi + c sin phi cos phi + (1-d) cos^2 phi, where theta_cd
// is the antiderivative of 1/(t^2 + c t + 1 - d) at t = tan phi.

#include <Eigen/Dense>

#include "imcf/core.hpp"

namespace imcf {

using PhaseVec = Eigen::Vector2d;  // (tau, nu)

// Right-hand side (c*tau + (1-d)*nu, -tau). Validates params.
PhaseVec vector_field(const SolitonParams& params, const PhaseVec& state,
                      const Tolerances& tol = {});

// The system matrix acting on (tau, nu).
Eigen::Matrix2d system_matrix(const SolitonParams& params, const Tolerances& tol = {});

// Reference solution operator exp(sbar * M) (matrix exponential).
Eigen::Matrix2d propagator(const SolitonParams& params, double sbar, const Tolerances& tol = {});

// Invariant ray angles phi0 = atan(t) for the real roots t of
// t^2 + c t + (1 - d) = 0, ascending; empty in the undercritical regime.
// Each value represents a full line (phi0 mod pi).
std::vector<double> fixed_directions(const SolitonParams& params, const Tolerances& tol = {});

// Antiderivative of 1/(t^2 + c t + (1-d)):
//   critical:      -1/(t + c/2)
//   overcritical:  -atanh((t+c/2)/K)/K   for |t+c/2| < K,
//                  -atanh(K/(t+c/2))/K   for |t+c/2| > K
//   undercritical:  atan((t+c/2)/K)/K
// Throws PoleError within tol.pole of a root of the quadratic.
double theta_cd(const SolitonParams& params, double t, const Tolerances& tol = {});

// Closed-form flow line radius at angle phi, normalized to one global
// constant per flow line. The undercritical branch of theta_cd is unwrapped
// in phi so that r is continuous across tan-poles. Throws PoleError on a
// fixed direction (critical/overcritical zone boundaries).
double r_of_phi(const SolitonParams& params, double phi, const Tolerances& tol = {});

struct PhaseTrajectory {
  SolitonParams params;
  std::vector<double> sbar_grid;
  std::vector<PhaseState> states;
};

// Classic fixed-step RK4 over [0, span]. Aborts with RangeError when the
// state magnitude passes tol.blow_up.
PhaseTrajectory integrate_trajectory(const SolitonParams& params, const PhaseState& start,
                                     double span, double step, const Tolerances& tol = {});

}  // namespace imcf
