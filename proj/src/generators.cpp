#include "imcf/generators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace imcf {
namespace {

constexpr PlanarPoint kI{0.0, 1.0};

// One summand (A + B*theta) * exp(G*theta).
struct SpiralTerm {
  PlanarPoint coeff;  // A
  PlanarPoint slope;  // B
  PlanarPoint rate;   // G
};

struct TermList {
  std::array<SpiralTerm, 2> terms{};
  int count = 0;
};

SpiralTerm differentiate(const SpiralTerm& t) {
  return {t.rate * t.coeff + t.slope, t.rate * t.slope, t.rate};
}

// Branch decomposition. The two-term branches use coefficients A = i - G0
// with rate G = G0 + i, for which d/dtheta[(i-G0)e^{(G0+i)theta}] =
// -(1+G0^2) e^{G0 theta} e^{i theta}; the derivative magnitude is then a
// single real profile times a rotation, which is what makes the cusp
// formulas exact.
TermList branch_terms(const SolitonParams& params, const Regime& regime, Branch branch) {
  const double c = params.c;
  TermList list;
  auto push = [&list](PlanarPoint a, PlanarPoint b, PlanarPoint g) {
    list.terms[list.count++] = SpiralTerm{a, b, g};
  };
  switch (branch) {
    case Branch::CriticalSpiral:
      push({1.0, 0.0}, {0.0, 0.0}, PlanarPoint{0.5 * c, 1.0});
      break;
    case Branch::CriticalGeneral:
      push({-1.0, 0.0}, PlanarPoint{-0.5 * c, 1.0}, PlanarPoint{0.5 * c, 1.0});
      break;
    case Branch::SpiralAlpha:
      push({1.0, 0.0}, {0.0, 0.0}, PlanarPoint{*regime.alpha, 1.0});
      break;
    case Branch::SpiralBeta:
      push({1.0, 0.0}, {0.0, 0.0}, PlanarPoint{*regime.beta, 1.0});
      break;
    case Branch::OvercriticalPlus:
    case Branch::OvercriticalMinus: {
      const double a = *regime.alpha, b = *regime.beta;
      const double sign = branch == Branch::OvercriticalPlus ? 1.0 : -1.0;
      push(kI - PlanarPoint{a, 0.0}, {0.0, 0.0}, PlanarPoint{a, 1.0});
      push(sign * (kI - PlanarPoint{b, 0.0}), {0.0, 0.0}, PlanarPoint{b, 1.0});
      break;
    }
    case Branch::UndercriticalGeneral: {
      const PlanarPoint g1{0.5 * c, regime.K}, g2{0.5 * c, -regime.K};
      push(kI - g1, {0.0, 0.0}, g1 + kI);
      push(kI - g2, {0.0, 0.0}, g2 + kI);
      break;
    }
    case Branch::TranslatingCycloid:
      break;  // handled in closed trigonometric form
  }
  return list;
}

Regime admissible_regime(const SolitonParams& params, Branch branch, const Tolerances& tol) {
  if (branch == Branch::TranslatingCycloid) return Regime{};
  const Regime regime = classify_regime(params, tol.regime_eps);
  if (!branch_admissible(regime, branch))
    throw AdmissibilityError(std::string("branch ") + std::string(branch_name(branch)) +
                             " is not admissible in the " + std::string(regime_name(regime.tag)) +
                             " regime");
  return regime;
}

PlanarPoint eval_terms(const TermList& list, double theta, const Tolerances& tol) {
  PlanarPoint sum{0.0, 0.0};
  for (int i = 0; i < list.count; ++i) {
    const SpiralTerm& t = list.terms[i];
    if (t.rate.real() * theta > tol.exp_clamp)
      throw RangeError("exp(G*theta) exceeds the double range");
    sum += (t.coeff + t.slope * theta) * std::exp(t.rate * theta);
  }
  return sum;
}

enum class Order { Value, First, Second };

PlanarPoint eval_cycloid(double theta, Order order) {
  switch (order) {
    case Order::Value: return 0.25 * PlanarPoint{theta - std::sin(theta), 1.0 - std::cos(theta)};
    case Order::First: return 0.25 * PlanarPoint{1.0 - std::cos(theta), std::sin(theta)};
    case Order::Second: return 0.25 * PlanarPoint{std::sin(theta), std::cos(theta)};
  }
  return {};
}

PlanarPoint eval(const SolitonParams& params, Branch branch, double theta, Order order,
                 const Tolerances& tol) {
  if (!std::isfinite(theta)) throw NonFiniteError("theta must be finite");
  if (branch == Branch::TranslatingCycloid) return eval_cycloid(theta, order);
  const Regime regime = admissible_regime(params, branch, tol);
  TermList list = branch_terms(params, regime, branch);
  if (order != Order::Value) {
    for (int i = 0; i < list.count; ++i) list.terms[i] = differentiate(list.terms[i]);
    if (order == Order::Second)
      for (int i = 0; i < list.count; ++i) list.terms[i] = differentiate(list.terms[i]);
  }
  return eval_terms(list, theta, tol);
}

}  // namespace

PlanarPoint eval_branch(const SolitonParams& params, Branch branch, double theta,
                        const Tolerances& tol) {
  return eval(params, branch, theta, Order::Value, tol);
}

PlanarPoint eval_branch_derivative(const SolitonParams& params, Branch branch, double theta,
                                   const Tolerances& tol) {
  return eval(params, branch, theta, Order::First, tol);
}

PlanarPoint eval_branch_second_derivative(const SolitonParams& params, Branch branch, double theta,
                                          const Tolerances& tol) {
  return eval(params, branch, theta, Order::Second, tol);
}

std::vector<double> cusp_locations_closed_form(const SolitonParams& params, Branch branch,
                                               double theta_min, double theta_max,
                                               const Tolerances& tol) {
  if (!(theta_min <= theta_max)) throw NonFiniteError("empty theta window");
  std::vector<double> cusps;
  auto keep = [&](double theta) {
    if (theta >= theta_min && theta <= theta_max) cusps.push_back(theta);
  };
  switch (branch) {
    case Branch::CriticalGeneral: {
      const Regime regime = admissible_regime(params, branch, tol);
      (void)regime;
      keep(-4.0 * params.c / (4.0 + params.c * params.c));
      break;
    }
    case Branch::OvercriticalMinus: {
      const Regime regime = admissible_regime(params, branch, tol);
      const double a = *regime.alpha, b = *regime.beta;
      keep(std::log((1.0 + b * b) / (1.0 + a * a)) / (a - b));
      break;
    }
    case Branch::UndercriticalGeneral: {
      const Regime regime = admissible_regime(params, branch, tol);
      // x' = -2 Re((1+gamma^2) e^{i K theta}) e^{c theta/2} e^{i theta},
      // gamma = c/2 + K i, so cusps sit where K*theta + arg(1+gamma^2)
      // is an odd multiple of pi/2.
      const double K = regime.K;
      const PlanarPoint gamma{0.5 * params.c, K};
      const double psi = std::arg(1.0 + gamma * gamma);
      const double lo = (K * theta_min - 0.5 * pi + psi) / pi;
      const double hi = (K * theta_max - 0.5 * pi + psi) / pi;
      for (long n = static_cast<long>(std::floor(lo)) - 1;
           n <= static_cast<long>(std::ceil(hi)) + 1; ++n)
        keep((0.5 * pi - psi + pi * static_cast<double>(n)) / K);
      break;
    }
    case Branch::TranslatingCycloid: {
      const double lo = theta_min / (2.0 * pi), hi = theta_max / (2.0 * pi);
      for (long n = static_cast<long>(std::floor(lo)) - 1;
           n <= static_cast<long>(std::ceil(hi)) + 1; ++n)
        keep(2.0 * pi * static_cast<double>(n));
      break;
    }
    default:
      (void)admissible_regime(params, branch, tol);  // smooth branches: validate only
      break;
  }
  std::sort(cusps.begin(), cusps.end());
  return cusps;
}

PlanarPoint recenter_offset(const SolitonParams& params, PlanarPoint translation_velocity,
                            const Tolerances& tol) {
  (void)classify_regime(params, tol.regime_eps);  // rejects (0,0) and non-finite
  return translation_velocity / PlanarPoint{params.d, -params.c};
}

double hyperbolic_form_crosscheck(double d, double theta_min, double theta_max, int n,
                                  const Tolerances& tol) {
  if (!(d > 1.0)) throw AdmissibilityError("hyperbolic form requires c = 0, d > 1");
  if (n < 2) throw NonFiniteError("need at least two grid points");
  const SolitonParams params{0.0, d};
  const double a = std::sqrt(d - 1.0);
  auto reference = [a](double theta) {
    return PlanarPoint{-a * std::sinh(a * theta), std::cosh(a * theta)} *
           std::exp(PlanarPoint{0.0, theta});
  };
  const PlanarPoint fit =
      eval_branch(params, Branch::OvercriticalPlus, 0.0, tol) / reference(0.0);
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = theta_min + (theta_max - theta_min) * i / (n - 1);
    const PlanarPoint gap =
        eval_branch(params, Branch::OvercriticalPlus, theta, tol) - fit * reference(theta);
    worst = std::max(worst, std::abs(gap));
  }
  return worst;
}

double safe_theta_window(const SolitonParams& params, Branch branch, double magnitude_cap,
                         double hard_limit, const Tolerances& tol) {
  double W = hard_limit;
  for (int iter = 0; iter < 400 && W > 1e-3; ++iter) {
    double worst = 0.0;
    bool overflow = false;
    for (int i = 0; i <= 128; ++i) {
      const double theta = -W + 2.0 * W * i / 128.0;
      try {
        worst = std::max(worst, std::abs(eval_branch(params, branch, theta, tol)));
      } catch (const RangeError&) {
        overflow = true;
        break;
      }
    }
    if (!overflow && worst <= magnitude_cap) return W;
    W *= 0.92;
  }
  return std::max(W, 1e-3);
}

}  // namespace imcf
