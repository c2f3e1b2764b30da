#include "imcf/core.hpp"

#include <cmath>

namespace imcf {

std::string_view regime_name(RegimeTag tag) {
  switch (tag) {
    case RegimeTag::Undercritical: return "undercritical";
    case RegimeTag::Critical: return "critical";
    case RegimeTag::Overcritical: return "overcritical";
  }
  return "unknown";
}

Regime classify_regime(const SolitonParams& params, double regime_eps) {
  if (!std::isfinite(params.c) || !std::isfinite(params.d))
    throw NonFiniteError("soliton parameters must be finite");
  if (params.c == 0.0 && params.d == 0.0)
    throw DegenerateMotionError("(c,d) = (0,0): degenerate motion");

  Regime regime;
  regime.discriminant = params.c * params.c - 4.0 * (1.0 - params.d);
  if (std::abs(regime.discriminant) <= regime_eps) {
    regime.tag = RegimeTag::Critical;
    regime.K = 0.0;
  } else if (regime.discriminant < 0.0) {
    regime.tag = RegimeTag::Undercritical;
    regime.K = std::sqrt(1.0 - params.d - 0.25 * params.c * params.c);
  } else {
    regime.tag = RegimeTag::Overcritical;
    regime.K = std::sqrt(0.25 * params.c * params.c + params.d - 1.0);
    regime.alpha = 0.5 * params.c + regime.K;
    regime.beta = 0.5 * params.c - regime.K;
  }
  return regime;
}

std::string_view branch_name(Branch branch) {
  switch (branch) {
    case Branch::CriticalSpiral: return "critical-spiral";
    case Branch::CriticalGeneral: return "critical-general";
    case Branch::SpiralAlpha: return "spiral-alpha";
    case Branch::SpiralBeta: return "spiral-beta";
    case Branch::OvercriticalPlus: return "overcritical-plus";
    case Branch::OvercriticalMinus: return "overcritical-minus";
    case Branch::UndercriticalGeneral: return "undercritical";
    case Branch::TranslatingCycloid: return "cycloid";
  }
  return "unknown";
}

std::optional<Branch> branch_from_name(std::string_view name) {
  if (name == "critical-spiral") return Branch::CriticalSpiral;
  if (name == "critical-general") return Branch::CriticalGeneral;
  if (name == "spiral-alpha") return Branch::SpiralAlpha;
  if (name == "spiral-beta") return Branch::SpiralBeta;
  if (name == "overcritical-plus") return Branch::OvercriticalPlus;
  if (name == "overcritical-minus") return Branch::OvercriticalMinus;
  if (name == "undercritical" || name == "undercritical-general") return Branch::UndercriticalGeneral;
  if (name == "cycloid" || name == "translating-cycloid") return Branch::TranslatingCycloid;
  return std::nullopt;
}

std::vector<Branch> branches_for(const Regime& regime) {
  switch (regime.tag) {
    case RegimeTag::Critical:
      return {Branch::CriticalSpiral, Branch::CriticalGeneral};
    case RegimeTag::Overcritical:
      return {Branch::SpiralAlpha, Branch::SpiralBeta, Branch::OvercriticalPlus,
              Branch::OvercriticalMinus};
    case RegimeTag::Undercritical:
      return {Branch::UndercriticalGeneral};
  }
  return {};
}

bool branch_admissible(const Regime& regime, Branch branch) {
  if (branch == Branch::TranslatingCycloid) return true;  // ignores params
  for (Branch b : branches_for(regime))
    if (b == branch) return true;
  return false;
}

PhaseState PhaseState::from_cartesian(double tau, double nu) {
  PhaseState s;
  s.tau = tau;
  s.nu = nu;
  s.r = std::hypot(tau, nu);
  s.phi = (s.r == 0.0) ? 0.0 : std::atan2(tau, nu);
  return s;
}

PhaseState PhaseState::from_polar(double r, double phi) {
  PhaseState s;
  s.r = r;
  s.phi = phi;
  s.tau = r * std::sin(phi);
  s.nu = r * std::cos(phi);
  return s;
}

double PhaseState::consistency_defect() const {
  return std::max(std::abs(tau - r * std::sin(phi)), std::abs(nu - r * std::cos(phi)));
}

}  // namespace imcf
