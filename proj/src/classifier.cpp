#include "imcf/classifier.hpp"

#include <cmath>
#include <cstdio>

#include "imcf/generators.hpp"

namespace imcf {
namespace {

// growth magnitudes below this count as the circle
constexpr double kZeroGrowth = 1e-12;

CompletenessReport circle_report(Branch branch) {
  CompletenessReport r;
  r.branch = branch;
  r.complete = true;
  r.compact = true;
  r.smooth = true;
  r.embedded = true;
  r.notes = "the unit circle: compact, embedded, k = 1";
  return r;
}

CompletenessReport spiral_report(Branch branch, double growth) {
  if (std::abs(growth) < kZeroGrowth) return circle_report(branch);
  char grown[32];
  std::snprintf(grown, sizeof(grown), "%.6g", growth);
  CompletenessReport r;
  r.branch = branch;
  r.complete = false;  // finite arc length into the origin end
  r.compact = false;
  r.smooth = true;
  r.embedded = true;  // r = e^{a theta} is strictly monotone: no self-intersection
  r.notes = std::string("logarithmic spiral, growth ") + grown +
            "; smooth but of finite length toward the origin, hence incomplete";
  return r;
}

CompletenessReport cusped_report(Branch branch, const std::string& what) {
  CompletenessReport r;
  r.branch = branch;
  r.complete = false;
  r.compact = false;
  r.smooth = false;
  r.notes = what;
  return r;
}

}  // namespace

std::string_view shape_class_name(ShapeClass s) {
  switch (s) {
    case ShapeClass::Inside: return "inside-spiral";
    case ShapeClass::OnRay: return "on-ray";
    case ShapeClass::Outside: return "outside-spiral";
  }
  return "unknown";
}

ShapeClass shape_class(const SolitonParams& params, double regime_eps) {
  const Regime regime = classify_regime(params, regime_eps);
  if (regime.tag != RegimeTag::Undercritical)
    throw AdmissibilityError("shape class is defined for undercritical parameters only");
  const double gap = params.c * params.c + 4.0 * params.d;  // sign of c^2 - (-4d)
  if (std::abs(gap) <= regime_eps) return ShapeClass::OnRay;
  return gap < 0.0 ? ShapeClass::Inside : ShapeClass::Outside;
}

CompletenessReport completeness(const SolitonParams& params, Branch branch,
                                const Tolerances& tol) {
  const Regime regime = branch == Branch::TranslatingCycloid
                            ? Regime{}
                            : classify_regime(params, tol.regime_eps);
  if (branch != Branch::TranslatingCycloid && !branch_admissible(regime, branch))
    throw AdmissibilityError(std::string("branch ") + std::string(branch_name(branch)) +
                             " is not admissible in the " + std::string(regime_name(regime.tag)) +
                             " regime");

  switch (branch) {
    case Branch::CriticalSpiral:
      return spiral_report(branch, 0.5 * params.c);
    case Branch::SpiralAlpha:
      return spiral_report(branch, *regime.alpha);
    case Branch::SpiralBeta:
      return spiral_report(branch, *regime.beta);

    case Branch::CriticalGeneral:
      return cusped_report(branch, "one cusp at theta = -4c/(4+c^2); not complete");
    case Branch::OvercriticalMinus:
      return cusped_report(branch, "one cusp; not complete");
    case Branch::UndercriticalGeneral: {
      CompletenessReport r = cusped_report(
          branch, "infinitely many cusps spaced pi/K along a logarithmic spiral (" +
                      std::string(shape_class_name(shape_class(params, tol.regime_eps))) +
                      "); not complete");
      return r;
    }
    case Branch::TranslatingCycloid:
      return cusped_report(branch, "cusps at every multiple of 2*pi; not complete");

    case Branch::OvercriticalPlus: {
      CompletenessReport r;
      r.branch = branch;
      r.smooth = true;  // |x'| = e^{alpha theta}(1+alpha^2) + e^{beta theta}(1+beta^2) > 0
      r.compact = false;
      if (params.d > 1.0) {
        // beta < 0 < alpha: speed grows toward both ends
        r.complete = true;
        r.embedded = false;
        r.notes = "complete, non-compact, smooth; infinitely many self-intersections";
      } else if (params.d == 1.0) {
        // one growth rate vanishes; the curve limits onto a circle inward
        r.complete = true;
        r.embedded = false;
        r.notes =
            "complete, non-compact, smooth; no self-intersection but limits onto a "
            "circle going inward, hence not embedded";
      } else {
        // alpha, beta share a sign: finite arc length toward one end
        r.complete = false;
        r.notes = "smooth but of finite length toward one end, hence incomplete";
      }
      return r;
    }
  }
  throw Error("unreachable branch");
}

std::vector<CompletenessReport> completeness_all(const SolitonParams& params,
                                                 const Tolerances& tol) {
  const Regime regime = classify_regime(params, tol.regime_eps);
  std::vector<CompletenessReport> reports;
  for (Branch branch : branches_for(regime)) reports.push_back(completeness(params, branch, tol));
  return reports;
}

}  // namespace imcf
