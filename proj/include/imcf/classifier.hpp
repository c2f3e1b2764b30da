#pragma once
// Qualitative classification: shape of the undercritical solution relative
// to its comparison logarithmic spiral, and completeness/compactness/
// smoothness reports per branch.

#include "imcf/core.hpp"

namespace imcf {

// Position of the undercritical curve relative to the spiral its cusps ride
// on, decided by c^2 against -4d (equivalently K against 1):
//   Inside  : c^2 < -4d        (K > 1, arcs bend inward)
//   OnRay   : c^2 = -4d        (K = 1, cusps sit on a ray)
//   Outside : -4d < c^2 < 4(1-d) (K < 1, arcs bend outward)
enum class ShapeClass : std::uint8_t { Inside, OnRay, Outside };

std::string_view shape_class_name(ShapeClass s);

// Only defined in the undercritical regime; AdmissibilityError otherwise.
// Ties within regime_eps on c^2 + 4d count as OnRay.
ShapeClass shape_class(const SolitonParams& params, double regime_eps = Tolerances{}.regime_eps);

struct CompletenessReport {
  Branch branch = Branch::CriticalSpiral;
  bool complete = false;
  bool compact = false;
  bool smooth = false;
  // set only where the underlying analysis decides it; nullopt = not determined
  std::optional<bool> embedded;
  std::string notes;
};

// Report for one admissible branch of (c,d). AdmissibilityError when the
// branch does not belong to the regime.
CompletenessReport completeness(const SolitonParams& params, Branch branch,
                                const Tolerances& tol = {});

// Reports for every branch of the regime of (c,d), in declaration order.
// (The translating cycloid belongs to the degenerate motion; query it
// explicitly if needed.)
std::vector<CompletenessReport> completeness_all(const SolitonParams& params,
                                                 const Tolerances& tol = {});

}  // namespace imcf
