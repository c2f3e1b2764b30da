#pragma once
// Deterministic serialization: CSV and JSON curve exports, CSV parsing for
// external verification, and structural SVG plots. All numeric text is
// locale-independent; CSV doubles carry 17 significant digits so a
// generate/parse round trip is bit-exact.

#include "imcf/core.hpp"
#include "imcf/diffgeo.hpp"
#include "imcf/phaseplane.hpp"

namespace imcf {

// ---------------------------------------------------------------------------
// Curve CSV:  `#` comment lines carry params/branch/cusps, then the exact
// header `theta,x,y,k,tau,nu,residual`.

std::string to_csv(const SampledCurve& curve);

struct CsvRow {
  double theta = 0, x = 0, y = 0, k = 0, tau = 0, nu = 0, residual = 0;
};

struct CsvCurve {
  std::optional<SolitonParams> params;  // from `# c=... d=...` when present
  std::optional<Branch> branch;
  std::vector<double> cusps;
  std::vector<CsvRow> rows;
};

// Throws FormatError on a malformed header or row.
CsvCurve parse_curve_csv(std::string_view text);

// ---------------------------------------------------------------------------
// JSON (samples mirror CurveSample field by field)

std::string to_json(const SampledCurve& curve);

// ---------------------------------------------------------------------------
// External-data verification: frame-free per-row defects.
//   residual check : law residual recomputed from the tau, nu, k columns
//   radius check   : sqrt(tau^2 + nu^2) against |x| (tau, nu are the
//                    coordinates of x in the orthonormal frame T, N)
// Defects are reported both absolutely and scaled by the row magnitude.

struct RowDefect {
  std::size_t row = 0;  // 0-based sample index
  double scaled = 0.0;
  double absolute = 0.0;
};

struct InputVerification {
  std::size_t rows = 0;
  double max_scaled_defect = 0.0;
  double max_abs_defect = 0.0;
  std::vector<RowDefect> offending;  // rows with scaled defect > tolerance
};

InputVerification verify_input_rows(const CsvCurve& curve, const SolitonParams& params,
                                    SolitonLaw law, double scaled_tolerance);

// ---------------------------------------------------------------------------
// Phase trajectory CSV: header `sbar,tau,nu,r,phi`, fixed directions in a
// `#` comment.

std::string to_csv(const PhaseTrajectory& trajectory, const std::vector<double>& fixed_dirs);
std::string to_json(const PhaseTrajectory& trajectory, const std::vector<double>& fixed_dirs);

// ---------------------------------------------------------------------------
// SVG plots. Equal aspect by construction: the viewBox is the padded data
// bounding box (y flipped) and the pixel height is width * box aspect.

struct PlotOptions {
  double width = 800.0;       // pixel width; height follows the data aspect
  double pad_fraction = 0.05; // padding around the data bounding box
  bool mark_cusps = true;     // <circle class="cusp"> at each cusp
};

std::string curve_plot_svg(const std::vector<SampledCurve>& curves,
                           const PlotOptions& options = {});

// Trajectories drawn in the (nu, tau) plane with <line class="fixed-direction">
// through the origin for each invariant angle.
std::string phase_plot_svg(const std::vector<PhaseTrajectory>& trajectories,
                           const std::vector<double>& fixed_dirs,
                           const PlotOptions& options = {});

}  // namespace imcf
