#pragma once
// Shared vocabulary for the planar inverse-mean-curvature-flow soliton
// library: motion parameters, regime classification, curve sample
// containers, phase-plane state, tolerances, and the error hierarchy.
//
// Conventions used throughout the library:
//   * the plane is identified with the complex numbers,
//   * T is the unit tangent, N = i*T (tangent rotated counter-clockwise),
//   * k is the signed curvature with respect to N (the unit circle
//     traversed counter-clockwise has k = +1),
//   * tau = <x, T>, nu = <x, N>,
//   * a curve is a soliton of the motion (c,d) when c*tau - d*nu = 1/k.

#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace imcf {

using PlanarPoint = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// ---------------------------------------------------------------------------
// Errors

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (c,d) = (0,0): the motion degenerates to the identity and the soliton
// equation has no meaning.
struct DegenerateMotionError : Error {
  using Error::Error;
};

// Parameter or argument is NaN/inf.
struct NonFiniteError : Error {
  using Error::Error;
};

// Branch requested for a regime it does not belong to.
struct AdmissibilityError : Error {
  using Error::Error;
};

// |x'| or |k| below tolerance: Frenet data or 1/k is not computable.
struct SingularityError : Error {
  using Error::Error;
};

// Input sits on (or too close to) a pole of theta_{c,d} / r(phi).
struct PoleError : Error {
  using Error::Error;
};

// Exponent clamp or trajectory blow-up guard tripped.
struct RangeError : Error {
  using Error::Error;
};

// Malformed CSV / config input.
struct FormatError : Error {
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Tolerances (defaults; every field can be overridden via CLI or config file)

struct Tolerances {
  double regime_eps = 1e-9;        // half-width of the critical band on c^2-4(1-d)
  double cusp_exclusion = 1e-2;    // samples closer than this to a cusp are dropped
  double residual = 1e-8;          // pass bound for |c*tau - d*nu - 1/k|
  double flow_residual = 1e-7;     // pass bound for the normal-speed law
  double fd_step = 1e-5;           // finite-difference step in theta
  double flow_dt = 1e-5;           // central-difference step in t
  double speed_floor = 1e-13;      // |x'| below this is a singularity
  double curvature_floor = 1e-13;  // |k| below this makes 1/k meaningless
  double pole = 1e-12;             // distance at which theta_{c,d} input counts as a pole
  double exp_clamp = 700.0;        // Re(G*theta) above this would overflow exp
  double blow_up = 1e150;          // phase trajectory abort threshold
  double input_consistency = 1e-8; // scaled per-row defect bound for verify --input
};

// ---------------------------------------------------------------------------
// Parameters and regimes

// Coefficients of the self-similar motion: d scales, c rotates.
struct SolitonParams {
  double c = 0.0;
  double d = 0.0;
};

enum class RegimeTag : std::uint8_t { Undercritical, Critical, Overcritical };

std::string_view regime_name(RegimeTag tag);

// Classification of (c,d) by the sign of the discriminant c^2 - 4(1-d).
//
// K is the regime's own constant:
//   undercritical: K = sqrt(1 - d - c^2/4) > 0   (cusp angular frequency)
//   critical:      K = 0
//   overcritical:  K = sqrt(c^2/4 + d - 1) > 0, with the spiral growth
//                  rates alpha = c/2 + K and beta = c/2 - K, so that
//                  alpha + beta = c and alpha*beta = 1 - d.
struct Regime {
  RegimeTag tag = RegimeTag::Critical;
  double discriminant = 0.0;
  double K = 0.0;
  std::optional<double> alpha;
  std::optional<double> beta;
};

// Validates (c,d) and classifies it. Discriminant magnitudes below
// regime_eps count as critical. Throws DegenerateMotionError on (0,0)
// and NonFiniteError on NaN/inf.
Regime classify_regime(const SolitonParams& params, double regime_eps = Tolerances{}.regime_eps);

// ---------------------------------------------------------------------------
// Solution branches

enum class Branch : std::uint8_t {
  CriticalSpiral,        // x = e^{(c/2+i)theta}
  CriticalGeneral,       // x = (-c/2+i)theta e^{(c/2+i)theta} - e^{(c/2+i)theta}
  SpiralAlpha,           // x = e^{(alpha+i)theta}
  SpiralBeta,            // x = e^{(beta+i)theta}
  OvercriticalPlus,      // x = e^{(alpha+i)theta}(i-alpha) + e^{(beta+i)theta}(i-beta)
  OvercriticalMinus,     // as above with a minus sign; one cusp
  UndercriticalGeneral,  // conjugate-exponent pair; infinitely many cusps
  TranslatingCycloid,    // x = ((theta - sin theta)/4, (1 - cos theta)/4); params ignored
};

std::string_view branch_name(Branch branch);
std::optional<Branch> branch_from_name(std::string_view name);

// Admissible non-cycloid branches of a regime, in declaration order.
std::vector<Branch> branches_for(const Regime& regime);
bool branch_admissible(const Regime& regime, Branch branch);

// ---------------------------------------------------------------------------
// Sampled curves

// One evaluated point with its Frenet frame and soliton residual.
// For TranslatingCycloid the residual stores the translation-law defect
// <(0,1), N> + 1/k instead of c*tau - d*nu - 1/k (params are ignored there).
struct CurveSample {
  double theta = 0.0;
  PlanarPoint position;
  PlanarPoint tangent;  // unit
  PlanarPoint normal;   // i * tangent
  double curvature = 0.0;
  double tau = 0.0;
  double nu = 0.0;
  double residual = 0.0;
};

struct SampledCurve {
  SolitonParams params;
  Branch branch = Branch::CriticalSpiral;
  std::vector<double> theta_grid;   // strictly increasing, cusp neighborhoods removed
  std::vector<CurveSample> samples; // same length as theta_grid
  std::vector<double> cusps;        // cusp locations inside the requested window
};

// ---------------------------------------------------------------------------
// Phase plane state (nu = r cos phi, tau = r sin phi)

struct PhaseState {
  double tau = 0.0;
  double nu = 0.0;
  double r = 0.0;
  double phi = 0.0;

  static PhaseState from_cartesian(double tau, double nu);
  static PhaseState from_polar(double r, double phi);

  // max defect between the Cartesian and polar forms
  double consistency_defect() const;
};

}  // namespace imcf
