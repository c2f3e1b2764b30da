// imcf command-line tool: classify / generate / verify / phase / plot.
//
// Exit codes: 0 success (or verification pass), 1 verification failure,
// 2 usage error (bad flags, malformed input, inadmissible branch),
// 3 degenerate parameters (c = d = 0).
//
// An optional config file (--config FILE, simple key=value lines, `#`
// comments) can preload any option of the chosen subcommand, including
// every --tolerance-* value; explicit command-line flags always win.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "imcf/classifier.hpp"
#include "imcf/core.hpp"
#include "imcf/diffgeo.hpp"
#include "imcf/emit.hpp"
#include "imcf/flowcheck.hpp"
#include "imcf/generators.hpp"
#include "imcf/phaseplane.hpp"

namespace {

using namespace imcf;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_num(const std::string& text) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0') throw FormatError("not a number: '" + text + "'");
  return value;
}

bool parse_bool(const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw FormatError("not a boolean: '" + text + "'");
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::optional<std::string>& out, const std::string& text) {
  if (!out) {
    std::cout << text;
    return;
  }
  std::ofstream f(*out, std::ios::binary);
  if (!f) throw Error("cannot open output file: " + *out);
  f << text;
}

// ---------------------------------------------------------------------------
// Config file: key=value lines mapped onto the subcommand's options.
// A key is applied only when the matching flag was not given on the command
// line, so explicit flags take precedence.

std::map<std::string, std::string> load_config(const std::string& path) {
  std::map<std::string, std::string> values;
  std::istringstream in(read_file(path));
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw FormatError(path + ":" + std::to_string(number) + ": expected key=value");
    const std::string key = trim(stripped.substr(0, eq));
    if (key.empty())
      throw FormatError(path + ":" + std::to_string(number) + ": empty key");
    values[key] = trim(stripped.substr(eq + 1));
  }
  return values;
}

struct Binder {
  struct Entry {
    CLI::Option* option = nullptr;
    std::function<void(const std::string&)> set;
  };
  std::map<std::string, Entry> entries;

  void add(CLI::Option* option, const std::string& key,
           std::function<void(const std::string&)> set) {
    entries[key] = Entry{option, std::move(set)};
  }

  void apply(const std::map<std::string, std::string>& config) const {
    for (const auto& [key, value] : config) {
      const auto it = entries.find(key);
      if (it == entries.end()) throw FormatError("unknown config key: " + key);
      if (it->second.option != nullptr && it->second.option->count() > 0) continue;
      it->second.set(value);
    }
  }
};

// ---------------------------------------------------------------------------
// Shared option state (only one subcommand parses per invocation).

struct Options {
  std::optional<double> c, d;
  std::optional<std::string> branch;
  std::optional<double> theta_min, theta_max;
  int samples = 2000;
  std::string format;  // per-command default applied in the body
  std::optional<std::string> out;
  std::string mode = "analytic";
  std::optional<std::string> input;
  bool translating = false;
  bool phase_portrait = false;
  double tau0 = 0.0;
  double nu0 = -1.0;
  double span = 6.0;
  double step = 1e-3;
  double width = 800.0;
  std::optional<std::string> config_path;
  Tolerances tol;
};

void bind_optional_double(Binder& binder, CLI::Option* option, const std::string& key,
                          std::optional<double>& target) {
  binder.add(option, key, [&target](const std::string& v) { target = parse_num(v); });
}

void bind_double(Binder& binder, CLI::Option* option, const std::string& key, double& target) {
  binder.add(option, key, [&target](const std::string& v) { target = parse_num(v); });
}

void bind_string(Binder& binder, CLI::Option* option, const std::string& key,
                 std::string& target) {
  binder.add(option, key, [&target](const std::string& v) { target = v; });
}

void bind_optional_string(Binder& binder, CLI::Option* option, const std::string& key,
                          std::optional<std::string>& target) {
  binder.add(option, key, [&target](const std::string& v) { target = v; });
}

void bind_bool(Binder& binder, CLI::Option* option, const std::string& key, bool& target) {
  binder.add(option, key, [&target](const std::string& v) { target = parse_bool(v); });
}

void add_params_options(CLI::App* cmd, Options& o, Binder& b) {
  bind_optional_double(b, cmd->add_option("--c", o.c, "rotation speed c"), "c", o.c);
  bind_optional_double(b, cmd->add_option("--d", o.d, "expansion rate d"), "d", o.d);
}

void add_config_option(CLI::App* cmd, Options& o) {
  cmd->add_option("--config", o.config_path,
                  "key=value config file; explicit flags take precedence");
}

void add_tolerance_options(CLI::App* cmd, Options& o, Binder& b) {
  auto reg = [&](const char* flag, const char* key, double& field, const char* help) {
    bind_double(b, cmd->add_option(flag, field, help), key, field);
  };
  reg("--tolerance-regime-eps", "tolerance-regime-eps", o.tol.regime_eps,
      "critical band half-width on the discriminant");
  reg("--tolerance-cusp-exclusion", "tolerance-cusp-exclusion", o.tol.cusp_exclusion,
      "theta distance below which samples near a cusp are dropped");
  reg("--tolerance-residual", "tolerance-residual", o.tol.residual,
      "pass bound for |c*tau - d*nu - 1/k|");
  reg("--tolerance-flow-residual", "tolerance-flow-residual", o.tol.flow_residual,
      "pass bound for the normal-speed law");
  reg("--tolerance-fd-step", "tolerance-fd-step", o.tol.fd_step,
      "finite-difference step in theta");
  reg("--tolerance-flow-dt", "tolerance-flow-dt", o.tol.flow_dt,
      "central-difference step in t for the flow law");
  reg("--tolerance-speed-floor", "tolerance-speed-floor", o.tol.speed_floor,
      "|x'| below this is a singularity");
  reg("--tolerance-curvature-floor", "tolerance-curvature-floor", o.tol.curvature_floor,
      "|k| below this makes 1/k meaningless");
  reg("--tolerance-pole", "tolerance-pole", o.tol.pole,
      "distance at which theta_cd input counts as a pole");
  reg("--tolerance-exp-clamp", "tolerance-exp-clamp", o.tol.exp_clamp,
      "largest allowed Re(G*theta)");
  reg("--tolerance-blow-up", "tolerance-blow-up", o.tol.blow_up,
      "phase trajectory abort threshold");
  reg("--tolerance-input-consistency", "tolerance-input-consistency", o.tol.input_consistency,
      "scaled per-row defect bound for verify --input");
}

// ---------------------------------------------------------------------------
// Small shared helpers for the command bodies.

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

std::string branch_name_list() {
  std::string all;
  for (Branch b : {Branch::CriticalSpiral, Branch::CriticalGeneral, Branch::SpiralAlpha,
                   Branch::SpiralBeta, Branch::OvercriticalPlus, Branch::OvercriticalMinus,
                   Branch::UndercriticalGeneral, Branch::TranslatingCycloid}) {
    if (!all.empty()) all += ", ";
    all += std::string(branch_name(b));
  }
  return all;
}

std::string admissible_list(const Regime& regime) {
  std::string all;
  for (Branch b : branches_for(regime)) {
    if (!all.empty()) all += ", ";
    all += std::string(branch_name(b));
  }
  all += ", " + std::string(branch_name(Branch::TranslatingCycloid));
  return all;
}

// Resolves the branch string and (for non-cycloid branches) checks the
// parameters and admissibility. Returns nullopt after printing a usage
// error; the error code to return is kExitUsage.
std::optional<Branch> resolve_branch(const Options& o, bool& usage_failed) {
  usage_failed = true;
  if (!o.branch) {
    usage_error("--branch is required (one of: " + branch_name_list() + ")");
    return std::nullopt;
  }
  const std::optional<Branch> branch = branch_from_name(*o.branch);
  if (!branch) {
    usage_error("unknown branch '" + *o.branch + "' (one of: " + branch_name_list() + ")");
    return std::nullopt;
  }
  if (*branch != Branch::TranslatingCycloid) {
    if (!o.c || !o.d) {
      usage_error("--c and --d are required for branch " + std::string(branch_name(*branch)));
      return std::nullopt;
    }
    const Regime regime = classify_regime({*o.c, *o.d}, o.tol.regime_eps);
    if (!branch_admissible(regime, *branch)) {
      usage_error("branch " + std::string(branch_name(*branch)) + " is not admissible in the " +
                  std::string(regime_name(regime.tag)) + " regime; admissible branches: " +
                  admissible_list(regime));
      return std::nullopt;
    }
  }
  usage_failed = false;
  return branch;
}

struct Window {
  double lo = 0.0, hi = 0.0;
};

// Explicit window when both bounds are given, the safe auto window when
// neither is; anything else is a usage error (nullopt).
std::optional<Window> resolve_window(const Options& o, const SolitonParams& params,
                                     Branch branch) {
  if (o.theta_min && o.theta_max) {
    if (!(*o.theta_min < *o.theta_max)) {
      usage_error("--theta-min must be below --theta-max");
      return std::nullopt;
    }
    return Window{*o.theta_min, *o.theta_max};
  }
  if (o.theta_min || o.theta_max) {
    usage_error("give both --theta-min and --theta-max, or neither for the automatic window");
    return std::nullopt;
  }
  const double w = safe_theta_window(params, branch, 50.0, 3.0 * pi, o.tol);
  return Window{-w, w};
}

SolitonParams params_of(const Options& o) {
  return SolitonParams{o.c.value_or(0.0), o.d.value_or(0.0)};
}

// ---------------------------------------------------------------------------
// classify

nlohmann::json report_to_json(const CompletenessReport& r) {
  nlohmann::json j = {{"branch", std::string(branch_name(r.branch))},
                      {"complete", r.complete},
                      {"compact", r.compact},
                      {"smooth", r.smooth},
                      {"notes", r.notes}};
  if (r.embedded)
    j["embedded"] = *r.embedded;
  else
    j["embedded"] = nullptr;
  return j;
}

int cmd_classify(const Options& o) {
  if (!o.c || !o.d) return usage_error("classify requires --c and --d");
  const std::string format = o.format.empty() ? "text" : o.format;
  if (format != "text" && format != "json")
    return usage_error("classify --format must be text or json");

  const SolitonParams params{*o.c, *o.d};
  const Regime regime = classify_regime(params, o.tol.regime_eps);
  const std::vector<CompletenessReport> reports = completeness_all(params, o.tol);
  std::optional<ShapeClass> shape;
  if (regime.tag == RegimeTag::Undercritical) shape = shape_class(params, o.tol.regime_eps);

  std::string text;
  if (format == "json") {
    nlohmann::json j;
    j["params"] = {{"c", params.c}, {"d", params.d}};
    j["regime"] = std::string(regime_name(regime.tag));
    j["discriminant"] = regime.discriminant;
    j["K"] = regime.K;
    if (regime.alpha) j["alpha"] = *regime.alpha;
    if (regime.beta) j["beta"] = *regime.beta;
    if (shape) j["shape_class"] = std::string(shape_class_name(*shape));
    j["branches"] = nlohmann::json::array();
    for (const CompletenessReport& r : reports) j["branches"].push_back(report_to_json(r));
    text = j.dump(2) + "\n";
  } else {
    text += "c: " + num17(params.c) + "\n";
    text += "d: " + num17(params.d) + "\n";
    text += "regime: " + std::string(regime_name(regime.tag)) + "\n";
    text += "discriminant: " + num17(regime.discriminant) + "\n";
    text += "K: " + num17(regime.K) + "\n";
    if (regime.alpha) text += "alpha: " + num17(*regime.alpha) + "\n";
    if (regime.beta) text += "beta: " + num17(*regime.beta) + "\n";
    if (shape) text += "shape-class: " + std::string(shape_class_name(*shape)) + "\n";
    for (const CompletenessReport& r : reports) {
      text += "branch " + std::string(branch_name(r.branch)) + ":";
      text += std::string(" smooth=") + (r.smooth ? "yes" : "no");
      text += std::string(" complete=") + (r.complete ? "yes" : "no");
      text += std::string(" compact=") + (r.compact ? "yes" : "no");
      text += " embedded=";
      text += r.embedded ? (*r.embedded ? "yes" : "no") : "undetermined";
      text += "  (" + r.notes + ")\n";
    }
  }
  write_output(o.out, text);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// generate

int cmd_generate(const Options& o) {
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "json")
    return usage_error("generate --format must be csv or json");
  if (o.samples < 2) return usage_error("--samples must be at least 2");
  if (o.mode != "analytic" && o.mode != "fd")
    return usage_error("--mode must be analytic or fd");

  bool usage_failed = false;
  const std::optional<Branch> branch = resolve_branch(o, usage_failed);
  if (!branch) return kExitUsage;

  const SolitonParams params = params_of(o);
  const std::optional<Window> window = resolve_window(o, params, *branch);
  if (!window) return kExitUsage;

  const DerivMode mode = o.mode == "fd" ? DerivMode::FiniteDifference : DerivMode::Analytic;
  const SampledCurve curve =
      sample_branch(params, *branch, window->lo, window->hi, o.samples, mode, o.tol);
  write_output(o.out, format == "csv" ? to_csv(curve) : to_json(curve));
  return kExitPass;
}

// ---------------------------------------------------------------------------
// verify

// Numeric-vs-closed-form cusp agreement is only meaningful away from the
// window edges (the numeric finder needs an interior bracket), so both
// lists are compared on a slightly shrunken window.
struct CuspComparison {
  std::vector<double> expected, found;
  bool counts_match = false;
  double max_gap = 0.0;
};

CuspComparison compare_cusps(const SolitonParams& params, Branch branch, const Window& w,
                             const Tolerances& tol) {
  constexpr int kGrid = 8192;
  const double margin = 2.0 * (w.hi - w.lo) / (kGrid - 1);
  auto interior = [&](const std::vector<double>& list) {
    std::vector<double> kept;
    for (double t : list)
      if (t >= w.lo + margin && t <= w.hi - margin) kept.push_back(t);
    return kept;
  };

  CuspComparison cmp;
  cmp.expected = interior(cusp_locations_closed_form(params, branch, w.lo, w.hi, tol));
  cmp.found = interior(find_cusps_numeric(params, branch, w.lo, w.hi, kGrid, tol));
  cmp.counts_match = cmp.expected.size() == cmp.found.size();
  if (cmp.counts_match)
    for (std::size_t i = 0; i < cmp.expected.size(); ++i)
      cmp.max_gap = std::max(cmp.max_gap, std::abs(cmp.expected[i] - cmp.found[i]));
  return cmp;
}

int cmd_verify_branches(const Options& o) {
  if (!o.c || !o.d) {
    if (!o.branch || *o.branch != std::string(branch_name(Branch::TranslatingCycloid)))
      return usage_error("verify requires --c and --d (or --input FILE)");
  }
  constexpr double kCuspGapTolerance = 1e-6;

  const SolitonParams params = params_of(o);
  std::vector<Branch> branches;
  if (o.branch) {
    bool usage_failed = false;
    const std::optional<Branch> branch = resolve_branch(o, usage_failed);
    if (!branch) return kExitUsage;
    branches.push_back(*branch);
  } else {
    branches = branches_for(classify_regime(params, o.tol.regime_eps));
  }

  nlohmann::json results = nlohmann::json::array();
  double max_residual = 0.0, max_flow_residual = 0.0;
  std::size_t total_expected = 0, total_found = 0;
  bool pass = true;

  for (Branch branch : branches) {
    const std::optional<Window> window = resolve_window(o, params, branch);
    if (!window) return kExitUsage;

    const SampledCurve curve = sample_branch(params, branch, window->lo, window->hi,
                                             o.samples, DerivMode::Analytic, o.tol);
    const ResidualProfile profile = residual_profile(curve);

    double flow = 0.0;
    for (double theta : curve.theta_grid)
      flow = std::max(flow,
                      imcf_normal_speed_residual(params, branch, theta, o.tol.flow_dt, o.tol));

    const CuspComparison cusps = compare_cusps(params, branch, *window, o.tol);

    const bool branch_pass = profile.max_abs_residual < o.tol.residual &&
                             flow < o.tol.flow_residual && cusps.counts_match &&
                             cusps.max_gap <= kCuspGapTolerance;
    pass = pass && branch_pass;
    max_residual = std::max(max_residual, profile.max_abs_residual);
    max_flow_residual = std::max(max_flow_residual, flow);
    total_expected += cusps.expected.size();
    total_found += cusps.found.size();

    results.push_back({{"branch", std::string(branch_name(branch))},
                       {"theta_min", window->lo},
                       {"theta_max", window->hi},
                       {"samples_kept", curve.samples.size()},
                       {"max_residual", profile.max_abs_residual},
                       {"max_flow_residual", flow},
                       {"cusps_expected", cusps.expected},
                       {"cusps_found", cusps.found},
                       {"cusp_max_gap", cusps.max_gap},
                       {"pass", branch_pass}});
  }

  nlohmann::json verdict;
  verdict["mode"] = "branch";
  verdict["params"] = {{"c", params.c}, {"d", params.d}};
  verdict["max_residual"] = max_residual;
  verdict["max_flow_residual"] = max_flow_residual;
  verdict["cusps_expected"] = total_expected;
  verdict["cusps_found"] = total_found;
  verdict["results"] = results;
  verdict["pass"] = pass;
  write_output(o.out, verdict.dump(2) + "\n");
  return pass ? kExitPass : kExitVerifyFail;
}

int cmd_verify_input(const Options& o) {
  const CsvCurve curve = parse_curve_csv(read_file(*o.input));

  const bool translation =
      o.translating || (curve.branch && *curve.branch == Branch::TranslatingCycloid);
  const SolitonLaw law = translation ? SolitonLaw::Translation : SolitonLaw::RotationScaling;

  SolitonParams params{0.0, 0.0};
  if (o.c && o.d) {
    params = {*o.c, *o.d};
  } else if (curve.params) {
    params = *curve.params;
  } else if (!translation) {
    return usage_error(
        "the motion is unknown: give --c and --d, or an input file with `# c=... d=...`");
  }

  const InputVerification v = verify_input_rows(curve, params, law, o.tol.input_consistency);
  const bool pass = v.offending.empty() && v.rows > 0;

  nlohmann::json offending = nlohmann::json::array();
  for (const RowDefect& defect : v.offending)
    offending.push_back(
        {{"row", defect.row}, {"scaled", defect.scaled}, {"absolute", defect.absolute}});

  nlohmann::json verdict;
  verdict["mode"] = "input";
  verdict["law"] = translation ? "translation" : "rotation-scaling";
  verdict["params"] = {{"c", params.c}, {"d", params.d}};
  verdict["rows"] = v.rows;
  verdict["max_scaled_defect"] = v.max_scaled_defect;
  verdict["max_abs_defect"] = v.max_abs_defect;
  verdict["offending"] = offending;
  verdict["pass"] = pass;
  write_output(o.out, verdict.dump(2) + "\n");
  return pass ? kExitPass : kExitVerifyFail;
}

int cmd_verify(const Options& o) {
  if (o.input) return cmd_verify_input(o);
  return cmd_verify_branches(o);
}

// ---------------------------------------------------------------------------
// phase

int cmd_phase(const Options& o) {
  if (!o.c || !o.d) return usage_error("phase requires --c and --d");
  const std::string format = o.format.empty() ? "csv" : o.format;
  if (format != "csv" && format != "json")
    return usage_error("phase --format must be csv or json");
  if (!(o.span > 0.0) || !(o.step > 0.0))
    return usage_error("--span and --step must be positive");

  const SolitonParams params{*o.c, *o.d};
  const PhaseState start = PhaseState::from_cartesian(o.tau0, o.nu0);
  const PhaseTrajectory trajectory = integrate_trajectory(params, start, o.span, o.step, o.tol);
  const std::vector<double> dirs = fixed_directions(params, o.tol);
  write_output(o.out, format == "csv" ? to_csv(trajectory, dirs) : to_json(trajectory, dirs));
  return kExitPass;
}

// ---------------------------------------------------------------------------
// plot

int cmd_plot_phase(const Options& o) {
  if (!o.c || !o.d) return usage_error("plot --phase requires --c and --d");
  const SolitonParams params{*o.c, *o.d};
  const double span = o.span;
  const double step = std::min(o.step, 1e-2);

  std::vector<PhaseTrajectory> trajectories;
  for (double radius : {1.0, 0.05}) {
    for (int i = 0; i < 8; ++i) {
      const double phi = pi / 8.0 + i * pi / 4.0;
      try {
        trajectories.push_back(integrate_trajectory(
            params, PhaseState::from_polar(radius, phi), span, step, o.tol));
      } catch (const RangeError&) {
        // seed blows past the guard before the span ends; drop it
      }
    }
  }
  const std::vector<double> dirs = fixed_directions(params, o.tol);
  PlotOptions plot;
  plot.width = o.width;
  write_output(o.out, phase_plot_svg(trajectories, dirs, plot));
  return kExitPass;
}

int cmd_plot(const Options& o) {
  if (o.phase_portrait) return cmd_plot_phase(o);
  if (o.samples < 2) return usage_error("--samples must be at least 2");

  std::vector<Branch> branches;
  SolitonParams params = params_of(o);
  if (o.branch) {
    bool usage_failed = false;
    const std::optional<Branch> branch = resolve_branch(o, usage_failed);
    if (!branch) return kExitUsage;
    branches.push_back(*branch);
  } else {
    if (!o.c || !o.d) return usage_error("plot requires --c and --d (or --branch cycloid)");
    branches = branches_for(classify_regime(params, o.tol.regime_eps));
  }

  std::vector<SampledCurve> curves;
  for (Branch branch : branches) {
    const std::optional<Window> window = resolve_window(o, params, branch);
    if (!window) return kExitUsage;
    curves.push_back(sample_branch(params, branch, window->lo, window->hi, o.samples,
                                   DerivMode::Analytic, o.tol));
  }
  PlotOptions plot;
  plot.width = o.width;
  write_output(o.out, curve_plot_svg(curves, plot));
  return kExitPass;
}

// ---------------------------------------------------------------------------

int dispatch(const std::function<int()>& body) {
  try {
    return body();
  } catch (const DegenerateMotionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar solutions of inverse mean curvature flow for planar curves"};
  app.require_subcommand(1);

  Options o;
  Binder classify_binder, generate_binder, verify_binder, phase_binder, plot_binder;

  CLI::App* classify =
      app.add_subcommand("classify", "Regime, constants, and branch reports for (c,d)");
  add_params_options(classify, o, classify_binder);
  bind_string(classify_binder,
              classify->add_option("--format", o.format, "text or json (default text)"),
              "format", o.format);
  bind_optional_string(classify_binder,
                       classify->add_option("--out", o.out, "write to file instead of stdout"),
                       "out", o.out);
  add_config_option(classify, o);
  add_tolerance_options(classify, o, classify_binder);

  CLI::App* generate =
      app.add_subcommand("generate", "Sample one branch to CSV or JSON");
  add_params_options(generate, o, generate_binder);
  bind_optional_string(generate_binder,
                       generate->add_option("--branch", o.branch, "branch name"), "branch",
                       o.branch);
  bind_optional_double(generate_binder,
                       generate->add_option("--theta-min", o.theta_min, "window start"),
                       "theta-min", o.theta_min);
  bind_optional_double(generate_binder,
                       generate->add_option("--theta-max", o.theta_max, "window end"),
                       "theta-max", o.theta_max);
  {
    CLI::Option* opt = generate->add_option("--samples", o.samples, "grid size (default 2000)");
    generate_binder.add(opt, "samples", [&o](const std::string& v) {
      o.samples = static_cast<int>(parse_num(v));
    });
  }
  bind_string(generate_binder,
              generate->add_option("--format", o.format, "csv or json (default csv)"), "format",
              o.format);
  bind_optional_string(generate_binder,
                       generate->add_option("--out", o.out, "write to file instead of stdout"),
                       "out", o.out);
  bind_string(generate_binder,
              generate->add_option("--mode", o.mode,
                                   "derivative mode: analytic or fd (default analytic)"),
              "mode", o.mode);
  add_config_option(generate, o);
  add_tolerance_options(generate, o, generate_binder);

  CLI::App* verify = app.add_subcommand(
      "verify", "Check the defining law on a branch or an input CSV; JSON verdict");
  add_params_options(verify, o, verify_binder);
  bind_optional_string(verify_binder,
                       verify->add_option("--branch", o.branch,
                                          "branch name (default: all branches of the regime)"),
                       "branch", o.branch);
  bind_optional_string(verify_binder,
                       verify->add_option("--input", o.input, "verify rows of this CSV file"),
                       "input", o.input);
  bind_bool(verify_binder,
            verify->add_flag("--translating", o.translating,
                             "check the translation law <e2,N> + 1/k = 0 instead"),
            "translating", o.translating);
  bind_optional_double(verify_binder,
                       verify->add_option("--theta-min", o.theta_min, "window start"),
                       "theta-min", o.theta_min);
  bind_optional_double(verify_binder,
                       verify->add_option("--theta-max", o.theta_max, "window end"),
                       "theta-max", o.theta_max);
  {
    CLI::Option* opt = verify->add_option("--samples", o.samples, "grid size (default 2000)");
    verify_binder.add(opt, "samples", [&o](const std::string& v) {
      o.samples = static_cast<int>(parse_num(v));
    });
  }
  bind_optional_string(verify_binder,
                       verify->add_option("--out", o.out, "write to file instead of stdout"),
                       "out", o.out);
  add_config_option(verify, o);
  add_tolerance_options(verify, o, verify_binder);

  CLI::App* phase = app.add_subcommand(
      "phase", "Integrate one (tau,nu) phase trajectory to CSV or JSON");
  add_params_options(phase, o, phase_binder);
  bind_double(phase_binder, phase->add_option("--tau0", o.tau0, "initial tau (default 0)"),
              "tau0", o.tau0);
  bind_double(phase_binder, phase->add_option("--nu0", o.nu0, "initial nu (default -1)"), "nu0",
              o.nu0);
  bind_double(phase_binder, phase->add_option("--span", o.span, "s-bar length (default 6)"),
              "span", o.span);
  bind_double(phase_binder, phase->add_option("--step", o.step, "RK4 step (default 1e-3)"),
              "step", o.step);
  bind_string(phase_binder,
              phase->add_option("--format", o.format, "csv or json (default csv)"), "format",
              o.format);
  bind_optional_string(phase_binder,
                       phase->add_option("--out", o.out, "write to file instead of stdout"),
                       "out", o.out);
  add_config_option(phase, o);
  add_tolerance_options(phase, o, phase_binder);

  CLI::App* plot = app.add_subcommand(
      "plot", "SVG figure: branch curves (default) or the phase portrait (--phase)");
  add_params_options(plot, o, plot_binder);
  bind_optional_string(plot_binder,
                       plot->add_option("--branch", o.branch,
                                        "branch name (default: all branches of the regime)"),
                       "branch", o.branch);
  bind_optional_double(plot_binder, plot->add_option("--theta-min", o.theta_min, "window start"),
                       "theta-min", o.theta_min);
  bind_optional_double(plot_binder, plot->add_option("--theta-max", o.theta_max, "window end"),
                       "theta-max", o.theta_max);
  {
    CLI::Option* opt = plot->add_option("--samples", o.samples, "points per curve");
    plot_binder.add(opt, "samples", [&o](const std::string& v) {
      o.samples = static_cast<int>(parse_num(v));
    });
  }
  bind_bool(plot_binder,
            plot->add_flag("--phase", o.phase_portrait, "draw the (nu,tau) phase portrait"),
            "phase", o.phase_portrait);
  bind_double(plot_binder,
              plot->add_option("--span", o.span, "portrait trajectory span (default 6)"), "span",
              o.span);
  bind_double(plot_binder, plot->add_option("--step", o.step, "portrait RK4 step"), "step",
              o.step);
  bind_double(plot_binder, plot->add_option("--width", o.width, "SVG pixel width (default 800)"),
              "width", o.width);
  bind_optional_string(plot_binder,
                       plot->add_option("--out", o.out, "write to file instead of stdout"),
                       "out", o.out);
  add_config_option(plot, o);
  add_tolerance_options(plot, o, plot_binder);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  struct Row {
    CLI::App* cmd;
    const Binder* binder;
    std::function<int()> body;
  };
  const Row table[] = {
      {classify, &classify_binder, [&o] { return cmd_classify(o); }},
      {generate, &generate_binder, [&o] { return cmd_generate(o); }},
      {verify, &verify_binder, [&o] { return cmd_verify(o); }},
      {phase, &phase_binder, [&o] { return cmd_phase(o); }},
      {plot, &plot_binder, [&o] { return cmd_plot(o); }},
  };
  for (const Row& row : table) {
    if (!row.cmd->parsed()) continue;
    return dispatch([&] {
      if (o.config_path) row.binder->apply(load_config(*o.config_path));
      return row.body();
    });
  }
  return kExitUsage;
}
