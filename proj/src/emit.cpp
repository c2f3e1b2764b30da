#include "imcf/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include <json.hpp>

#include "imcf/generators.hpp"

namespace imcf {
namespace {

constexpr const char* kCurveHeader = "theta,x,y,k,tau,nu,residual";
constexpr const char* kPhaseHeader = "sbar,tau,nu,r,phi";
constexpr const char* kVersionComment = "<!-- imcf 0.1.0 -->";

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string num6(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string join17(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += num17(values[i]);
  }
  return out;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find(sep, start);
    if (end == std::string_view::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

double parse_double(std::string_view token) {
  std::string owned(token);
  char* end = nullptr;
  const double value = std::strtod(owned.c_str(), &end);
  if (end == owned.c_str() || *end != '\0')
    throw FormatError("not a number: '" + owned + "'");
  return value;
}

nlohmann::json sample_to_json(const CurveSample& s) {
  return {{"theta", s.theta},
          {"position", {{"x", s.position.real()}, {"y", s.position.imag()}}},
          {"tangent", {{"x", s.tangent.real()}, {"y", s.tangent.imag()}}},
          {"normal", {{"x", s.normal.real()}, {"y", s.normal.imag()}}},
          {"curvature", s.curvature},
          {"tau", s.tau},
          {"nu", s.nu},
          {"residual", s.residual}};
}

struct Box {
  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double min_y = std::numeric_limits<double>::infinity();
  double max_y = -std::numeric_limits<double>::infinity();

  void add(double x, double y) {
    min_x = std::min(min_x, x);
    max_x = std::max(max_x, x);
    min_y = std::min(min_y, y);
    max_y = std::max(max_y, y);
  }
  bool empty() const { return !(min_x <= max_x); }
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }

  void pad(double fraction) {
    double px = width() * fraction, py = height() * fraction;
    if (px <= 0.0) px = std::max(1e-3, std::abs(min_x) * fraction + 1e-3);
    if (py <= 0.0) py = std::max(1e-3, std::abs(min_y) * fraction + 1e-3);
    min_x -= px;
    max_x += px;
    min_y -= py;
    max_y += py;
  }
};

// SVG y grows downward; data points are written as (x, -y).
std::string svg_open(const Box& data_box, const PlotOptions& options) {
  const double w = data_box.width(), h = data_box.height();
  std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num6(options.width) +
                    "\" height=\"" + num6(options.width * h / w) + "\" viewBox=\"" +
                    num6(data_box.min_x) + " " + num6(-data_box.max_y) + " " + num6(w) + " " +
                    num6(h) + "\">\n";
  out += kVersionComment;
  out += '\n';
  return out;
}

const char* palette(std::size_t index) {
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e", "#8c564b"};
  return kColors[index % 6];
}

}  // namespace

std::string to_csv(const SampledCurve& curve) {
  std::string out = "# imcf curve export\n";
  out += "# c=" + num17(curve.params.c) + " d=" + num17(curve.params.d) +
         " branch=" + std::string(branch_name(curve.branch)) + "\n";
  out += "# cusps=" + join17(curve.cusps) + "\n";
  out += kCurveHeader;
  out += '\n';
  for (const CurveSample& s : curve.samples) {
    out += num17(s.theta) + ',' + num17(s.position.real()) + ',' + num17(s.position.imag()) + ',' +
           num17(s.curvature) + ',' + num17(s.tau) + ',' + num17(s.nu) + ',' + num17(s.residual) +
           '\n';
  }
  return out;
}

CsvCurve parse_curve_csv(std::string_view text) {
  CsvCurve curve;
  bool header_seen = false;
  std::optional<double> c, d;

  for (std::string_view line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    if (line.front() == '#') {
      line.remove_prefix(1);
      for (std::string_view token : split(line, ' ')) {
        if (token.rfind("c=", 0) == 0) c = parse_double(token.substr(2));
        else if (token.rfind("d=", 0) == 0) d = parse_double(token.substr(2));
        else if (token.rfind("branch=", 0) == 0) curve.branch = branch_from_name(token.substr(7));
        else if (token.rfind("cusps=", 0) == 0 && token.size() > 6)
          for (std::string_view v : split(token.substr(6), ','))
            if (!v.empty()) curve.cusps.push_back(parse_double(v));
      }
      continue;
    }

    if (!header_seen) {
      if (line != kCurveHeader)
        throw FormatError("expected header '" + std::string(kCurveHeader) + "', got '" +
                          std::string(line) + "'");
      header_seen = true;
      continue;
    }

    const auto fields = split(line, ',');
    if (fields.size() != 7)
      throw FormatError("expected 7 fields, got " + std::to_string(fields.size()));
    CsvRow row;
    row.theta = parse_double(fields[0]);
    row.x = parse_double(fields[1]);
    row.y = parse_double(fields[2]);
    row.k = parse_double(fields[3]);
    row.tau = parse_double(fields[4]);
    row.nu = parse_double(fields[5]);
    row.residual = parse_double(fields[6]);
    curve.rows.push_back(row);
  }
  if (!header_seen) throw FormatError("missing curve CSV header");
  if (c && d) curve.params = SolitonParams{*c, *d};
  return curve;
}

std::string to_json(const SampledCurve& curve) {
  nlohmann::json j;
  j["params"] = {{"c", curve.params.c}, {"d", curve.params.d}};
  j["branch"] = std::string(branch_name(curve.branch));
  j["cusps"] = curve.cusps;
  j["samples"] = nlohmann::json::array();
  for (const CurveSample& s : curve.samples) j["samples"].push_back(sample_to_json(s));
  return j.dump(2) + "\n";
}

InputVerification verify_input_rows(const CsvCurve& curve, const SolitonParams& params,
                                    SolitonLaw law, double scaled_tolerance) {
  InputVerification result;
  result.rows = curve.rows.size();
  const double inf = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < curve.rows.size(); ++i) {
    const CsvRow& row = curve.rows[i];
    double scaled = inf, absolute = inf;

    const bool finite = std::isfinite(row.x) && std::isfinite(row.y) && std::isfinite(row.k) &&
                        std::isfinite(row.tau) && std::isfinite(row.nu);
    const double rr = row.tau * row.tau + row.nu * row.nu;
    if (finite && row.k != 0.0 && rr > 0.0) {
      const double inv_k = 1.0 / row.k;
      double res, res_scale;
      if (law == SolitonLaw::Translation) {
        // tangent recovered from x = tau*T + nu*(iT):  T = x/(tau + i nu)
        const double t_x = (row.x * row.tau + row.y * row.nu) / rr;
        res = t_x + inv_k;
        res_scale = 1.0 + std::abs(t_x) + std::abs(inv_k);
      } else {
        res = params.c * row.tau - params.d * row.nu - inv_k;
        res_scale = 1.0 + std::abs(params.c * row.tau) + std::abs(params.d * row.nu) +
                    std::abs(inv_k);
      }
      const double radius_gap = std::abs(std::sqrt(rr) - std::hypot(row.x, row.y));
      absolute = std::max(std::abs(res), radius_gap);
      scaled = std::max(std::abs(res) / res_scale,
                        radius_gap / (1.0 + std::hypot(row.x, row.y)));
    }

    result.max_scaled_defect = std::max(result.max_scaled_defect, scaled);
    result.max_abs_defect = std::max(result.max_abs_defect, absolute);
    if (scaled > scaled_tolerance) result.offending.push_back({i, scaled, absolute});
  }
  return result;
}

std::string to_csv(const PhaseTrajectory& trajectory, const std::vector<double>& fixed_dirs) {
  std::string out = "# imcf phase trajectory\n";
  out += "# c=" + num17(trajectory.params.c) + " d=" + num17(trajectory.params.d) + "\n";
  out += "# fixed-directions=" + join17(fixed_dirs) + "\n";
  out += kPhaseHeader;
  out += '\n';
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    const PhaseState& s = trajectory.states[i];
    out += num17(trajectory.sbar_grid[i]) + ',' + num17(s.tau) + ',' + num17(s.nu) + ',' +
           num17(s.r) + ',' + num17(s.phi) + '\n';
  }
  return out;
}

std::string to_json(const PhaseTrajectory& trajectory, const std::vector<double>& fixed_dirs) {
  nlohmann::json j;
  j["params"] = {{"c", trajectory.params.c}, {"d", trajectory.params.d}};
  j["fixed_directions"] = fixed_dirs;
  j["trajectory"] = nlohmann::json::array();
  for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
    const PhaseState& s = trajectory.states[i];
    j["trajectory"].push_back({{"sbar", trajectory.sbar_grid[i]},
                               {"tau", s.tau},
                               {"nu", s.nu},
                               {"r", s.r},
                               {"phi", s.phi}});
  }
  return j.dump(2) + "\n";
}

std::string curve_plot_svg(const std::vector<SampledCurve>& curves, const PlotOptions& options) {
  Box box;
  for (const SampledCurve& curve : curves) {
    for (const CurveSample& s : curve.samples) box.add(s.position.real(), s.position.imag());
    for (double cusp : curve.cusps) {
      const PlanarPoint p = eval_branch(curve.params, curve.branch, cusp);
      box.add(p.real(), p.imag());
    }
  }
  if (box.empty()) throw Error("nothing to plot");
  box.pad(options.pad_fraction);

  const double stroke = 0.004 * std::max(box.width(), box.height());
  std::string out = svg_open(box, options);
  out += "<g fill=\"none\" stroke-width=\"" + num6(stroke) + "\">\n";

  for (std::size_t ci = 0; ci < curves.size(); ++ci) {
    const SampledCurve& curve = curves[ci];
    if (curve.samples.empty()) continue;

    // split the polyline where cusp exclusion removed grid points
    std::vector<double> gaps;
    for (std::size_t i = 1; i < curve.theta_grid.size(); ++i)
      gaps.push_back(curve.theta_grid[i] - curve.theta_grid[i - 1]);
    std::vector<double> sorted = gaps;
    std::sort(sorted.begin(), sorted.end());
    const double nominal = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];

    std::string points;
    auto flush = [&] {
      if (points.empty()) return;
      out += "<polyline class=\"branch\" data-branch=\"" +
             std::string(branch_name(curve.branch)) + "\" stroke=\"" + palette(ci) +
             "\" points=\"" + points + "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < curve.samples.size(); ++i) {
      if (i > 0 && gaps[i - 1] > 2.5 * nominal) flush();
      if (!points.empty()) points += ' ';
      points += num6(curve.samples[i].position.real()) + ',' +
                num6(-curve.samples[i].position.imag());
    }
    flush();

    if (options.mark_cusps) {
      for (double cusp : curve.cusps) {
        const PlanarPoint p = eval_branch(curve.params, curve.branch, cusp);
        out += "<circle class=\"cusp\" cx=\"" + num6(p.real()) + "\" cy=\"" + num6(-p.imag()) +
               "\" r=\"" + num6(3.0 * stroke) + "\" fill=\"#000000\" stroke=\"none\"/>\n";
      }
    }
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string phase_plot_svg(const std::vector<PhaseTrajectory>& trajectories,
                           const std::vector<double>& fixed_dirs, const PlotOptions& options) {
  Box box;
  box.add(0.0, 0.0);
  for (const PhaseTrajectory& t : trajectories)
    for (const PhaseState& s : t.states) box.add(s.nu, s.tau);  // x = nu, y = tau
  box.pad(options.pad_fraction);

  const double stroke = 0.004 * std::max(box.width(), box.height());
  std::string out = svg_open(box, options);
  out += "<g fill=\"none\" stroke-width=\"" + num6(stroke) + "\">\n";

  out += "<line class=\"axis\" x1=\"" + num6(box.min_x) + "\" y1=\"0\" x2=\"" + num6(box.max_x) +
         "\" y2=\"0\" stroke=\"#cccccc\"/>\n";
  out += "<line class=\"axis\" x1=\"0\" y1=\"" + num6(-box.max_y) + "\" x2=\"0\" y2=\"" +
         num6(-box.min_y) + "\" stroke=\"#cccccc\"/>\n";

  const double reach = 2.0 * std::hypot(std::max(std::abs(box.min_x), std::abs(box.max_x)),
                                        std::max(std::abs(box.min_y), std::abs(box.max_y)));
  for (double phi : fixed_dirs) {
    const double nx = std::cos(phi) * reach, ty = std::sin(phi) * reach;
    out += "<line class=\"fixed-direction\" x1=\"" + num6(-nx) + "\" y1=\"" + num6(ty) +
           "\" x2=\"" + num6(nx) + "\" y2=\"" + num6(-ty) + "\" stroke=\"#888888\"/>\n";
  }

  for (std::size_t ti = 0; ti < trajectories.size(); ++ti) {
    std::string points;
    for (const PhaseState& s : trajectories[ti].states) {
      if (!points.empty()) points += ' ';
      points += num6(s.nu) + ',' + num6(-s.tau);
    }
    if (!points.empty())
      out += "<polyline class=\"trajectory\" stroke=\"" + std::string(palette(ti)) +
             "\" points=\"" + points + "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace imcf
