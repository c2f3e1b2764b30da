#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

// End-to-end tests driving the installed command-line binary (path in the
// IMCF_CLI environment variable, set by the test harness).

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string temp_path(const std::string& tag) {
  static int counter = 0;
  return "cli_test_tmp_" + std::to_string(++counter) + "_" + tag;
}

RunResult run_cli(const std::string& args) {
  const char* binary = std::getenv("IMCF_CLI");
  REQUIRE_MESSAGE(binary != nullptr, "IMCF_CLI must point at the CLI binary");
  const std::string out_path = temp_path("stdout"), err_path = temp_path("stderr");
  const std::string command =
      std::string(binary) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  RunResult result;
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_path);
  result.err = slurp(err_path);
  std::remove(out_path.c_str());
  std::remove(err_path.c_str());
  return result;
}

}  // namespace

TEST_CASE("classify: regimes, exit codes, JSON") {
  const RunResult over = run_cli("classify --c 3 --d 0");
  CHECK(over.code == 0);
  CHECK(over.out.find("regime: overcritical") != std::string::npos);
  CHECK(over.out.find("alpha: 2.6180339887498949") != std::string::npos);
  CHECK(over.out.find("beta: 0.3819660112501051") != std::string::npos);

  const RunResult circle = run_cli("classify --c 0 --d 1");
  CHECK(circle.code == 0);
  CHECK(circle.out.find("regime: critical") != std::string::npos);
  CHECK(circle.out.find("compact=yes") != std::string::npos);

  CHECK(run_cli("classify --c 0 --d 0").code == 3);
  CHECK(run_cli("classify --d 1").code == 2);
  CHECK(run_cli("classify --c x --d 1").code == 2);
  CHECK(run_cli("totally-bogus").code == 2);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);

  const RunResult json = run_cli("classify --c 1 --d 0 --format json");
  CHECK(json.code == 0);
  const nlohmann::json j = nlohmann::json::parse(json.out);
  CHECK(j["regime"] == "undercritical");
  CHECK(j["shape_class"] == "outside-spiral");
  CHECK(j["branches"].size() == 1);
}

TEST_CASE("generate: CSV shape, determinism, JSON, errors") {
  const RunResult csv = run_cli("generate --c 2 --d 0 --branch critical-general --samples 400");
  CHECK(csv.code == 0);
  CHECK(csv.out.find("theta,x,y,k,tau,nu,residual\n") != std::string::npos);
  CHECK(csv.out.find("# c=2 d=0 branch=critical-general") != std::string::npos);
  CHECK(csv.out.find("# cusps=-1") != std::string::npos);

  // byte determinism across invocations
  const RunResult again = run_cli("generate --c 2 --d 0 --branch critical-general --samples 400");
  CHECK(again.out == csv.out);

  // row count: requested samples minus the cusp-excluded grid points
  std::size_t rows = 0;
  std::istringstream lines(csv.out);
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty() && line[0] != '#' && line[0] != 't') ++rows;
  CHECK(rows == 398);  // two grid points fall into the exclusion band at -1

  const RunResult json = run_cli("generate --c 1 --d 0 --branch undercritical --format json");
  CHECK(json.code == 0);
  const nlohmann::json j = nlohmann::json::parse(json.out);
  CHECK(j["branch"] == "undercritical");
  CHECK(j["cusps"].size() >= 3);

  // inadmissible branch: exit 2 and the admissible list on stderr
  const RunResult bad = run_cli("generate --c 1 --d 0 --branch spiral-alpha");
  CHECK(bad.code == 2);
  CHECK(bad.err.find("undercritical") != std::string::npos);
  CHECK(bad.err.find("cycloid") != std::string::npos);

  CHECK(run_cli("generate --c 0 --d 0 --branch critical-spiral").code == 3);
  CHECK(run_cli("generate --c 2 --d 0 --branch critical-spiral --samples 1").code == 2);
  CHECK(run_cli("generate --c 2 --d 0 --branch critical-spiral --theta-min 1").code == 2);
  CHECK(run_cli("generate --branch cycloid").code == 0);  // params optional here

  // finite-difference mode works end to end
  const RunResult fd = run_cli(
      "generate --c 2 --d 0 --branch critical-spiral --mode fd --theta-min -1 --theta-max 1");
  CHECK(fd.code == 0);
}

TEST_CASE("verify: branch mode verdicts") {
  const RunResult all = run_cli("verify --c 3 --d 0");
  CHECK(all.code == 0);
  const nlohmann::json j = nlohmann::json::parse(all.out);
  CHECK(j["pass"] == true);
  CHECK(j["results"].size() == 4);
  CHECK(j["max_residual"].get<double>() < 1e-8);
  CHECK(j["max_flow_residual"].get<double>() < 1e-7);
  CHECK(j["cusps_expected"] == 1);
  CHECK(j["cusps_found"] == 1);

  const RunResult one = run_cli("verify --c 1 --d 0 --branch undercritical");
  CHECK(one.code == 0);
  const nlohmann::json j1 = nlohmann::json::parse(one.out);
  CHECK(j1["results"].size() == 1);
  CHECK(j1["results"][0]["cusps_found"].size() >= 2);

  CHECK(run_cli("verify --branch cycloid --theta-min 0.3 --theta-max 6").code == 0);
  CHECK(run_cli("verify --c 0 --d 0").code == 3);
}

TEST_CASE("verify: input CSV round trip, corruption, translation law") {
  const std::string curve_path = temp_path("curve.csv");
  CHECK(run_cli("generate --c 2 --d 0 --branch critical-general --out " + curve_path).code == 0);

  const RunResult clean = run_cli("verify --input " + curve_path);
  CHECK(clean.code == 0);
  const nlohmann::json j = nlohmann::json::parse(clean.out);
  CHECK(j["pass"] == true);
  CHECK(j["law"] == "rotation-scaling");
  CHECK(j["max_scaled_defect"].get<double>() < 1e-10);

  // corrupt the dominant coordinate of one data row by 1e-3
  std::string text = slurp(curve_path);
  std::istringstream lines(text);
  std::string line, corrupted;
  int data_row = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line[0] != 't' && ++data_row == 700) {
      std::istringstream fields(line);
      std::string field;
      std::vector<std::string> parts;
      while (std::getline(fields, field, ',')) parts.push_back(field);
      const double x = std::stod(parts[1]), y = std::stod(parts[2]);
      const int target = std::abs(x) >= std::abs(y) ? 1 : 2;
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", std::stod(parts[target]) + 1e-3);
      parts[target] = buf;
      line = parts[0];
      for (std::size_t i = 1; i < parts.size(); ++i) line += "," + parts[i];
    }
    corrupted += line + "\n";
  }
  const std::string bad_path = temp_path("corrupted.csv");
  spit(bad_path, corrupted);

  const RunResult dirty = run_cli("verify --input " + bad_path);
  CHECK(dirty.code == 1);
  const nlohmann::json jd = nlohmann::json::parse(dirty.out);
  CHECK(jd["pass"] == false);
  CHECK(jd["offending"].size() == 1);
  CHECK(jd["max_abs_defect"].get<double>() > 1e-4);

  // externally produced cycloid rows pass under the translation law
  const std::string cycloid_path = temp_path("cycloid.csv");
  CHECK(run_cli("generate --branch cycloid --theta-min 0.3 --theta-max 6 --out " + cycloid_path)
            .code == 0);
  // strip the branch comment so only --translating selects the law
  std::string cycloid_text = slurp(cycloid_path);
  std::string external;
  std::istringstream cyc_lines(cycloid_text);
  while (std::getline(cyc_lines, line))
    if (line.rfind("#", 0) != 0) external += line + "\n";
  spit(cycloid_path, external);

  CHECK(run_cli("verify --input " + cycloid_path + " --translating").code == 0);
  // without the flag and without params the law is unknown: usage error
  CHECK(run_cli("verify --input " + cycloid_path).code == 2);

  std::remove(curve_path.c_str());
  std::remove(bad_path.c_str());
  std::remove(cycloid_path.c_str());
}

TEST_CASE("phase: trajectory files") {
  const RunResult csv = run_cli("phase --c 3 --d 0 --span 1 --step 0.01");
  CHECK(csv.code == 0);
  CHECK(csv.out.find("sbar,tau,nu,r,phi\n") != std::string::npos);
  CHECK(csv.out.find("# fixed-directions=") != std::string::npos);

  const RunResult json = run_cli("phase --c 1 --d 0 --span 1 --step 0.01 --format json");
  CHECK(json.code == 0);
  const nlohmann::json j = nlohmann::json::parse(json.out);
  CHECK(j["fixed_directions"].empty());
  CHECK(j["trajectory"].size() == 101);

  CHECK(run_cli("phase --c 3 --d 0 --span -1").code == 2);
  CHECK(run_cli("phase --c 0 --d 0").code == 3);
}

TEST_CASE("plot: curve figures and phase portraits") {
  const RunResult curves = run_cli("plot --c 3 --d 0");
  CHECK(curves.code == 0);
  CHECK(curves.out.rfind("<svg ", 0) == 0);
  // one cusp in the overcritical family (the minus branch)
  std::size_t cusp_count = 0;
  for (std::size_t pos = curves.out.find("class=\"cusp\""); pos != std::string::npos;
       pos = curves.out.find("class=\"cusp\"", pos + 1))
    ++cusp_count;
  CHECK(cusp_count == 1);

  const RunResult portrait = run_cli("plot --c 3 --d 0 --phase");
  CHECK(portrait.code == 0);
  CHECK(portrait.out.find("class=\"fixed-direction\"") != std::string::npos);

  const RunResult no_lines = run_cli("plot --c 1 --d 0 --phase");
  CHECK(no_lines.code == 0);
  CHECK(no_lines.out.find("class=\"fixed-direction\"") == std::string::npos);

  // determinism of figure bytes
  const RunResult again = run_cli("plot --c 3 --d 0");
  CHECK(again.out == curves.out);
}

TEST_CASE("config file preloads options; explicit flags win") {
  const std::string config_path = temp_path("config");
  spit(config_path,
       "# sample config\n"
       "c = 3\n"
       "d = 0\n"
       "branch = spiral-alpha\n"
       "samples = 7\n"
       "tolerance-residual = 1e-3\n");

  const RunResult from_config = run_cli("generate --config " + config_path);
  CHECK(from_config.code == 0);
  CHECK(from_config.out.find("branch=spiral-alpha") != std::string::npos);

  const RunResult overridden =
      run_cli("generate --config " + config_path + " --branch spiral-beta");
  CHECK(overridden.code == 0);
  CHECK(overridden.out.find("branch=spiral-beta") != std::string::npos);

  const std::string bogus_path = temp_path("bogus_config");
  spit(bogus_path, "no-such-key = 1\n");
  CHECK(run_cli("generate --config " + bogus_path + " --c 3 --d 0 --branch spiral-alpha").code ==
        2);

  std::remove(config_path.c_str());
  std::remove(bogus_path.c_str());
}
