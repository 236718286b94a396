#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#include "fridge/runner.hpp"

using namespace fridge;

namespace {

std::string csv_text(const Table& t) {
  std::ostringstream out;
  write_csv(out, t);
  return out.str();
}

std::string header_line(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '#') return line;
  }
  return "";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string temp_path(const std::string& name) {
  return std::string(FRIDGE_BINARY_DIR) + "/runner_test_" + name;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FRIDGE_QPC_BIN) + " " + args + " >/dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

RunConfig small_qpc_grid() {
  RunConfig cfg = preset_fig3(4);
  return cfg;
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("grid order has axis2 outer") {
  const RunConfig cfg = small_qpc_grid();
  const auto pts = grid_points(cfg);
  REQUIRE(pts.size() == 16);
  CHECK(pts[0][1] == pts[3][1]);
  CHECK(pts[0][0] != pts[1][0]);
  CHECK(pts[4][1] > pts[0][1]);
  CHECK(axis_names(cfg) == std::vector<std::string>{"measurement.mu_m_over_omega", "measurement.t_m"});
}

TEST_CASE("output is deterministic and independent of the thread count") {
  const RunConfig cfg = small_qpc_grid();
  const std::string one = csv_text(flows_table(cfg, run_sweep(cfg, 1), "fig3"));
  const std::string again = csv_text(flows_table(cfg, run_sweep(cfg, 1), "fig3"));
  const std::string four = csv_text(flows_table(cfg, run_sweep(cfg, 4), "fig3"));
  CHECK(one == again);
  CHECK(one == four);
}

TEST_CASE("header matches the reference layout") {
  const RunConfig f2 = preset_fig2();
  SweepResult empty;
  empty.axis_names = axis_names(f2);
  CHECK(header_line(csv_text(flows_table(f2, empty, "fig2"))) ==
        header_line(read_file(std::string(FRIDGE_SOURCE_DIR) + "/tests/golden/fig2_header.csv")));
  const RunConfig f3 = preset_fig3(2);
  empty.axis_names = axis_names(f3);
  CHECK(header_line(csv_text(flows_table(f3, empty, "fig3"))) ==
        header_line(read_file(std::string(FRIDGE_SOURCE_DIR) + "/tests/golden/fig3_header.csv")));
}

TEST_CASE("identical leads without measurement carry no heat") {
  RunConfig cfg = parse_config(R"({
    "dot": {"epsilon": 5.4, "delta": 4.3},
    "leads": {"mu": 10.0, "t_l": 3.0, "t_r": 3.0, "gamma": 0.01},
    "measurement": {"model": "ideal", "gamma_m": 0.0},
    "sweep": {"axis1": {"name": "dot.delta", "from": 1, "to": 4, "points": 2},
              "axis2": {"name": "leads.mu", "from": 6, "to": 12, "points": 2}}
  })");
  const SweepResult r = run_sweep(cfg, 2);
  REQUIRE(r.rows.size() == 4);
  for (const PointResult& p : r.rows) {
    REQUIRE(p.status == "ok");
    CHECK(std::abs(p.flows->j_l) < 1e-15);
    CHECK(std::abs(p.flows->j_r) < 1e-15);
    CHECK(p.flows->e_dot_m == 0.0);
  }
}

TEST_CASE("failed points are reported, not fatal") {
  RunConfig cfg = parse_config(R"({
    "dot": {"epsilon": 5.4, "delta": 4.3},
    "leads": {"mu": 10.0, "t_l": 2.0, "t_r": 4.0, "gamma": 0.01},
    "measurement": {"model": "ideal", "gamma_m": 1.0},
    "sweep": {"axis1": {"name": "leads.t_l", "from": -1, "to": 2, "points": 4}}
  })");
  const SweepResult r = run_sweep(cfg, 2);
  REQUIRE(r.rows.size() == 4);
  CHECK(r.failed == 2);
  CHECK(r.rows[0].status.rfind("failed:", 0) == 0);
  CHECK(r.rows[3].status == "ok");
  CHECK(r.success_fraction() == doctest::Approx(0.5));
  const std::string csv = csv_text(flows_table(cfg, r, "sweep"));
  CHECK(csv.find(",,") != std::string::npos);
}

TEST_CASE("writers") {
  CHECK(format_number(0.1) == "1.0000000000000001e-01");
  Table t;
  t.metadata = {{"command", "point"}};
  t.columns = {"status", "x", "y"};
  t.rows = {{std::string("ok"), std::optional<double>(1.5), std::optional<double>()}};
  CHECK(csv_text(t) == "# command: point\nstatus,x,y\nok,1.5000000000000000e+00,\n");
  std::ostringstream js;
  write_json(js, t);
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["metadata"]["command"] == "point");
  CHECK(doc["rows"][0]["x"] == 1.5);
  CHECK(doc["rows"][0]["y"].is_null());
}

TEST_CASE("metadata records units and detector") {
  const Table t = flows_table(preset_fig3(2), SweepResult{}, "fig3");
  bool units = false, kappa = false, calibration = false;
  for (const auto& [k, v] : t.metadata) {
    units |= k == "units";
    kappa |= k == "noise_convention_kappa";
    calibration |= k == "calibration";
  }
  CHECK(units);
  CHECK(kappa);
  CHECK(calibration);
}

TEST_CASE("thread count resolution") {
  CHECK(resolve_thread_count(3u) == 3);
  ::setenv("FRIDGE_QPC_THREADS", "2", 1);
  CHECK(resolve_thread_count(std::nullopt) == 2);
  ::unsetenv("FRIDGE_QPC_THREADS");
  CHECK(resolve_thread_count(std::nullopt) >= 1);
}

TEST_CASE("command-line exit codes") {
  const std::string cfg_dir = std::string(FRIDGE_SOURCE_DIR) + "/configs/";
  const std::string out = temp_path("point.csv");
  CHECK(run_cli("point --config " + cfg_dir + "reference_point.json --out " + out) == 0);
  const std::string csv = read_file(out);
  CHECK(csv.find("# command: point") != std::string::npos);
  CHECK(header_line(csv).rfind("status,j_l,j_r,e_dot_m", 0) == 0);

  CHECK(run_cli("point --config " + cfg_dir + "qpc_point.json --format json --out " + out) == 0);
  const auto doc = nlohmann::json::parse(read_file(out));
  CHECK(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["snr"].is_number());

  CHECK(run_cli("point --config /nonexistent.json") == 2);
  CHECK(run_cli("point") == 2);
  CHECK(run_cli("bogus") == 2);
  CHECK(run_cli("noise --config " + cfg_dir + "reference_point.json") == 2);
  CHECK(run_cli("sweep --config " + cfg_dir + "reference_point.json") == 2);

  const std::string bad = temp_path("bad.json");
  std::ofstream(bad) << R"({"dot": {"epsilon": 5.4, "delta": 4.3},
    "leads": {"mu": 10, "t_l": -2, "t_r": 4, "gamma": 0.01},
    "measurement": {"model": "ideal", "gamma_m": 1}})";
  CHECK(run_cli("point --config " + bad) == 2);

  const std::string half = temp_path("half.json");
  std::ofstream(half) << R"({"dot": {"epsilon": 5.4, "delta": 4.3},
    "leads": {"mu": 10, "t_l": 2, "t_r": 4, "gamma": 0.01},
    "measurement": {"model": "ideal", "gamma_m": 1},
    "sweep": {"axis1": {"name": "leads.t_l", "from": -1, "to": 2, "points": 4}}})";
  CHECK(run_cli("sweep --config " + half + " --out " + out) == 3);

  CHECK(run_cli("local-check --config " + cfg_dir + "local_check.json --out " + out) == 0);
  CHECK(header_line(read_file(out)).find("j_l_analytic") != std::string::npos);
  CHECK(run_cli("fig2 --threads 2 --out " + out) == 0);
  std::remove(out.c_str());
  std::remove(bad.c_str());
  std::remove(half.c_str());
}

}  // TEST_SUITE
