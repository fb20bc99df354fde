// Copyright 2026 The qubus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "qubus/cli.hpp"

namespace fs = std::filesystem;
using namespace qubus;
using qubus::cli::json;

namespace {

const fs::path kSource = QUBUS_SOURCE_DIR;

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("qubus_test_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

// Runs the CLI with stdout to `stdout_file`; returns the exit status.
int qubus_cmd(const std::string& args, const std::string& env = "", const std::string& stdout_file = "stdout.txt") {
  const std::string cmd = env + " '" + std::string(QUBUS_CLI_PATH) + "' " + args + " > '" +
                          (scratch() / stdout_file).string() + "' 2> '" + (scratch() / "stderr.txt").string() + "'";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string scenario(const std::string& name) { return "'" + (kSource / "scenarios" / name).string() + "'"; }

const char* kEightBranches = R"({
  "schema": "qubus/1", "n_qubits": 3,
  "initial": {"qubits": "plus_all", "bus": 0},
  "ops": [{"type": "cond_disp", "qubit": 0, "beta": 1},
          {"type": "cond_disp", "qubit": 1, "beta": {"re": 0, "im": 1}},
          {"type": "cond_disp", "qubit": 2, "beta": 3}]
})";

}  // namespace

TEST_CASE("numbers and complex values") {
  CHECK(cli::format_double(0.1) == "0.10000000000000001");
  CHECK(cli::format_double(1.0) == "1");
  CHECK(std::stod(cli::format_double(kPi)) == kPi);
  const json z = cli::to_json(Complex{1.5, -2.0});
  CHECK(z.at("re") == 1.5);
  CHECK(z.at("im") == -2.0);
  CHECK(cli::complex_from_json(z, "z") == Complex{1.5, -2.0});
  CHECK(cli::complex_from_json(json(0.25), "z") == Complex{0.25, 0.0});
  CHECK_THROWS_AS(cli::complex_from_json(json("x"), "z"), InvalidArgument);
}

TEST_CASE("ops round-trip through json") {
  const BusOp ops[] = {CondDisp{1, Complex{0.2, -0.3}}, CondRot{0, 0.05}, UncondDisp{Complex{0.0, 1.0}},
                       SingleQubit{1, gates::hadamard()}};
  for (const auto& op : ops) {
    const BusOp back = cli::op_from_json(cli::to_json(op), 2, "op");
    CHECK(cli::to_json(back) == cli::to_json(op));
  }
  CHECK_THROWS_AS(cli::op_from_json(json{{"type", "cond_disp"}, {"qubit", 2}, {"beta", 1}}, 2, "op"),
                  InvalidArgument);
  CHECK_THROWS_AS(cli::op_from_json(json{{"type", "teleport"}}, 2, "op"), InvalidArgument);
}

TEST_CASE("scenario parsing") {
  json j = json::parse(slurp(kSource / "scenarios" / "cphase_loop.json"));
  const auto sc = cli::parse_scenario(j);
  CHECK(sc.n_qubits == 2);
  REQUIRE(sc.ops);
  CHECK(sc.ops->size() == 4);

  SUBCASE("schema is required") {
    j.erase("schema");
    CHECK_THROWS_AS(cli::parse_scenario(j), InvalidArgument);
  }
  SUBCASE("ops and protocol are exclusive") {
    j["protocol"] = {{"name", "cphase_displacement_gate"}};
    CHECK_THROWS_AS(cli::parse_scenario(j), InvalidArgument);
  }
  SUBCASE("initial state must be normalized") {
    j["initial"]["qubits"] = {1, 1, 0, 0};
    CHECK_THROWS_AS(cli::parse_scenario(j), InvalidArgument);
  }
  SUBCASE("every listed protocol parses") {
    for (const auto& name : cli::protocol_names()) {
      json p = json::parse(slurp(kSource / "scenarios" / "parity_number.json"));
      p["protocol"] = {{"name", name}, {"params", {{"beta", 1.0}, {"theta", 0.05}, {"iterations", 2}}}};
      if (name == "qnd_qubit_measurement") {
        p["n_qubits"] = 1;
        p["initial"]["qubits"] = {1, 0};
      }
      CHECK_NOTHROW(cli::parse_scenario(p));
    }
  }
}

TEST_CASE("report does not depend on thread count") {
  const fs::path a = scratch() / "run1", b = scratch() / "run8";
  REQUIRE(qubus_cmd("run " + scenario("qnd_homodyne.json") + " --out '" + a.string() + "'", "OMP_NUM_THREADS=1") == 0);
  REQUIRE(qubus_cmd("run " + scenario("qnd_homodyne.json") + " --out '" + b.string() + "'", "OMP_NUM_THREADS=8") == 0);
  const std::string report = slurp(a / "report.json");
  CHECK(report == slurp(b / "report.json"));
  CHECK(slurp(a / "trajectory.json") == slurp(b / "trajectory.json"));
  const json r = json::parse(report);
  CHECK(r.at("schema") == "qubus/1");
  CHECK(r.at("rng").at("name") == "philox4x32-10");
  CHECK(r.at("rng").contains("version"));
  CHECK(r.at("metrics").contains("sample_mean"));
  CHECK(r.at("samples").size() == 1000);
}

TEST_CASE("run without --out prints one document") {
  REQUIRE(qubus_cmd("run " + scenario("cphase_loop.json")) == 0);
  const json r = json::parse(slurp(scratch() / "stdout.txt"));
  CHECK(r.contains("trajectory"));
  CHECK(r.at("metrics").at("bus_spread").get<double>() < 1e-12);
  const auto& bus = r.at("final").at("branches").at(0).at("bus");
  CHECK(bus.contains("re"));
  CHECK(bus.contains("im"));
}

TEST_CASE("sweep csv") {
  const fs::path a = scratch() / "sw1", b = scratch() / "sw4";
  REQUIRE(qubus_cmd("sweep " + scenario("qnd_sweep.json") + " --jobs 1 --out '" + a.string() + "'") == 0);
  REQUIRE(qubus_cmd("sweep " + scenario("qnd_sweep.json") + " --jobs 4 --out '" + b.string() + "'") == 0);
  const std::string csv = slurp(a / "sweep.csv");
  CHECK(csv == slurp(b / "sweep.csv"));
  std::istringstream lines(csv);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header.find("protocol.params.beta") != std::string::npos);
  CHECK(header.find("E_exact") != std::string::npos);
  int rows = 0;
  while (std::getline(lines, row)) {
    ++rows;
    CHECK(row.find(',') != std::string::npos);
  }
  CHECK(rows == 5);
  // beta = 1: exact error erfc(sqrt 2)/2, printed with 17 significant digits.
  std::istringstream again(csv);
  std::getline(again, row);
  std::getline(again, row);
  CHECK(row.rfind("1,", 0) == 0);
  const std::string e_exact = row.substr(row.find(',', 2) + 1, row.rfind(',') - row.find(',', 2) - 1);
  CHECK(std::stod(e_exact) == doctest::Approx(0.5 * std::erfc(std::sqrt(2.0))).epsilon(1e-14));
  CHECK(e_exact.size() >= 19);
}

TEST_CASE("exit codes") {
  CHECK(qubus_cmd("run '" + (scratch() / "missing.json").string() + "'") == 2);
  CHECK(qubus_cmd("run '" + write("bad.json", "{ not json").string() + "'") == 2);
  CHECK(qubus_cmd("run '" + write("proto.json", R"({"schema":"qubus/1","n_qubits":1,"initial":{"qubits":[1,0],"bus":0},"protocol":{"name":"nope"}})").string() + "'") == 2);
  CHECK(qubus_cmd("frobnicate") == 2);
  const std::string many = write("many.json", kEightBranches).string();
  CHECK(qubus_cmd("run '" + many + "'") == 0);
  CHECK(qubus_cmd("run '" + many + "'", "QUBUS_BRANCH_CAP=4") == 3);
  CHECK(qubus_cmd("validate --filter composition") == 0);
  CHECK(qubus_cmd("validate --filter appendix2") == 1);
  CHECK(qubus_cmd("search-sequence fig13") == 1);
  CHECK(qubus_cmd("search-sequence fig12") == 2);
}

TEST_CASE("search output matches the shipped sequence data") {
  const fs::path out = scratch() / "seq";
  REQUIRE(qubus_cmd("search-sequence fig11 --out '" + out.string() + "'") == 0);
  CHECK(json::parse(slurp(out / "fig11.json")) == json::parse(slurp(kSource / "data" / "sequences" / "fig11.json")));
  REQUIRE(qubus_cmd("search-sequence fig13 --target corrected --out '" + out.string() + "'") == 0);
  CHECK(json::parse(slurp(out / "fig13.json")) == json::parse(slurp(kSource / "data" / "sequences" / "fig13.json")));
}

TEST_CASE("validate --json") {
  REQUIRE(qubus_cmd("validate --filter area --json") == 0);
  const json checks = json::parse(slurp(scratch() / "stdout.txt")).at("checks");
  REQUIRE(checks.is_array());
  CHECK(checks.size() >= 3);
  for (const auto& c : checks) CHECK(c.at("passed") == true);
}
