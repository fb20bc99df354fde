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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "qubus/protocols.hpp"
#include "qubus/sequences.hpp"

namespace qubus::cli {

using nlohmann::json;

inline constexpr const char* kSchema = "qubus/1";

enum ExitCode : int { kOk = 0, kFailed = 1, kInputError = 2, kRuntimeError = 3 };

// Serialization

/// Shortest round-trip text is not used; every number gets 17 significant
/// digits with '.' as separator regardless of the global locale.
std::string format_double(double x);
std::string bits(Label label, int n_qubits);

json to_json(Complex z);
Complex complex_from_json(const json& j, const std::string& field);
json to_json(const HybridState& s);
json to_json(const MixedOutcome& m);
json to_json(const Eigen::MatrixXcd& m);
json to_json(const Outcome& o);
json to_json(const BusOp& op);
json trajectory_to_json(const std::vector<TrajectoryStage>& stages, int n_qubits);
json rng_info();

BusOp op_from_json(const json& j, int n_qubits, const std::string& field);
/// std::nullopt for "none".
std::optional<MeasurementModel> measurement_from_json(const json& j, const std::string& field);

// Scenarios

struct Scenario {
  int n_qubits = 1;
  std::vector<Complex> amps;
  Complex bus;
  std::optional<std::vector<BusOp>> ops;
  std::string protocol;
  json params = json::object();
  std::optional<MeasurementModel> measure;
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  std::optional<json> forced;
  json source;
};

const std::vector<std::string>& protocol_names();
/// Throws InvalidArgument naming the offending field.
Scenario parse_scenario(const json& j);

struct RunOutput {
  json report;
  json trajectory;
};
RunOutput run_scenario(const Scenario& sc, bool parallel = true);

// Sweeps

struct SweepAxis {
  std::string path;
  std::vector<json> values;
};
struct SweepSpec {
  json base;
  std::vector<SweepAxis> axes;
  std::vector<std::string> metrics;
};

inline constexpr std::size_t kMaxSweepPoints = 1000000;

SweepSpec parse_sweep(const json& j);
/// CSV with one row per grid point; the first axis varies slowest.
std::string run_sweep(const SweepSpec& spec, bool parallel = true);

// Validation

struct CheckResult {
  std::string suite;
  std::string name;
  bool passed = false;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};
struct ValidationOptions {
  std::string filter;
  std::optional<double> merge_tol;
  bool parallel = true;
};
const std::vector<std::string>& validation_suites();

/// Random two-qubit circuit of at most `max_ops` bus operations and
/// single-qubit gates, with a random input.
struct OracleCase {
  std::vector<Complex> amps;
  Complex alpha;
  std::vector<BusOp> ops;
};
OracleCase random_oracle_case(Philox& rng, int max_ops = 10);
/// Fidelity between the branch-engine result and the truncated-Fock run.
double oracle_fidelity(const OracleCase& c, double merge_tol = HybridState::kDefaultMergeTol,
                       bool parallel = true);

std::vector<CheckResult> run_validation(const ValidationOptions& opt);
json to_json(const std::vector<CheckResult>& checks);

// Sequence search

json to_json(const SearchResult& r, bool found);

}  // namespace qubus::cli
