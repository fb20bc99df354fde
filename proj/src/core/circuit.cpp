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

#include "qubus/circuit.hpp"

#include <algorithm>
#include <cmath>

namespace qubus {

TrajectoryStage snapshot(const HybridState& s, std::string op) {
  TrajectoryStage stage{std::move(op), {}};
  for (const auto& b : s.branches()) stage.buses[b.label].push_back(b.bus);
  return stage;
}

CircuitRun run_circuit(const HybridState& s, std::span<const BusOp> ops) {
  for (const auto& op : ops) validate(op, s.n_qubits());
  std::vector<TrajectoryStage> trajectory;
  trajectory.reserve(ops.size() + 1);
  trajectory.push_back(snapshot(s, "input"));
  HybridState cur = s;
  for (const auto& op : ops) {
    cur = apply_op(cur, op);
    trajectory.push_back(snapshot(cur, describe(op)));
  }
  return {std::move(cur), std::move(trajectory)};
}

double max_bus_amplitude(const std::vector<TrajectoryStage>& trajectory) {
  double m = 0.0;
  for (const auto& stage : trajectory)
    for (const auto& [label, buses] : stage.buses)
      for (Complex b : buses) m = std::max(m, std::abs(b));
  return m;
}

}  // namespace qubus
