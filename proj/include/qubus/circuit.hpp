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

#include <map>
#include <span>
#include <string>
#include <vector>

#include "qubus/bus_ops.hpp"

namespace qubus {

/// Bus amplitudes per computational-basis label after one circuit stage.
/// A label carries more than one amplitude only after single-qubit gates
/// have split branches.
struct TrajectoryStage {
  std::string op;
  std::map<Label, std::vector<Complex>> buses;
};

struct CircuitRun {
  HybridState final;
  /// Stage 0 is the input state; stage k is the state after ops[k-1].
  std::vector<TrajectoryStage> trajectory;
};

TrajectoryStage snapshot(const HybridState& s, std::string op);

CircuitRun run_circuit(const HybridState& s, std::span<const BusOp> ops);

/// Largest |bus| seen along a trajectory.
double max_bus_amplitude(const std::vector<TrajectoryStage>& trajectory);

}  // namespace qubus
