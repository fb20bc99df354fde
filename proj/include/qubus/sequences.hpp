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

#include <cstddef>
#include <string>
#include <vector>

#include "qubus/bus_ops.hpp"

namespace qubus {

/// Circuit element with symbolic magnitude: rotations by sign * theta,
/// displacements by sign * (dir ? i : 1) * beta.
struct SymOp {
  enum class Kind { kRot, kCondDisp, kDisp };
  Kind kind = Kind::kRot;
  int qubit = 0;
  int sign = 1;
  int dir = 0;

  bool operator==(const SymOp&) const = default;
};

std::string to_string(const SymOp& op);
/// Position in the search alphabet; sequences are ordered by these indices.
int alphabet_index(const SymOp& op);
SymOp parse_sym_op(const std::string& text);

BusOp instantiate(const SymOp& op, double theta, double beta);
std::vector<BusOp> instantiate(const std::vector<SymOp>& seq, double theta, double beta);

struct SequenceGridPoint {
  double alpha;
  double theta;
};
const std::vector<SequenceGridPoint>& sequence_grid();

enum class Fig13Target { kNominal, kCorrected };

/// Rotation+displacement parity gate: bus starts at alpha, beta = (alpha/2) sin 2 theta.
/// Residual = max deviation of per-label bus amplitudes from the target over the grid.
double fig13_residual(const std::vector<SymOp>& seq, Fig13Target target);
/// Rotation-only gate: bus starts at alpha e^{i pi/4}, beta = sqrt(2) alpha.
/// Residual covers alpha_+-, the return of the odd labels and phi_ge = phi_eg.
double fig11_residual(const std::vector<SymOp>& seq);

struct SearchResult {
  std::string target;
  std::vector<SymOp> sequence;
  /// Matches at the shortest matching length / at any searched length.
  std::size_t multiplicity = 0;
  std::size_t total_matches = 0;
  double residual = 0.0;
  std::size_t examined = 0;
  std::vector<std::vector<SymOp>> matches;
};

/// Shortest, then lexicographically first, matching sequence. `found` is
/// false on exhaustion (sequence empty).
struct SearchOutcome {
  bool found = false;
  SearchResult result;
};
SearchOutcome search_fig13(Fig13Target target, double tol = 1e-9);
SearchOutcome search_fig11(double tol = 1e-9);

const std::vector<SymOp>& frozen_fig11();
const std::vector<SymOp>& frozen_fig13();

}  // namespace qubus
