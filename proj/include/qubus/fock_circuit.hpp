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

#include <span>

#include <Eigen/Dense>

#include "qubus/bus_ops.hpp"

namespace qubus {

/// Joint vector sum_i coeff_i |label_i> (x) |bus_i>, index label * dim + n.
Eigen::VectorXcd embed(const HybridState& s, int dim);

/// Dimension from a dry branch-engine run: largest trajectory amplitude plus
/// the largest displacement in ops.
int oracle_dim_for(const HybridState& s, std::span<const BusOp> ops);

/// Dense evolution of the product input (qubit_amps) (x) |alpha>.
/// Throws TruncationError when the final top-decile mass exceeds 1e-8.
Eigen::VectorXcd run_circuit_fock(int n_qubits, std::span<const Complex> qubit_amps,
                                  Complex alpha, std::span<const BusOp> ops, int dim,
                                  bool parallel = true);

/// |<a|b>|^2 / (|a|^2 |b|^2).
double joint_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

}  // namespace qubus
