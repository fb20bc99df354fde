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

// Kernels on joint vectors psi[label * dim + n] of n qubits and one mode.
// The serial versions are the reference for the OpenMP ones.

#include <Eigen/Dense>

#include "qubus/bus_ops.hpp"

namespace qubus::kernels {

namespace serial {
void apply_blockwise(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit,
                     const Eigen::MatrixXcd& op0, const Eigen::MatrixXcd& op1);
void apply_diagonal_blockwise(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit,
                              const Eigen::VectorXcd& d0, const Eigen::VectorXcd& d1);
void mix_qubit(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit, const Gate2& u);
}  // namespace serial

namespace parallel {
void apply_blockwise(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit,
                     const Eigen::MatrixXcd& op0, const Eigen::MatrixXcd& op1);
void apply_diagonal_blockwise(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit,
                              const Eigen::VectorXcd& d0, const Eigen::VectorXcd& d1);
void mix_qubit(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit, const Gate2& u);
}  // namespace parallel

}  // namespace qubus::kernels
