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

#include "qubus/hybrid_state.hpp"

namespace qubus {

/// rho[l_i, l_j] = sum c_i conj(c_j) <bus_j|bus_i>, the qubit state with
/// the bus traced out. Rows/columns are indexed by Label.
Eigen::MatrixXcd reduced_qubit_density(const HybridState& s);

/// Wootters concurrence of a two-qubit density matrix. Throws
/// InvalidArgument if rho is not Hermitian, unit trace and PSD (to 1e-10).
double concurrence(const Eigen::Matrix4cd& rho);
double concurrence(const Eigen::MatrixXcd& rho);

/// <target|rho|target> for a normalized pure target.
double fidelity_to(const Eigen::MatrixXcd& rho, std::span<const Complex> target);
double fidelity_to(const HybridState& s, std::span<const Complex> target);

/// Throws InvalidArgument unless rho is a valid density matrix.
void check_density_matrix(const Eigen::MatrixXcd& rho, double tol = 1e-10);

}  // namespace qubus
