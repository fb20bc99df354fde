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

#include <array>
#include <string>
#include <variant>

#include "qubus/hybrid_state.hpp"

namespace qubus {

using Gate2 = std::array<std::array<Complex, 2>, 2>;

namespace gates {
Gate2 hadamard();
Gate2 pauli_x();
Gate2 pauli_z();
/// 2^{-1/2}(1 - i sigma_z) = exp(-i pi/4 sigma_z).
Gate2 minus_quarter_z();
/// 2^{-1/2}(1 - i sigma_x) = exp(-i pi/4 sigma_x).
Gate2 minus_quarter_x();
Gate2 multiply(const Gate2& a, const Gate2& b);
bool is_unitary(const Gate2& u, double tol = 1e-12);
}  // namespace gates

/// D(sigma_z beta) on the bus, sigma_z taken from `qubit`.
struct CondDisp {
  int qubit = 0;
  Complex beta;
};
/// exp(i theta sigma_z a^dagger a).
struct CondRot {
  int qubit = 0;
  double theta = 0.0;
};
/// D(beta) regardless of the qubits.
struct UncondDisp {
  Complex beta;
};
struct SingleQubit {
  int qubit = 0;
  Gate2 u{};
};

using BusOp = std::variant<CondDisp, CondRot, UncondDisp, SingleQubit>;

HybridState apply_cond_disp(const HybridState& s, int qubit, Complex beta);
HybridState apply_cond_rot(const HybridState& s, int qubit, double theta);
HybridState apply_uncond_disp(const HybridState& s, Complex beta);
HybridState apply_single_qubit(const HybridState& s, int qubit, const Gate2& u);

HybridState apply_op(const HybridState& s, const BusOp& op);

/// Throws InvalidArgument if `op` does not fit an n-qubit register.
void validate(const BusOp& op, int n_qubits);

/// Short human-readable form, e.g. "cond_disp(q0, 1+0.5i)".
std::string describe(const BusOp& op);

}  // namespace qubus
