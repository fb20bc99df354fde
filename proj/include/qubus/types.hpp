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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qubus {

using Complex = std::complex<double>;

/// Computational-basis label of an n-qubit register. Qubit 0 is the most
/// significant bit, so the integer value is the row index into 2^n x 2^n
/// qubit matrices and `label_string` prints qubit 0 first.
using Label = std::uint64_t;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller supplied something outside an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A valid request that cannot be completed (branch cap, convergence, ...).
class SimulationError : public Error {
 public:
  using Error::Error;
};

/// The Fock-space truncation is too small for the requested evolution.
class TruncationError : public SimulationError {
 public:
  using SimulationError::SimulationError;
};

inline int bit_of(Label label, int qubit, int n_qubits) {
  return static_cast<int>((label >> (n_qubits - 1 - qubit)) & 1U);
}

inline Label flip_bit(Label label, int qubit, int n_qubits) {
  return label ^ (Label{1} << (n_qubits - 1 - qubit));
}

/// +1 for |0> (sigma_z = +1), -1 for |1>.
inline double sigma_z_sign(Label label, int qubit, int n_qubits) {
  return bit_of(label, qubit, n_qubits) == 0 ? 1.0 : -1.0;
}

std::string label_string(Label label, int n_qubits);

bool is_finite(Complex z);

}  // namespace qubus
