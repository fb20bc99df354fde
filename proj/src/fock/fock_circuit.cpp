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

#include "qubus/fock_circuit.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qubus/circuit.hpp"
#include "qubus/fock.hpp"
#include "qubus/kernels.hpp"

namespace qubus {

Eigen::VectorXcd embed(const HybridState& s, int dim) {
  if (s.bus_consumed()) throw InvalidArgument("cannot embed a state whose bus was measured");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero((Eigen::Index{1} << s.n_qubits()) * dim);
  for (const auto& b : s.branches()) {
    psi.segment(static_cast<Eigen::Index>(b.label) * dim, dim) += b.coeff * coherent_fock(b.bus, dim);
  }
  return psi;
}

int oracle_dim_for(const HybridState& s, std::span<const BusOp> ops) {
  const CircuitRun run = run_circuit(s, ops);
  double max_step = 0.0;
  for (const auto& op : ops) {
    if (const auto* d = std::get_if<CondDisp>(&op)) max_step = std::max(max_step, std::abs(d->beta));
    if (const auto* d = std::get_if<UncondDisp>(&op)) max_step = std::max(max_step, std::abs(d->beta));
  }
  const double amp = max_bus_amplitude(run.trajectory);
  int dim = truncation_rule(amp + max_step);
  // keep the top decile essentially empty so the post-run check is meaningful
  while (coherent_tail_mass(Complex{amp, 0.0}, static_cast<int>(std::floor(0.9 * dim))) > 1e-12) ++dim;
  return dim;
}

Eigen::VectorXcd run_circuit_fock(int n_qubits, std::span<const Complex> qubit_amps,
                                  Complex alpha, std::span<const BusOp> ops, int dim,
                                  bool parallel) {
  if (n_qubits <= 0 || n_qubits > 20) throw InvalidArgument("n_qubits must be in [1, 20]");
  const std::size_t labels = std::size_t{1} << n_qubits;
  if (qubit_amps.size() != labels) throw InvalidArgument("qubit amplitude count must be 2^n");
  for (const auto& op : ops) validate(op, n_qubits);

  const Eigen::VectorXcd bus = coherent_fock(alpha, dim);
  Eigen::VectorXcd psi(static_cast<Eigen::Index>(labels) * dim);
  for (std::size_t l = 0; l < labels; ++l) {
    psi.segment(static_cast<Eigen::Index>(l) * dim, dim) = qubit_amps[l] * bus;
  }

  auto blockwise = parallel ? kernels::parallel::apply_blockwise : kernels::serial::apply_blockwise;
  auto diagonal = parallel ? kernels::parallel::apply_diagonal_blockwise
                           : kernels::serial::apply_diagonal_blockwise;
  auto mix = parallel ? kernels::parallel::mix_qubit : kernels::serial::mix_qubit;

  for (const auto& op : ops) {
    if (const auto* o = std::get_if<CondDisp>(&op)) {
      blockwise(psi, n_qubits, dim, o->qubit, displacement_matrix(o->beta, dim),
                displacement_matrix(-o->beta, dim));
    } else if (const auto* o = std::get_if<CondRot>(&op)) {
      diagonal(psi, n_qubits, dim, o->qubit, number_phase_diagonal(o->theta, dim),
               number_phase_diagonal(-o->theta, dim));
    } else if (const auto* o = std::get_if<UncondDisp>(&op)) {
      const Eigen::MatrixXcd d = displacement_matrix(o->beta, dim);
      blockwise(psi, n_qubits, dim, 0, d, d);
    } else {
      const auto& g = std::get<SingleQubit>(op);
      mix(psi, n_qubits, dim, g.qubit, g.u);
    }
  }

  const auto start = static_cast<int>(std::floor(0.9 * dim));
  double tail = 0.0;
  for (std::size_t l = 0; l < labels; ++l) {
    tail += psi.segment(static_cast<Eigen::Index>(l) * dim + start, dim - start).squaredNorm();
  }
  if (tail > 1e-8) {
    throw TruncationError("Fock dimension " + std::to_string(dim) +
                          " inadequate: top-decile mass " + std::to_string(tail));
  }
  const double in_norm = [&] {
    double t = 0.0;
    for (Complex c : qubit_amps) t += std::norm(c);
    return t;
  }();
  if (std::abs(psi.squaredNorm() - in_norm) > 1e-9 * std::max(1.0, in_norm)) {
    throw TruncationError("oracle evolution lost norm (" + std::to_string(psi.squaredNorm()) +
                          " vs " + std::to_string(in_norm) + ")");
  }
  return psi;
}

double joint_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size()) throw InvalidArgument("joint vectors differ in size");
  const double na = a.squaredNorm();
  const double nb = b.squaredNorm();
  if (!(na > 0.0) || !(nb > 0.0)) throw InvalidArgument("zero joint vector");
  return std::norm(a.dot(b)) / (na * nb);
}

}  // namespace qubus
