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

#include "qubus/kernels.hpp"

#include <cstdint>

namespace qubus::kernels {

namespace {

void check_shape(const Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit) {
  if (qubit < 0 || qubit >= n_qubits) throw InvalidArgument("qubit index out of range");
  if (psi.size() != (Eigen::Index{1} << n_qubits) * dim) {
    throw InvalidArgument("joint vector size does not match 2^n * dim");
  }
}

}  // namespace

namespace serial {

void apply_blockwise(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit,
                     const Eigen::MatrixXcd& op0, const Eigen::MatrixXcd& op1) {
  check_shape(psi, n_qubits, dim, qubit);
  const Label labels = Label{1} << n_qubits;
  Eigen::VectorXcd tmp(dim);
  for (Label l = 0; l < labels; ++l) {
    auto block = psi.segment(static_cast<Eigen::Index>(l) * dim, dim);
    tmp.noalias() = (bit_of(l, qubit, n_qubits) == 0 ? op0 : op1) * block;
    block = tmp;
  }
}

void apply_diagonal_blockwise(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit,
                              const Eigen::VectorXcd& d0, const Eigen::VectorXcd& d1) {
  check_shape(psi, n_qubits, dim, qubit);
  const Label labels = Label{1} << n_qubits;
  for (Label l = 0; l < labels; ++l) {
    const Eigen::VectorXcd& d = bit_of(l, qubit, n_qubits) == 0 ? d0 : d1;
    for (int n = 0; n < dim; ++n) psi(static_cast<Eigen::Index>(l) * dim + n) *= d(n);
  }
}

void mix_qubit(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit, const Gate2& u) {
  check_shape(psi, n_qubits, dim, qubit);
  const Label labels = Label{1} << n_qubits;
  for (Label l0 = 0; l0 < labels; ++l0) {
    if (bit_of(l0, qubit, n_qubits) != 0) continue;
    const Label l1 = flip_bit(l0, qubit, n_qubits);
    for (int n = 0; n < dim; ++n) {
      Complex& a = psi(static_cast<Eigen::Index>(l0) * dim + n);
      Complex& b = psi(static_cast<Eigen::Index>(l1) * dim + n);
      const Complex na = u[0][0] * a + u[0][1] * b;
      const Complex nb = u[1][0] * a + u[1][1] * b;
      a = na;
      b = nb;
    }
  }
}

}  // namespace serial

namespace parallel {

void apply_blockwise(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit,
                     const Eigen::MatrixXcd& op0, const Eigen::MatrixXcd& op1) {
  check_shape(psi, n_qubits, dim, qubit);
  const auto labels = static_cast<std::int64_t>(Label{1} << n_qubits);
  // Row-parallel within each block: a label count of 2^n alone is too small
  // to keep threads busy for the two-qubit circuits.
  Eigen::VectorXcd out(psi.size());
#pragma omp parallel for collapse(2) schedule(static)
  for (std::int64_t l = 0; l < labels; ++l) {
    for (int r = 0; r < dim; ++r) {
      const Eigen::MatrixXcd& op = bit_of(static_cast<Label>(l), qubit, n_qubits) == 0 ? op0 : op1;
      const Eigen::Index base = static_cast<Eigen::Index>(l) * dim;
      Complex acc{};
      for (int c = 0; c < dim; ++c) acc += op(r, c) * psi(base + c);
      out(base + r) = acc;
    }
  }
  psi.swap(out);
}

void apply_diagonal_blockwise(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit,
                              const Eigen::VectorXcd& d0, const Eigen::VectorXcd& d1) {
  check_shape(psi, n_qubits, dim, qubit);
  const auto total = static_cast<std::int64_t>(psi.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < total; ++i) {
    const Label l = static_cast<Label>(i / dim);
    const int n = static_cast<int>(i % dim);
    psi(i) *= bit_of(l, qubit, n_qubits) == 0 ? d0(n) : d1(n);
  }
}

void mix_qubit(Eigen::VectorXcd& psi, int n_qubits, int dim, int qubit, const Gate2& u) {
  check_shape(psi, n_qubits, dim, qubit);
  const auto half = static_cast<std::int64_t>(Label{1} << (n_qubits - 1)) * dim;
  const int low_bits = n_qubits - 1 - qubit;
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < half; ++i) {
    // i enumerates (label with the qubit bit removed, level)
    const Label rest = static_cast<Label>(i / dim);
    const int n = static_cast<int>(i % dim);
    const Label low = rest & ((Label{1} << low_bits) - 1);
    const Label high = rest >> low_bits;
    const Label l0 = (high << (low_bits + 1)) | low;
    const Label l1 = l0 | (Label{1} << low_bits);
    Complex& a = psi(static_cast<Eigen::Index>(l0) * dim + n);
    Complex& b = psi(static_cast<Eigen::Index>(l1) * dim + n);
    const Complex na = u[0][0] * a + u[0][1] * b;
    const Complex nb = u[1][0] * a + u[1][1] * b;
    a = na;
    b = nb;
  }
}

}  // namespace parallel

}  // namespace qubus::kernels
