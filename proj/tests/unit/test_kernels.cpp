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

#include <vector>

#include <doctest.h>

#include "qubus/kernels.hpp"
#include "qubus/parallel.hpp"
#include "qubus/rng.hpp"

using namespace qubus;

namespace {

Eigen::VectorXcd random_vector(Eigen::Index n, std::uint64_t seed) {
  Philox rng(seed, 0);
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex{rng.normal(), rng.normal()};
  return v.normalized();
}

Eigen::MatrixXcd random_matrix(int dim, std::uint64_t seed) {
  Philox rng(seed, 1);
  Eigen::MatrixXcd m(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) m(r, c) = Complex{rng.normal(), rng.normal()};
  return m;
}

Eigen::MatrixXcd qubit_projector(int n_qubits, int qubit, int bit) {
  // Kronecker factor acting on `qubit`, qubit 0 is the most significant.
  const Eigen::Index labels = Eigen::Index{1} << n_qubits;
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(labels, labels);
  for (Eigen::Index l = 0; l < labels; ++l) {
    if (((l >> (n_qubits - 1 - qubit)) & 1) == bit) p(l, l) = 1.0;
  }
  return p;
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd k(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) k.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
  return k;
}

}  // namespace

TEST_CASE("blockwise kernels agree with the dense joint operator") {
  const int n = 3, dim = 7;
  for (int q = 0; q < n; ++q) {
    const Eigen::MatrixXcd op0 = random_matrix(dim, 10 + q), op1 = random_matrix(dim, 20 + q);
    const Eigen::MatrixXcd full = kron(qubit_projector(n, q, 0), op0) + kron(qubit_projector(n, q, 1), op1);
    const Eigen::VectorXcd psi = random_vector((1 << n) * dim, q);
    const Eigen::VectorXcd want = full * psi;
    Eigen::VectorXcd a = psi, b = psi;
    kernels::serial::apply_blockwise(a, n, dim, q, op0, op1);
    kernels::parallel::apply_blockwise(b, n, dim, q, op0, op1);
    CHECK((a - want).norm() < 1e-12);
    CHECK((b - a).norm() == 0.0);

    const Eigen::VectorXcd d0 = op0.diagonal(), d1 = op1.diagonal();
    Eigen::VectorXcd c = psi, d = psi;
    kernels::serial::apply_diagonal_blockwise(c, n, dim, q, d0, d1);
    kernels::parallel::apply_diagonal_blockwise(d, n, dim, q, d0, d1);
    const Eigen::MatrixXcd diag = kron(qubit_projector(n, q, 0), Eigen::MatrixXcd(d0.asDiagonal())) +
                                  kron(qubit_projector(n, q, 1), Eigen::MatrixXcd(d1.asDiagonal()));
    CHECK((c - diag * psi).norm() < 1e-12);
    CHECK((d - c).norm() == 0.0);
  }
}

TEST_CASE("qubit mixing agrees with the dense joint operator") {
  const int n = 4, dim = 5;
  const Gate2 u{{{Complex{0.6, 0.0}, Complex{0.0, 0.8}}, {Complex{0.0, 0.8}, Complex{0.6, 0.0}}}};
  Eigen::Matrix2cd um;
  um << u[0][0], u[0][1], u[1][0], u[1][1];
  for (int q = 0; q < n; ++q) {
    const Eigen::MatrixXcd left = Eigen::MatrixXcd::Identity(1 << q, 1 << q);
    const Eigen::MatrixXcd right = Eigen::MatrixXcd::Identity((1 << (n - 1 - q)) * dim, (1 << (n - 1 - q)) * dim);
    const Eigen::MatrixXcd full = kron(kron(left, um), right);
    const Eigen::VectorXcd psi = random_vector((1 << n) * dim, 100 + q);
    Eigen::VectorXcd a = psi, b = psi;
    kernels::serial::mix_qubit(a, n, dim, q, u);
    kernels::parallel::mix_qubit(b, n, dim, q, u);
    CHECK((a - full * psi).norm() < 1e-12);
    CHECK((b - a).norm() == 0.0);
  }
}

TEST_CASE("kernels reject mismatched shapes") {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(10);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(5, 5);
  CHECK_THROWS_AS(kernels::serial::apply_blockwise(psi, 2, 5, 0, id, id), InvalidArgument);
  CHECK_THROWS_AS(kernels::parallel::apply_blockwise(psi, 1, 5, 1, id, id), InvalidArgument);
  CHECK_NOTHROW(kernels::parallel::apply_blockwise(psi, 1, 5, 0, id, id));
}

TEST_CASE("indexed runs propagate exceptions") {
  CHECK_THROWS_AS(run_indexed<int>(500, true,
                                   [](std::size_t i) -> int {
                                     if (i == 321) throw SimulationError("boom");
                                     return static_cast<int>(i);
                                   }),
                  SimulationError);
  const auto v = run_indexed<std::size_t>(1000, true, [](std::size_t i) { return i * i; });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == i * i);
}
