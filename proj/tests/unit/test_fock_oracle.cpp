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

#include <cmath>
#include <vector>

#include <doctest.h>

#include "qubus/circuit.hpp"
#include "qubus/dispersive.hpp"
#include "qubus/fock.hpp"
#include "qubus/fock_circuit.hpp"
#include "qubus/qubit_analysis.hpp"
#include "qubus/sandwich.hpp"

using namespace qubus;

namespace {

Eigen::MatrixXcd qubit_density(const Eigen::VectorXcd& psi, int labels, int dim) {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(labels, labels);
  for (int i = 0; i < labels; ++i)
    for (int j = 0; j < labels; ++j)
      for (int n = 0; n < dim; ++n) rho(i, j) += psi(i * dim + n) * std::conj(psi(j * dim + n));
  return rho / rho.trace().real();
}

double overlap_fidelity(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm());
}

}  // namespace

TEST_CASE("truncation rule covers the Poisson tail") {
  for (double a : {0.0, 0.5, 1.0, 2.0, 4.0, 7.0}) {
    const int dim = truncation_rule(a);
    CHECK(dim >= static_cast<int>(std::ceil(a * a + 6.0 * std::sqrt(a * a + 1.0))));
    CHECK(coherent_tail_mass({a, 0.0}, dim) < 1e-14);
  }
  CHECK(truncation_rule(3.0) >= truncation_rule(2.0));
}

TEST_CASE("coherent states in the number basis") {
  const auto vac = coherent_fock({}, 10);
  CHECK(std::abs(vac(0) - 1.0) < 1e-15);
  CHECK(vac.tail(9).norm() < 1e-15);
  const int dim = truncation_rule(2.0);
  const auto c = coherent_fock({2.0, 0.0}, dim);
  CHECK(c.norm() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::norm(c(0)) == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
  // <n|i x> carries the phase i^n.
  const auto ci = coherent_fock({0.0, 0.3}, 20);
  for (int n = 1; n < 6; ++n) {
    const Complex ratio = ci(n) / std::pow(kI, n);
    CHECK(std::abs(ratio.imag()) < 1e-15);
    CHECK(ratio.real() > 0.0);
  }
  CHECK_THROWS_AS(coherent_fock({3.0, 0.0}, 8), TruncationError);
}

TEST_CASE("displacement matrix") {
  const int dim = 60;
  CHECK((displacement_matrix({}, dim) - Eigen::MatrixXcd::Identity(dim, dim)).norm() < 1e-12);
  const Complex beta{0.8, -0.6}, alpha{1.1, 0.4};
  const auto d = displacement_matrix(beta, dim);
  const auto dm = displacement_matrix(-beta, dim);
  CHECK(((d * dm) - Eigen::MatrixXcd::Identity(dim, dim)).topLeftCorner(30, 30).norm() < 1e-9);
  // Cropping only preserves unitarity on levels whose spread stays inside.
  CHECK(unitarity_defect(displacement_matrix({0.3, 0.0}, 200)) < 1e-9);
  const Eigen::VectorXcd moved = d * coherent_fock(alpha, dim);
  const Eigen::VectorXcd target = std::exp(kI * std::imag(beta * std::conj(alpha))) * coherent_fock(alpha + beta, dim);
  CHECK((moved - target).norm() < 1e-9);
  // D(1) D(i) = exp((1 * conj(i) - conj(1) * i) / 2) D(1 + i) = e^{-i} D(1 + i).
  const Eigen::MatrixXcd prod = displacement_matrix({1.0, 0.0}, dim) * displacement_matrix({0.0, 1.0}, dim);
  const Eigen::MatrixXcd single = std::exp(-kI) * displacement_matrix({1.0, 1.0}, dim);
  CHECK((prod - single).topLeftCorner(30, 30).norm() < 1e-9);
}

TEST_CASE("number phase") {
  const int dim = 40;
  CHECK((number_phase_matrix(0.0, dim) - Eigen::MatrixXcd::Identity(dim, dim)).norm() < 1e-15);
  CHECK((number_phase_matrix(2.0 * kPi, dim) - Eigen::MatrixXcd::Identity(dim, dim)).norm() < 1e-12);
  const double theta = 0.37;
  const Eigen::VectorXcd rotated = number_phase_matrix(theta, dim) * coherent_fock({2.0, 0.0}, dim);
  CHECK(overlap_fidelity(rotated, coherent_fock(2.0 * std::exp(kI * theta), dim)) >= 1.0 - 1e-9);
}

TEST_CASE("oracle circuits") {
  const std::vector<Complex> amps{0.5, 0.5, 0.5, 0.5};
  const Complex alpha{0.4, 0.1};
  SUBCASE("identity circuit returns the input") {
    const int dim = 20;
    const auto psi = run_circuit_fock(2, amps, alpha, {}, dim);
    CHECK(joint_fidelity(psi, embed(HybridState::product(2, amps, alpha), dim)) >= 1.0 - 1e-12);
  }
  SUBCASE("parity circuit matches the branch engine") {
    const std::vector<BusOp> ops{CondDisp{0, 1.5}, CondDisp{1, 1.5}};
    const auto input = HybridState::product(2, amps, alpha);
    const int dim = oracle_dim_for(input, ops);
    const auto psi = run_circuit_fock(2, amps, alpha, ops, dim);
    CHECK(joint_fidelity(psi, embed(run_circuit(input, ops).final, dim)) >= 1.0 - 1e-9);
  }
  SUBCASE("geometric phase gate is maximally entangling") {
    const double b = std::sqrt(kPi / 8.0);
    const std::vector<BusOp> ops{CondDisp{0, b}, CondDisp{1, Complex{0.0, b}}, CondDisp{0, -b},
                                 CondDisp{1, Complex{0.0, -b}}};
    const int dim = oracle_dim_for(HybridState::product(2, amps, alpha), ops);
    const auto psi = run_circuit_fock(2, amps, alpha, ops, dim);
    const Eigen::MatrixXcd rho = qubit_density(psi, 4, dim);
    CHECK(std::abs((rho * rho).trace().real() - 1.0) < 1e-9);
    CHECK(concurrence(rho) == doctest::Approx(1.0).epsilon(1e-6));
  }
  SUBCASE("serial and OpenMP kernels agree") {
    const std::vector<BusOp> ops{CondDisp{0, 0.7}, SingleQubit{1, gates::hadamard()}, CondRot{1, 0.4},
                                 UncondDisp{{-0.2, 0.3}}};
    const auto a = run_circuit_fock(2, amps, alpha, ops, 30, false);
    const auto b = run_circuit_fock(2, amps, alpha, ops, 30, true);
    CHECK((a - b).norm() < 1e-14);
  }
  SUBCASE("too small a space is rejected") {
    const std::vector<BusOp> ops{CondDisp{0, 4.0}};
    CHECK_THROWS_AS(run_circuit_fock(2, amps, alpha, ops, 12), TruncationError);
  }
}

TEST_CASE("sandwich construction") {
  const int dim = 64;
  CHECK(sandwich_displacement({1.0, 0.0}, 0.0, dim).error < 1e-12);
  const auto r1 = sandwich_displacement({1.0, 0.0}, 0.1, dim);
  const auto r2 = sandwich_displacement({1.0, 0.0}, 0.05, dim);
  CHECK(r1.error / r2.error == doctest::Approx(8.0).epsilon(0.2));
  CHECK(r1.unitarity_defect < 1e-9);
  const Complex d1 = induced_displacement({1.0, 0.0}, 0.05, dim);
  const Complex d2 = induced_displacement({2.0, 0.0}, 0.05, dim);
  CHECK(std::abs(d2) / std::abs(d1) == doctest::Approx(2.0).epsilon(0.02));
  CHECK_THROWS_AS(sandwich_displacement({1.0, 0.0}, 0.5, dim), InvalidArgument);
}

TEST_CASE("dispersive JC model") {
  JCParams p;
  p.omega0 = 10.0;
  p.omega_c = 30.0;
  p.delta_d = 20.0;
  p.Omega = 0.0;
  p.t_final = 5.0;
  CHECK(std::abs(dispersive_jc_validate(p, {1.0, 0.0}, 20).chi_eff) < 1e-12);
  p.Omega = 1.0;
  p.t_final = 80.0;
  const auto fit = dispersive_jc_validate(p, {1.0, 0.0}, 20);
  CHECK(fit.chi_predicted == doctest::Approx(1.0 / 80.0));
  CHECK(fit.relative_error < 0.05);
  CHECK(fit.step_change < 1e-3);
  p.Omega = 5.0;
  CHECK_THROWS_AS(dispersive_jc_validate(p, {1.0, 0.0}, 20), InvalidArgument);
  p.Omega = 1.0;
  p.delta_d = 0.0;
  CHECK_THROWS_AS(dispersive_jc_validate(p, {1.0, 0.0}, 20), InvalidArgument);
}
