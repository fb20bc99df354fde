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
#include "qubus/fock.hpp"
#include "qubus/measurement.hpp"
#include "qubus/qubit_analysis.hpp"

using namespace qubus;

namespace {

double gauss(double x, double mean, double var) {
  return std::exp(-(x - mean) * (x - mean) / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
}

// (|00> + |01> + |10> + |11>)/2 after CondDisp(beta) on both qubits from vacuum.
HybridState parity_state(double beta) {
  const std::vector<BusOp> ops{CondDisp{0, beta}, CondDisp{1, beta}};
  return run_circuit(HybridState::plus_all(2, {}), ops).final;
}

const std::vector<Complex> kOddBell{0.0, std::sqrt(0.5), std::sqrt(0.5), 0.0};

}  // namespace

TEST_CASE("homodyne density of a single coherent branch") {
  const Complex alpha{0.7, -0.4};
  const auto s = HybridState::basis(1, 0, alpha);
  const auto pdf = homodyne_pdf(s, Homodyne{});
  for (double x : {-2.0, 0.0, 1.4, 3.0}) CHECK(pdf(x) == doctest::Approx(gauss(x, 1.4, 1.0)).epsilon(1e-12));
  const auto noisy = homodyne_pdf(s, Homodyne{0.0, 0.5});
  for (double x : {-2.0, 0.0, 1.4, 3.0}) CHECK(noisy(x) == doctest::Approx(gauss(x, 1.4, 1.5)).epsilon(1e-12));
  // X(pi/2) reads the imaginary part.
  const auto p2 = homodyne_pdf(s, Homodyne{kPi / 2.0, 0.0});
  CHECK(p2(-0.8) == doctest::Approx(gauss(0.0, 0.0, 1.0)).epsilon(1e-12));
}

TEST_CASE("QND peaks sit 4 beta apart") {
  const double beta = 2.0;
  const std::vector<Complex> amps{std::sqrt(0.5), std::sqrt(0.5)};
  const auto s = apply_cond_disp(HybridState::product(1, amps, {}), 0, beta);
  const HomodynePdf pdf(s, Homodyne{});
  CHECK(pdf.label_density(0, 4.0) == doctest::Approx(0.5 * gauss(0.0, 0.0, 1.0)).epsilon(1e-12));
  CHECK(pdf.label_density(1, -4.0) == doctest::Approx(0.5 * gauss(0.0, 0.0, 1.0)).epsilon(1e-12));
  const auto [lo, hi] = pdf.support();
  CHECK(pdf.integrate(lo, hi) == doctest::Approx(1.0).epsilon(1e-8));
  // Mass of the |0> peak on the wrong side of the midpoint.
  const double wrong = pdf.label_integrate(0, lo, 0.0) / 0.5;
  CHECK(wrong == doctest::Approx(discrimination_error(2.0 * beta, 1.0)).epsilon(1e-8));
}

TEST_CASE("error function forms") {
  CHECK(discrimination_error(0.0, 1.0) == doctest::Approx(0.5));
  CHECK(qnd_error_nominal(3.0) == doctest::Approx(0.5 * std::erfc(3.0 / std::sqrt(2.0))).epsilon(1e-15));
  CHECK(qnd_error_nominal(3.0) == doctest::Approx(1.3498980316300957e-3).epsilon(1e-12));
  CHECK(qnd_error_nominal(2.0, 1.0) == doctest::Approx(qnd_error_nominal(2.0 / std::sqrt(2.0))).epsilon(1e-15));
  CHECK(discrimination_error(3.0, 2.0) == doctest::Approx(0.5 * std::erfc(3.0 / 2.0)).epsilon(1e-15));
}

TEST_CASE("quadrature kernel matches its number-basis expansion") {
  const Complex alpha{1.0, -0.5};
  for (double x : {-3.0, 0.0, 1.0, 4.0}) {
    const double y = x / std::sqrt(2.0);
    double h0 = std::pow(kPi, -0.25) * std::exp(-y * y / 2.0) * std::pow(2.0, -0.25);
    double h1 = std::sqrt(2.0) * y * h0;
    Complex sum = h0 * number_amplitude(0, alpha) + h1 * number_amplitude(1, alpha);
    for (int n = 2; n < 80; ++n) {
      const double h2 = std::sqrt(2.0 / n) * y * h1 - std::sqrt((n - 1.0) / n) * h0;
      h0 = h1;
      h1 = h2;
      sum += h1 * number_amplitude(n, alpha);
    }
    CHECK(std::abs(sum - quadrature_kernel(x, alpha)) < 1e-12);
  }
}

TEST_CASE("homodyne conditioning") {
  SUBCASE("single branch: posterior is the input qubit state") {
    const std::vector<Complex> amps{0.6, Complex{0.0, 0.8}};
    const auto s = HybridState::product(1, amps, {1.0, 0.0});
    const auto rec = homodyne_measure_at(s, Homodyne{}, 0.3);
    CHECK(rec.posterior.bus_consumed());
    CHECK(fidelity_to(rec.posterior, amps) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("parity state near x = 0 heralds the odd Bell state") {
    const auto rec = homodyne_measure_at(parity_state(3.0), Homodyne{}, 0.1);
    CHECK(fidelity_to(rec.posterior, kOddBell) >= 1.0 - 1e-6);
  }
  SUBCASE("impossible forced outcome") {
    CHECK_THROWS_AS(homodyne_measure_at(HybridState::basis(1, 0, {}), Homodyne{}, 1e3), SimulationError);
  }
  SUBCASE("readout noise keeps the latent value") {
    Philox rng(3, 0);
    const auto rec = homodyne_measure(HybridState::basis(1, 0, {}), Homodyne{0.0, 2.0}, rng);
    CHECK(std::get<double>(rec.outcome) != rec.latent);
  }
  SUBCASE("measuring a consumed bus is an error") {
    const auto rec = homodyne_measure_at(HybridState::basis(1, 0, {}), Homodyne{}, 0.0);
    CHECK_THROWS_AS(homodyne_measure_at(rec.posterior, Homodyne{}, 0.0), SimulationError);
  }
}

TEST_CASE("photon counting") {
  CHECK(photon_number_probability(HybridState::basis(1, 0, {}), 0) == doctest::Approx(1.0));
  const auto s = parity_state(3.0);
  const auto pmf = photon_number_pmf(s, 200);
  double total = 0.0;
  for (double p : pmf) total += p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(pmf[0] == doctest::Approx(0.5 + 0.5 * std::exp(-36.0)).epsilon(1e-12));
  const auto zero = photon_number_measure_at(s, 0);
  CHECK(fidelity_to(zero.posterior, kOddBell) >= 1.0 - 1e-10);
  CHECK_FALSE(zero.posterior.bus_consumed());
  for (std::int64_t n : {1, 2, 35, 36}) {
    const auto rec = photon_number_measure_at(s, n);
    CHECK(rec.posterior.bus_consumed());
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    const std::vector<Complex> even{std::sqrt(0.5), 0.0, 0.0, sign * std::sqrt(0.5)};
    CHECK(fidelity_to(rec.posterior, even) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(photon_number_measure_at(rec.posterior, 0), SimulationError);
  }
  CHECK_THROWS_AS(photon_number_measure_at(HybridState::basis(1, 0, {}), 3), SimulationError);
}

TEST_CASE("bucket detection") {
  CHECK(bucket_click_probability(HybridState::basis(1, 0, {})) < 1e-15);
  const auto s = parity_state(3.0);
  const auto none = bucket_measure_at(s, Bucket{}, false);
  CHECK(none.probability == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fidelity_to(none.posterior.components[0].second, kOddBell) >= 1.0 - 1e-12);

  // Click weight of the even part against a direct Poisson parity sum.
  const double beta = 0.5;
  const auto click = bucket_measure_at(parity_state(beta), Bucket{}, true);
  const double m = 4.0 * beta * beta;
  double even = 0.0, odd = 0.0, term = std::exp(-m);
  for (int n = 1; n < 80; ++n) {
    term *= m / n;
    (n % 2 == 0 ? even : odd) += term;
  }
  CHECK(click.even_weight == doctest::Approx(even / (even + odd)).epsilon(1e-12));
  CHECK_NOTHROW(click.posterior.check());
  CHECK(bucket_measure_at(parity_state(beta), Bucket{true}, true).even_weight == doctest::Approx(0.5));
}

TEST_CASE("posteriors average back to the pre-measurement state") {
  const auto s = parity_state(0.8);
  const Eigen::MatrixXcd rho = reduced_qubit_density(s);
  const int n = 20000;
  Eigen::MatrixXcd hom = Eigen::MatrixXcd::Zero(4, 4), num = Eigen::MatrixXcd::Zero(4, 4);
  for (int i = 0; i < n; ++i) {
    Philox rng(11, static_cast<std::uint64_t>(i));
    hom += reduced_qubit_density(homodyne_measure(s, Homodyne{}, rng).posterior);
    num += reduced_qubit_density(photon_number_measure(s, rng).posterior);
  }
  const double tol = 5.0 / std::sqrt(static_cast<double>(n));
  CHECK((hom / n - rho).cwiseAbs().maxCoeff() < tol);
  CHECK((num / n - rho).cwiseAbs().maxCoeff() < tol);
}

TEST_CASE("eigen-ensembles reproduce their density matrix") {
  Eigen::MatrixXcd rho(2, 2);
  rho << 0.7, Complex{0.1, 0.2}, Complex{0.1, -0.2}, 0.3;
  const auto e = ensemble_from_density(rho, 1);
  CHECK_NOTHROW(e.check());
  CHECK((e.density() - rho).norm() < 1e-12);
}

TEST_CASE("model validation") {
  CHECK_THROWS_AS(validate(MeasurementModel{Homodyne{0.0, -1.0}}), InvalidArgument);
  CHECK_NOTHROW(validate(MeasurementModel{PhotonNumber{}}));
}
