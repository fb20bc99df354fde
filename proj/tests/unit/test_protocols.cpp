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
#include "qubus/protocols.hpp"
#include "qubus/qubit_analysis.hpp"

using namespace qubus;

namespace {

const std::vector<Complex> kPlusPlus{0.5, 0.5, 0.5, 0.5};
const std::vector<Complex> kOddBell{0.0, std::sqrt(0.5), std::sqrt(0.5), 0.0};

std::vector<Complex> random_amps(std::uint64_t seed) {
  Philox rng(seed, 0);
  std::vector<Complex> a(4);
  double n = 0.0;
  for (auto& c : a) {
    c = {rng.normal(), rng.normal()};
    n += std::norm(c);
  }
  for (auto& c : a) c /= std::sqrt(n);
  return a;
}

}  // namespace

TEST_CASE("displacement loop gives a controlled phase") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto amps = random_amps(seed);
    const auto r = cphase_displacement_gate(amps, std::sqrt(kPi / 8.0), std::sqrt(kPi / 8.0),
                                            Complex{0.3, -0.2});
    CHECK(r.metrics.at("process_error") < 1e-12);
    CHECK(r.metrics.at("max_bus_distance") < 1e-12);
    CHECK(r.metrics.at("loop_phase") == doctest::Approx(kPi / 4.0));
  }
  const auto r = cphase_displacement_gate(kPlusPlus, std::sqrt(kPi / 8.0), std::sqrt(kPi / 8.0));
  CHECK(r.metrics.at("concurrence") == doctest::Approx(1.0).epsilon(1e-12));
  // A different loop area is not the target gate.
  CHECK(cphase_displacement_gate(kPlusPlus, 0.5, 0.5).metrics.at("process_error") > 1e-3);
}

TEST_CASE("Hadamard-conjugated loop gives CNOT after local corrections") {
  const double b = std::sqrt(kPi / 8.0);
  const auto r = cnot_displacement_variant(random_amps(9), b, b);
  CHECK(r.metrics.at("process_error") < 1e-12);
  CHECK(r.metrics.at("bus_spread") < 1e-12);
}

TEST_CASE("process matrix rejects circuits that leave the bus entangled") {
  const std::vector<BusOp> ops{CondDisp{0, 1.0}};
  CHECK_THROWS_AS(process_matrix(ops, {}), SimulationError);
  const std::vector<BusOp> loop{CondDisp{0, 1.0}, CondDisp{0, -1.0}};
  const Process p = process_matrix(loop, {});
  for (int i = 0; i < 4; ++i) CHECK(std::abs(p[i][i] - 1.0) < 1e-14);
}

TEST_CASE("QND measurement") {
  const Complex c0{0.6, 0.0}, c1{0.0, 0.8};
  ShotOptions opt;
  opt.shots = 20000;
  opt.seed = 7;
  const auto r = qnd_qubit_measurement(c0, c1, 1.0, 0.0, {}, opt);
  const double e = r.metrics.at("E_exact");
  CHECK(e == doctest::Approx(discrimination_error(2.0, 1.0)).epsilon(1e-12));
  CHECK(std::abs(r.metrics.at("E_empirical") - e) < 5.0 * r.metrics.at("E_empirical_sigma"));
  CHECK(r.metrics.at("p_report0") == doctest::Approx(0.36 * (1 - e) + 0.64 * e).epsilon(1e-12));
  CHECK(std::abs(r.metrics.at("report0_rate") - r.metrics.at("p_report0")) < 0.02);
  CHECK(r.samples.size() == kMaxStoredSamples);

  SUBCASE("shots do not depend on scheduling") {
    ShotOptions serial = opt;
    serial.parallel = false;
    const auto s = qnd_qubit_measurement(c0, c1, 1.0, 0.0, {}, serial);
    CHECK(s.metrics == r.metrics);
    CHECK(s.samples == r.samples);
  }
  SUBCASE("excess noise widens the peaks") {
    const auto n = qnd_qubit_measurement(c0, c1, 1.0, 1.0, {}, {});
    CHECK(n.metrics.at("E_exact") == doctest::Approx(discrimination_error(2.0, 2.0)).epsilon(1e-12));
    CHECK(n.metrics.at("E_paper") == doctest::Approx(qnd_error_nominal(1.0, 1.0)));
  }
  SUBCASE("forced outcome") {
    ShotOptions f;
    f.forced = Outcome{2.0};
    const auto rf = qnd_qubit_measurement(c0, c1, 3.0, 0.0, {}, f);
    REQUIRE(rf.outcome);
    CHECK(std::get<double>(rf.outcome->outcome) == 2.0);
  }
}

TEST_CASE("displacement parity gate with photon counting") {
  ShotOptions opt;
  opt.shots = 4000;
  opt.seed = 3;
  const auto r = parity_gate_displacement(kPlusPlus, 3.0, {}, PhotonNumber{}, opt);
  CHECK(r.metrics.at("p_n0") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.metrics.at("fidelity_n0") == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.metrics.at("rate_n0") - 0.5) < 5.0 * r.metrics.at("rate_n0_sigma"));
  CHECK(r.metrics.at("even_posterior_max_deviation") < 1e-10);
  CHECK_THROWS_AS(parity_gate_displacement(std::vector<Complex>{1.0, 0.0}, 3.0, {}, PhotonNumber{}, {}),
                  InvalidArgument);
}

TEST_CASE("displacement parity gate with a bucket detector") {
  const auto r = parity_gate_displacement(kPlusPlus, 0.5, {}, Bucket{}, {});
  CHECK(r.metrics.at("A") == doctest::Approx(0.5 * (1.0 - std::exp(-1.0))).epsilon(1e-12));
  // Small beta: the even branches still overlap the vacuum.
  CHECK(r.metrics.at("fidelity_no_click") < 0.9);
  const auto far = parity_gate_displacement(kPlusPlus, 3.0, {}, Bucket{}, {});
  CHECK(far.metrics.at("fidelity_no_click") == doctest::Approx(1.0).epsilon(1e-12));
  const auto w = parity_gate_displacement(kPlusPlus, 0.5, {}, Bucket{true}, {});
  CHECK(w.metrics.at("A") == doctest::Approx(0.5));
}

TEST_CASE("iterated bucket purification") {
  ShotOptions opt;
  opt.shots = 5000;
  opt.seed = 5;
  for (int m = 1; m <= 4; ++m) {
    const auto r = bucket_purification(kPlusPlus, 3.0, m, true, opt);
    CHECK(r.metrics.at("residual") == doctest::Approx(std::pow(0.5, m)).epsilon(1e-9));
    CHECK(r.ledger.size() == static_cast<std::size_t>(m));
    CHECK(std::abs(r.metrics.at("residual_mc") - r.metrics.at("residual")) <
          5.0 * r.metrics.at("residual_mc_sigma") + 1e-12);
    const auto& mix = std::get<MixedOutcome>(r.final);
    CHECK_NOTHROW(mix.check());
  }
  CHECK_THROWS_AS(bucket_purification(kPlusPlus, 3.0, 0, true, {}), InvalidArgument);
}

TEST_CASE("rotation parity with photon counting") {
  double alpha = 20.0;
  const double theta = 0.05;
  auto r = rotation_parity_number(kPlusPlus, alpha, theta, PhotonNumber{}, {});
  const Complex shift = alpha * (std::exp(Complex{0.0, 2.0 * theta}) - 1.0);
  CHECK(r.metrics.at("admixture_exact") == doctest::Approx(std::exp(-std::norm(shift))).epsilon(1e-12));
  CHECK(r.metrics.at("admixture_nominal") == doctest::Approx(std::exp(-4.0)).epsilon(1e-12));
  // Even branches leak into n = 0 with weight admixture / 2.
  const double adm = r.metrics.at("admixture_exact");
  CHECK(r.metrics.at("p_n0") == doctest::Approx(0.5 + 0.5 * adm).epsilon(1e-9));
  CHECK(r.metrics.at("fidelity_n0") == doctest::Approx(1.0 / (1.0 + adm)).epsilon(1e-9));
  alpha = 80.0;
  r = rotation_parity_number(kPlusPlus, alpha, theta, PhotonNumber{}, {});
  CHECK(r.metrics.at("fidelity_n0") > 1.0 - 1e-12);
}

TEST_CASE("rotation parity with homodyne readout") {
  const auto r = rotation_parity_homodyne(kPlusPlus, 30.0, 0.05, 0.0, {});
  CHECK(r.metrics.at("closure_error") < 1e-9);
  CHECK(r.metrics.at("odd_amplitude_error") < 1e-9);
  CHECK(r.metrics.at("E_exact") < r.metrics.at("E_paper"));
  const double ratio = r.metrics.at("erfc_argument_ratio");
  CHECK(ratio > 1.98);
  CHECK(ratio <= 2.0);
}

TEST_CASE("rotation-displacement parity sequence") {
  const double alpha = 40.0, theta = 0.05;
  const auto r = rotation_displacement_parity(kPlusPlus, alpha, theta, 0.0, {});
  CHECK(r.metrics.at("beta") == doctest::Approx(alpha * std::sin(2 * theta) / 2.0));
  CHECK(r.metrics.at("even_cos_residual") < 1e-9);
  CHECK(r.metrics.at("x_even") == doctest::Approx(2.0 * alpha * std::cos(2 * theta)).epsilon(1e-12));
  CHECK(r.metrics.at("x_odd") == doctest::Approx(2.0 * alpha).epsilon(1e-12));
}

TEST_CASE("rotation-only controlled phase") {
  const double alpha = 2.0, theta = 0.05;
  const auto sim = appendix2_from_simulation(alpha, theta);
  const auto cor = appendix2_corrected_forms(alpha, theta);
  const auto lit = appendix2_closed_forms(alpha, theta);
  CHECK(sim.phi_d == doctest::Approx(cor.phi_d).epsilon(1e-10));
  CHECK(sim.phi_gg == doctest::Approx(cor.phi_gg).epsilon(1e-10));
  CHECK(sim.phi_ee == doctest::Approx(cor.phi_ee).epsilon(1e-10));
  CHECK(sim.gamma_gg == doctest::Approx(cor.gamma_gg).epsilon(1e-10));
  CHECK(std::abs(sim.alpha_plus - cor.alpha_plus) < 1e-10);
  // The two sets differ only where the corrections act.
  CHECK(lit.phi_d == doctest::Approx(cor.phi_d).epsilon(1e-12));
  CHECK(lit.phi_gg - cor.phi_gg == doctest::Approx(2.0 * alpha * alpha * std::sin(4 * theta)));
  CHECK(lit.gamma_gg == doctest::Approx(cor.gamma_ee).epsilon(1e-12));

  const double beta = std::sqrt(2.0) * alpha;
  const auto r = rotation_only_cphase(kPlusPlus, beta, theta);
  CHECK(r.metrics.at("alpha") == doctest::Approx(alpha));
  CHECK(r.metrics.at("phi_d") == doctest::Approx(sim.phi_d).epsilon(1e-12));
  CHECK(r.metrics.at("max_bus_offset") < 4.0 * r.metrics.at("error_scale"));
  CHECK(r.metrics.at("concurrence") > 0.0);
  const auto open = rotation_only_cphase(kPlusPlus, beta, theta, false);
  CHECK(std::abs(std::get<HybridState>(open.final).branches()[0].bus -
                 std::get<HybridState>(r.final).branches()[0].bus) > 1.0);
}

TEST_CASE("geometric phase of closed paths") {
  const std::vector<Complex> square{1.0, Complex{0, 1}, -1.0, Complex{0, -1}};
  CHECK(geometric_phase_of_path(square) == doctest::Approx(2.0).epsilon(1e-12));
  const std::vector<Complex> reversed{Complex{0, 1}, 1.0, Complex{0, -1}, -1.0};
  CHECK(geometric_phase_of_path(reversed) == doctest::Approx(-2.0).epsilon(1e-12));
  const std::vector<Complex> big{4.0, Complex{0, 4}, -4.0, Complex{0, -4}};
  CHECK(geometric_phase_of_path(big) == doctest::Approx(32.0).epsilon(1e-12));
  const std::vector<Complex> open{1.0, Complex{0, 1}};
  CHECK_THROWS_AS(geometric_phase_of_path(open), InvalidArgument);
}

TEST_CASE("helpers") {
  CHECK(wrap_phase(3.0 * kPi) == doctest::Approx(kPi));
  CHECK(wrap_phase(-0.5) == doctest::Approx(-0.5));
  std::vector<Complex> a{0.6, 0.8}, b{Complex{0, 0.6}, Complex{0, 0.8}};
  CHECK(phase_aligned_distance(a, b) < 1e-14);
  const std::vector<BusOp> branching{CondDisp{0, 1.0}};
  CHECK_NOTHROW(run_unwrapped(0, {}, branching));
  const std::vector<BusOp> split{SingleQubit{0, gates::hadamard()}};
  CHECK_THROWS_AS(run_unwrapped(0, {}, split), SimulationError);
  const auto u = run_unwrapped(1, {}, std::vector<BusOp>{CondDisp{0, Complex{0, 1}}, CondDisp{0, 1.0}});
  CHECK(std::abs(u.bus - Complex{1, 1}) < 1e-14);
}
