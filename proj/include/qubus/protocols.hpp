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
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qubus/bus_ops.hpp"
#include "qubus/circuit.hpp"
#include "qubus/measurement.hpp"

namespace qubus {

struct ShotOptions {
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  bool parallel = true;
  /// Condition on this outcome instead of sampling one for the reported record.
  std::optional<Outcome> forced;
};

using Metrics = std::map<std::string, double>;
using FinalState = std::variant<HybridState, MixedOutcome>;

struct ProtocolResult {
  std::optional<MeasurementRecord> outcome;
  FinalState final;
  Metrics metrics;
  std::vector<TrajectoryStage> trajectory;
  /// Sampled outcomes in shot order (at most kMaxStoredSamples).
  std::vector<Outcome> samples;
  /// Per-iteration rows for iterated protocols.
  std::vector<Metrics> ledger;
};

inline constexpr std::size_t kMaxStoredSamples = 1000;

using Process = std::array<std::array<Complex, 4>, 4>;

/// Two-qubit map of a bus-disentangling circuit, column l = image of |l>.
/// Throws SimulationError if any basis input leaves the bus entangled.
Process process_matrix(std::span<const BusOp> ops, Complex alpha);

// Single-qubit readout through the bus.
ProtocolResult qnd_qubit_measurement(Complex c0, Complex c1, double beta, double excess_noise,
                                     Complex alpha, const ShotOptions& opt);

// Parity gates.
ProtocolResult parity_gate_displacement(std::span<const Complex> amps, double beta, Complex alpha,
                                        const MeasurementModel& detector, const ShotOptions& opt);

/// Repeated bucket-detector parity attempts, stopping on no-click.
ProtocolResult bucket_purification(std::span<const Complex> amps, double beta, int iterations,
                                   bool worst_case, const ShotOptions& opt);

ProtocolResult rotation_parity_number(std::span<const Complex> amps, double alpha, double theta,
                                      const MeasurementModel& detector, const ShotOptions& opt);

ProtocolResult rotation_parity_homodyne(std::span<const Complex> amps, double alpha, double theta,
                                        double excess_noise, const ShotOptions& opt);

ProtocolResult rotation_displacement_parity(std::span<const Complex> amps, double alpha,
                                            double theta, double excess_noise,
                                            const ShotOptions& opt);

// Measurement-free gates.
ProtocolResult cphase_displacement_gate(std::span<const Complex> amps, double beta1, double beta2,
                                        Complex alpha = {});
ProtocolResult cnot_displacement_variant(std::span<const Complex> amps, double beta1,
                                         double beta2, Complex alpha = {});
ProtocolResult rotation_only_cphase(std::span<const Complex> amps, double beta, double theta,
                                    bool final_displacement = true);

struct Appendix2Forms {
  double phi_gg = 0, phi_ge = 0, phi_eg = 0, phi_ee = 0;
  double psi_gg = 0, psi_ee = 0;
  double gamma_gg = 0, gamma_ee = 0;
  Complex alpha_plus, alpha_minus;
  double phi_d = 0, phi_s = 0;
};

/// The closed forms, evaluated as stated.
Appendix2Forms appendix2_closed_forms(double alpha, double theta);
/// Closed forms with the sin(4 theta) sign in phi_gg / phi_ee flipped
/// and the gamma labels exchanged.
Appendix2Forms appendix2_corrected_forms(double alpha, double theta);
/// Branch-engine run of the frozen rotation-only sequence (phases unwrapped).
Appendix2Forms appendix2_from_simulation(double alpha, double theta);

/// Coefficient phase accumulated by displacing the bus along the closed path.
double geometric_phase_of_path(std::span<const Complex> steps);

// Helpers shared with the CLI and tests.
HybridState register_input(std::span<const Complex> amps, Complex bus);
/// min over phi of || a - e^{i phi} b || for normalized a, b.
double phase_aligned_distance(std::span<const Complex> a, std::span<const Complex> b);
double wrap_phase(double x);

/// Runs ops on a single-branch state, splitting displacements so that the
/// coefficient phase can be tracked without 2 pi ambiguity.
struct UnwrappedRun {
  Complex bus;
  double phase = 0.0;
};
UnwrappedRun run_unwrapped(Label label, Complex alpha, std::span<const BusOp> ops);

}  // namespace qubus
