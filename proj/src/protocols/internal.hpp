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

#include <cmath>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "qubus/parallel.hpp"
#include "qubus/protocols.hpp"
#include "qubus/rng.hpp"

namespace qubus::detail {

/// fn(rng, shot) for every shot, each with its own Philox stream.
template <class T, class F>
std::vector<T> run_shots(const ShotOptions& opt, F&& fn) {
  return run_indexed<T>(static_cast<std::size_t>(opt.shots), opt.parallel, [&](std::size_t i) {
    Philox rng(opt.seed, static_cast<std::uint64_t>(i));
    return fn(rng, i);
  });
}

inline double binomial_sigma(double p, std::uint64_t n) {
  return n == 0 ? 0.0 : std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

/// Normalized 2^n-vector from a few labelled amplitudes; empty when all vanish.
std::vector<Complex> normalized_target(std::vector<Complex> amps);

/// Qubit amplitudes of a state whose bus is consumed or common to all branches.
std::vector<Complex> qubit_vector(const HybridState& s);

/// Final bus of each two-qubit basis input (the ops must not split branches).
std::array<Complex, 4> basis_final_buses(std::span<const BusOp> ops, Complex alpha);

/// Homodyne window around the odd-parity peak of X(angle), reaching halfway
/// to the nearest even-parity peak.
struct HeraldWindow {
  double center = 0.0;
  double half_width = 0.0;
};
HeraldWindow odd_herald_window(const std::array<Complex, 4>& buses, double angle);

/// Heralded-homodyne metrics shared by the parity gates: window probability,
/// posterior fidelity at the window centre and, with shots, herald rate and
/// mean heralded fidelity.
void homodyne_herald_metrics(const HybridState& pre, const Homodyne& model, const HeraldWindow& w,
                             std::span<const Complex> odd_target, const ShotOptions& opt,
                             ProtocolResult& r);

/// Bucket-detector metrics: click probability, A, no-click fidelity, click rate.
void bucket_metrics(const HybridState& pre, std::span<const Complex> odd_target,
                    const Bucket& model, const ShotOptions& opt, ProtocolResult& r);

/// X(0) parity discrimination between the even (labels 00, 11) and odd peaks.
/// nominal_argument is the erfc argument of the nominal error formula.
void parity_discrimination(const HybridState& pre, const std::array<Complex, 4>& buses,
                           const Homodyne& model, double nominal_argument, const ShotOptions& opt,
                           ProtocolResult& r);

void store_samples(ProtocolResult& r, const std::vector<Outcome>& all);

}  // namespace qubus::detail
