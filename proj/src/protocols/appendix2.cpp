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

#include "internal.hpp"
#include "qubus/qubit_analysis.hpp"
#include "qubus/sequences.hpp"

namespace qubus {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

Complex start_bus(double alpha) { return alpha * std::exp(kI * (kPi / 4.0)); }

Complex closed_alpha(double alpha, double theta, double s) {
  return alpha * (std::exp(kI * (s * 4.0 * theta + kPi / 4.0)) +
                  kSqrt2 * (1.0 - std::exp(kI * (s * 2.0 * theta))) * (kI + std::exp(kI * (s * theta))));
}

void finish_derived(Appendix2Forms& f) {
  f.phi_d = f.phi_gg - f.phi_ge - f.phi_eg + f.phi_ee + f.psi_gg + f.psi_ee;
  f.phi_s = (f.phi_gg + f.psi_gg - f.phi_ee - f.psi_ee) / 4.0;
}

}  // namespace

Appendix2Forms appendix2_closed_forms(double alpha, double theta) {
  const double a2 = alpha * alpha;
  const double c = 7.0 * std::cos(theta) - std::cos(2.0 * theta) - 3.0 * std::cos(3.0 * theta) +
                   std::cos(4.0 * theta);
  const double s = std::sin(theta) + 5.0 * std::sin(2.0 * theta) - std::sin(3.0 * theta) +
                   std::sin(4.0 * theta);
  const double h = std::sin(theta / 2.0);
  const double h2 = h * h;
  Appendix2Forms f;
  f.phi_gg = a2 * c + a2 * s;
  f.phi_ee = a2 * c - a2 * s;
  f.phi_ge = f.phi_eg = 4.0 * a2 * std::cos(theta);
  f.psi_gg = -4.0 * a2 * h2 * (1.0 + std::cos(theta) + std::sin(theta)) *
             (std::cos(2.0 * theta) + std::sin(2.0 * theta));
  f.psi_ee = -4.0 * a2 * h2 * (1.0 + std::cos(theta) - std::sin(theta)) *
             (std::cos(2.0 * theta) - std::sin(2.0 * theta));
  const double gp = 1.0 + std::cos(theta) - std::sin(theta);
  const double gm = 1.0 + std::cos(theta) + std::sin(theta);
  f.gamma_gg = 16.0 * a2 * h2 * h2 * gp * gp;
  f.gamma_ee = 16.0 * a2 * h2 * h2 * gm * gm;
  f.alpha_plus = closed_alpha(alpha, theta, 1.0);
  f.alpha_minus = closed_alpha(alpha, theta, -1.0);
  f.phi_s = (f.phi_gg + f.psi_gg - f.phi_ee - f.psi_ee) / 4.0;
  f.phi_d = 8.0 * a2 * std::sin(theta) * std::sin(theta) * (2.0 * std::cos(theta) - std::cos(2.0 * theta));
  return f;
}

Appendix2Forms appendix2_corrected_forms(double alpha, double theta) {
  Appendix2Forms f = appendix2_closed_forms(alpha, theta);
  const double shift = 2.0 * alpha * alpha * std::sin(4.0 * theta);
  f.phi_gg -= shift;
  f.phi_ee += shift;
  std::swap(f.gamma_gg, f.gamma_ee);
  f.phi_s = (f.phi_gg + f.psi_gg - f.phi_ee - f.psi_ee) / 4.0;
  return f;
}

Appendix2Forms appendix2_from_simulation(double alpha, double theta) {
  const Complex a0 = start_bus(alpha);
  const auto ops = instantiate(frozen_fig11(), theta, kSqrt2 * alpha);
  UnwrappedRun runs[4];
  for (Label l = 0; l < 4; ++l) runs[l] = run_unwrapped(l, a0, ops);
  Appendix2Forms f;
  f.phi_gg = runs[0].phase;
  f.phi_ge = runs[1].phase;
  f.phi_eg = runs[2].phase;
  f.phi_ee = runs[3].phase;
  f.alpha_plus = runs[0].bus;
  f.alpha_minus = runs[3].bus;
  f.psi_gg = std::imag(std::conj(a0) * f.alpha_plus);
  f.psi_ee = std::imag(std::conj(a0) * f.alpha_minus);
  f.gamma_gg = 0.5 * std::norm(f.alpha_plus - a0);
  f.gamma_ee = 0.5 * std::norm(f.alpha_minus - a0);
  finish_derived(f);
  return f;
}

ProtocolResult rotation_only_cphase(std::span<const Complex> amps, double beta, double theta,
                                    bool final_displacement) {
  if (amps.size() != 4) throw InvalidArgument("rotation cphase needs a two-qubit input");
  if (!std::isfinite(beta) || !std::isfinite(theta)) throw InvalidArgument("beta and theta must be finite");
  const double alpha = beta / kSqrt2;
  const Complex a0 = start_bus(alpha);
  auto ops = instantiate(frozen_fig11(), theta, beta);
  if (!final_displacement) ops.pop_back();
  CircuitRun run = run_circuit(register_input(amps, a0), ops);
  ProtocolResult r{std::nullopt, run.final, {}, std::move(run.trajectory), {}, {}};

  const auto buses = detail::basis_final_buses(ops, a0);
  const Appendix2Forms sim = appendix2_from_simulation(alpha, theta);
  r.metrics["alpha"] = alpha;
  r.metrics["phi_d"] = sim.phi_d;
  r.metrics["phi_s"] = sim.phi_s;
  r.metrics["gamma_gg"] = sim.gamma_gg;
  r.metrics["gamma_ee"] = sim.gamma_ee;
  r.metrics["bus_spread"] = run.final.bus_spread();
  double off = 0.0;
  for (const auto& b : buses) off = std::max(off, std::abs(b - buses[1]));
  r.metrics["max_bus_offset"] = off;
  r.metrics["error_scale"] = std::abs(beta * theta * theta);
  r.metrics["concurrence"] = concurrence(reduced_qubit_density(run.final));
  return r;
}

}  // namespace qubus
