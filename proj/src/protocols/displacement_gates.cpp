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

#include <algorithm>
#include <cmath>
#include <vector>

#include "internal.hpp"
#include "qubus/qubit_analysis.hpp"

namespace qubus {

namespace {

std::vector<BusOp> cphase_ops(double beta1, double beta2) {
  return {CondDisp{0, Complex{-beta1, 0.0}}, CondDisp{1, Complex{0.0, -beta2}},
          CondDisp{0, Complex{beta1, 0.0}}, CondDisp{1, Complex{0.0, beta2}}};
}

Process kron(const Gate2& a, const Gate2& b) {
  Process p{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) p[r][c] = a[r >> 1][c >> 1] * b[r & 1][c & 1];
  return p;
}

Process multiply(const Process& a, const Process& b) {
  Process p{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      for (int k = 0; k < 4; ++k) p[r][c] += a[r][k] * b[k][c];
  return p;
}

// max |e^{i pi/4} (L (x) R) G - target|
double corrected_error(const Process& gate, const Gate2& left, const Gate2& right,
                       const Process& target) {
  const Process m = multiply(kron(left, right), gate);
  const Complex g = std::exp(kI * (kPi / 4.0));
  double err = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) err = std::max(err, std::abs(g * m[r][c] - target[r][c]));
  return err;
}

ProtocolResult measurement_free(std::span<const Complex> amps, const std::vector<BusOp>& ops,
                                Complex alpha, const Gate2& left, const Gate2& right,
                                const Process& target, double beta1, double beta2) {
  if (amps.size() != 4) throw InvalidArgument("gate needs a two-qubit input");
  if (!std::isfinite(beta1) || !std::isfinite(beta2)) throw InvalidArgument("betas must be finite");
  CircuitRun run = run_circuit(register_input(amps, alpha), ops);
  ProtocolResult r{std::nullopt, run.final, {}, std::move(run.trajectory), {}, {}};
  r.metrics["bus_spread"] = run.final.bus_spread();
  r.metrics["concurrence"] = concurrence(reduced_qubit_density(run.final));
  r.metrics["loop_phase"] = 2.0 * beta1 * beta2;
  const Process gate = process_matrix(ops, alpha);
  r.metrics["process_error"] = corrected_error(gate, left, right, target);
  double spread = 0.0;
  for (Label l = 0; l < 4; ++l) {
    spread = std::max(spread, run_circuit(HybridState::basis(2, l, alpha), ops).final.bus_spread());
  }
  r.metrics["max_bus_distance"] = spread;
  return r;
}

}  // namespace

ProtocolResult cphase_displacement_gate(std::span<const Complex> amps, double beta1, double beta2,
                                        Complex alpha) {
  Process cz{};
  for (int i = 0; i < 4; ++i) cz[i][i] = i == 3 ? -1.0 : 1.0;
  const Gate2 u = gates::minus_quarter_z();
  return measurement_free(amps, cphase_ops(beta1, beta2), alpha, u, u, cz, beta1, beta2);
}

ProtocolResult cnot_displacement_variant(std::span<const Complex> amps, double beta1,
                                         double beta2, Complex alpha) {
  std::vector<BusOp> ops{SingleQubit{0, gates::hadamard()}};
  for (const auto& op : cphase_ops(beta1, beta2)) ops.push_back(op);
  ops.push_back(SingleQubit{0, gates::hadamard()});
  // control qubit 1, target qubit 0
  Process cnot{};
  for (int l = 0; l < 4; ++l) {
    const int b0 = l >> 1, b1 = l & 1;
    cnot[((b0 ^ b1) << 1) | b1][l] = 1.0;
  }
  return measurement_free(amps, ops, alpha, gates::minus_quarter_x(), gates::minus_quarter_z(), cnot,
                          beta1, beta2);
}

double geometric_phase_of_path(std::span<const Complex> steps) {
  Complex sum{};
  for (Complex s : steps) {
    if (!is_finite(s)) throw InvalidArgument("path steps must be finite");
    sum += s;
  }
  if (std::abs(sum) > 1e-12) throw InvalidArgument("path is not closed");
  // Collinear sub-steps leave the displacement phase unchanged, so each step
  // is split until every increment is well inside (-pi, pi] and can be read
  // off the coefficient without wrapping.
  HybridState s = HybridState::basis(1, 0, Complex{});
  double phase = 0.0;
  for (Complex step : steps) {
    const double bus = std::abs(s.branches()[0].bus);
    const int pieces = 1 + static_cast<int>(std::ceil(std::abs(step) * (bus + std::abs(step))));
    for (int k = 0; k < pieces; ++k) {
      const Complex before = s.branches()[0].coeff;
      s = apply_uncond_disp(s, step / static_cast<double>(pieces));
      phase += std::arg(s.branches()[0].coeff / before);
    }
  }
  return phase;
}

}  // namespace qubus
