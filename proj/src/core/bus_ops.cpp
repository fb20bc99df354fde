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

#include "qubus/bus_ops.hpp"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace qubus {

namespace gates {

Gate2 hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{{Complex{r}, Complex{r}}, {Complex{r}, Complex{-r}}}};
}

Gate2 pauli_x() { return {{{Complex{0}, Complex{1}}, {Complex{1}, Complex{0}}}}; }

Gate2 pauli_z() { return {{{Complex{1}, Complex{0}}, {Complex{0}, Complex{-1}}}}; }

// 2^{-1/2}(1 - i sigma_z)
Gate2 minus_quarter_z() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{{Complex{r, -r}, Complex{0}}, {Complex{0}, Complex{r, r}}}};
}

// 2^{-1/2}(1 - i sigma_x)
Gate2 minus_quarter_x() {
  const double r = 1.0 / std::sqrt(2.0);
  return {{{Complex{r}, Complex{0, -r}}, {Complex{0, -r}, Complex{r}}}};
}

Gate2 multiply(const Gate2& a, const Gate2& b) {
  Gate2 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return out;
}

bool is_unitary(const Gate2& u, double tol) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const Complex dot = std::conj(u[0][i]) * u[0][j] + std::conj(u[1][i]) * u[1][j];
      const Complex expect = i == j ? Complex{1.0} : Complex{0.0};
      if (!(std::abs(dot - expect) <= tol)) return false;
    }
  }
  return true;
}

}  // namespace gates

namespace {

void check_qubit(int qubit, int n_qubits) {
  if (qubit < 0 || qubit >= n_qubits) {
    throw InvalidArgument("qubit index " + std::to_string(qubit) + " out of range for " +
                          std::to_string(n_qubits) + " qubits");
  }
}

void check_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw InvalidArgument(std::string(what) + " must be finite");
}

// D(delta) acting on |bus>: new bus bus + delta, phase exp(i Im(delta conj(bus))).
void displace(Branch& b, Complex delta) {
  b.coeff *= std::exp(kI * std::imag(delta * std::conj(b.bus)));
  b.bus += delta;
}

}  // namespace

HybridState apply_cond_disp(const HybridState& s, int qubit, Complex beta) {
  check_qubit(qubit, s.n_qubits());
  check_finite(beta, "displacement");
  if (s.bus_consumed()) throw SimulationError("conditional displacement on a consumed bus");
  std::vector<Branch> out(s.branches().begin(), s.branches().end());
  for (auto& b : out) displace(b, sigma_z_sign(b.label, qubit, s.n_qubits()) * beta);
  return s.with_branches(std::move(out));
}

HybridState apply_cond_rot(const HybridState& s, int qubit, double theta) {
  check_qubit(qubit, s.n_qubits());
  if (!std::isfinite(theta)) throw InvalidArgument("rotation angle must be finite");
  if (s.bus_consumed()) throw SimulationError("conditional rotation on a consumed bus");
  std::vector<Branch> out(s.branches().begin(), s.branches().end());
  for (auto& b : out) {
    b.bus *= std::exp(kI * (sigma_z_sign(b.label, qubit, s.n_qubits()) * theta));
  }
  return s.with_branches(std::move(out));
}

HybridState apply_uncond_disp(const HybridState& s, Complex beta) {
  check_finite(beta, "displacement");
  if (s.bus_consumed()) throw SimulationError("displacement on a consumed bus");
  std::vector<Branch> out(s.branches().begin(), s.branches().end());
  for (auto& b : out) displace(b, beta);
  return s.with_branches(std::move(out));
}

HybridState apply_single_qubit(const HybridState& s, int qubit, const Gate2& u) {
  check_qubit(qubit, s.n_qubits());
  if (!gates::is_unitary(u)) throw InvalidArgument("single-qubit gate is not unitary");
  const int n = s.n_qubits();
  std::vector<Branch> out;
  out.reserve(2 * s.size());
  for (const auto& b : s.branches()) {
    const int bit = bit_of(b.label, qubit, n);
    const Label l0 = bit == 0 ? b.label : flip_bit(b.label, qubit, n);
    const Label l1 = flip_bit(l0, qubit, n);
    const Complex c0 = u[0][bit] * b.coeff;
    const Complex c1 = u[1][bit] * b.coeff;
    if (c0 != Complex{}) out.push_back({l0, c0, b.bus});
    if (c1 != Complex{}) out.push_back({l1, c1, b.bus});
  }
  return s.with_branches(std::move(out));
}

HybridState apply_op(const HybridState& s, const BusOp& op) {
  return std::visit(
      [&](const auto& o) -> HybridState {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, CondDisp>) return apply_cond_disp(s, o.qubit, o.beta);
        else if constexpr (std::is_same_v<T, CondRot>) return apply_cond_rot(s, o.qubit, o.theta);
        else if constexpr (std::is_same_v<T, UncondDisp>) return apply_uncond_disp(s, o.beta);
        else return apply_single_qubit(s, o.qubit, o.u);
      },
      op);
}

void validate(const BusOp& op, int n_qubits) {
  std::visit(
      [&](const auto& o) {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, UncondDisp>) {
          check_finite(o.beta, "displacement");
        } else {
          check_qubit(o.qubit, n_qubits);
          if constexpr (std::is_same_v<T, CondDisp>) check_finite(o.beta, "displacement");
          if constexpr (std::is_same_v<T, CondRot>) {
            if (!std::isfinite(o.theta)) throw InvalidArgument("rotation angle must be finite");
          }
          if constexpr (std::is_same_v<T, SingleQubit>) {
            if (!gates::is_unitary(o.u)) throw InvalidArgument("single-qubit gate is not unitary");
          }
        }
      },
      op);
}

namespace {
std::string fmt(Complex z) {
  std::ostringstream os;
  os.precision(6);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
  return os.str();
}
}  // namespace

std::string describe(const BusOp& op) {
  return std::visit(
      [](const auto& o) -> std::string {
        using T = std::decay_t<decltype(o)>;
        std::ostringstream os;
        os.precision(6);
        if constexpr (std::is_same_v<T, CondDisp>) {
          os << "cond_disp(q" << o.qubit << ", " << fmt(o.beta) << ")";
        } else if constexpr (std::is_same_v<T, CondRot>) {
          os << "cond_rot(q" << o.qubit << ", " << o.theta << ")";
        } else if constexpr (std::is_same_v<T, UncondDisp>) {
          os << "disp(" << fmt(o.beta) << ")";
        } else {
          os << "u(q" << o.qubit << ")";
        }
        return os.str();
      },
      op);
}

}  // namespace qubus
