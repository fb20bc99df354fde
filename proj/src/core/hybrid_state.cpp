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

#include "qubus/hybrid_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <unordered_map>

namespace qubus {

std::string label_string(Label label, int n_qubits) {
  std::string out(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (bit_of(label, q, n_qubits)) out[static_cast<std::size_t>(q)] = '1';
  }
  return out;
}

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::size_t default_branch_cap() {
  constexpr std::size_t kDefault = 4096;
  const char* env = std::getenv("QUBUS_BRANCH_CAP");
  if (env == nullptr || *env == '\0') return kDefault;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) {
    throw InvalidArgument("QUBUS_BRANCH_CAP must be a positive integer, got '" +
                          std::string(env) + "'");
  }
  return static_cast<std::size_t>(v);
}

Complex coherent_overlap(Complex a, Complex b) {
  return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(b) * a);
}

HybridState::HybridState(int n_qubits, std::vector<Branch> branches, double merge_tol,
                         std::size_t branch_cap, bool bus_consumed)
    : n_qubits_(n_qubits),
      branches_(std::move(branches)),
      merge_tol_(merge_tol),
      branch_cap_(branch_cap),
      bus_consumed_(bus_consumed) {
  if (n_qubits_ <= 0 || n_qubits_ > 30) {
    throw InvalidArgument("n_qubits must be in [1, 30], got " + std::to_string(n_qubits_));
  }
  if (!(merge_tol_ >= 0.0)) throw InvalidArgument("merge_tol must be >= 0");
  const Label limit = Label{1} << n_qubits_;
  for (const auto& b : branches_) {
    if (b.label >= limit) {
      throw InvalidArgument("branch label " + std::to_string(b.label) + " out of range for " +
                            std::to_string(n_qubits_) + " qubits");
    }
    if (!is_finite(b.coeff) || !is_finite(b.bus)) {
      throw SimulationError("non-finite branch coefficient or bus amplitude");
    }
  }
  canonicalize();
}

void HybridState::canonicalize() {
  if (bus_consumed_) {
    for (auto& b : branches_) b.bus = Complex{};
  }
  std::vector<Branch> merged;
  merged.reserve(branches_.size());
  std::unordered_map<Label, std::vector<std::size_t>> by_label;
  for (const auto& b : branches_) {
    auto& slots = by_label[b.label];
    bool absorbed = false;
    for (std::size_t idx : slots) {
      if (std::abs(merged[idx].bus - b.bus) <= merge_tol_) {
        merged[idx].coeff += b.coeff;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) {
      slots.push_back(merged.size());
      merged.push_back(b);
    }
  }
  std::erase_if(merged, [](const Branch& b) { return std::abs(b.coeff) < kPruneTol; });
  if (merged.size() > branch_cap_) {
    throw SimulationError("branch count " + std::to_string(merged.size()) +
                          " exceeds the cap of " + std::to_string(branch_cap_) +
                          "; the circuit left the coherent-branch gate set");
  }
  branches_ = std::move(merged);
}

HybridState HybridState::product(int n_qubits, std::span<const Complex> amps, Complex bus) {
  if (n_qubits <= 0 || n_qubits > 30) {
    throw InvalidArgument("n_qubits must be in [1, 30]");
  }
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (amps.size() != dim) {
    throw InvalidArgument("expected " + std::to_string(dim) + " qubit amplitudes, got " +
                          std::to_string(amps.size()));
  }
  std::vector<Branch> branches;
  for (std::size_t l = 0; l < dim; ++l) {
    if (amps[l] != Complex{}) branches.push_back({static_cast<Label>(l), amps[l], bus});
  }
  return HybridState(n_qubits, std::move(branches));
}

HybridState HybridState::basis(int n_qubits, Label label, Complex bus) {
  return HybridState(n_qubits, {{label, Complex{1.0, 0.0}, bus}});
}

HybridState HybridState::plus_all(int n_qubits, Complex bus) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  std::vector<Complex> amps(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
  return product(n_qubits, amps, bus);
}

HybridState HybridState::with_branches(std::vector<Branch> branches) const {
  return HybridState(n_qubits_, std::move(branches), merge_tol_, branch_cap_, bus_consumed_);
}

HybridState HybridState::with_fresh_bus(Complex alpha) const {
  std::vector<Branch> out(branches_.begin(), branches_.end());
  for (auto& b : out) b.bus = alpha;
  return HybridState(n_qubits_, std::move(out), merge_tol_, branch_cap_, false);
}

HybridState HybridState::with_consumed_bus() const {
  return HybridState(n_qubits_, branches_, merge_tol_, branch_cap_, true);
}

double HybridState::norm_squared() const {
  double total = 0.0;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    const auto& bi = branches_[i];
    total += std::norm(bi.coeff);
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      const auto& bj = branches_[j];
      if (bi.label != bj.label) continue;
      const Complex ov = bus_consumed_ ? Complex{1.0} : coherent_overlap(bi.bus, bj.bus);
      total += 2.0 * std::real(bi.coeff * std::conj(bj.coeff) * ov);
    }
  }
  return total;
}

HybridState HybridState::normalized() const {
  const double n2 = norm_squared();
  if (!(n2 > 1e-300)) throw SimulationError("cannot normalize a zero state");
  const double scale = 1.0 / std::sqrt(n2);
  std::vector<Branch> out(branches_.begin(), branches_.end());
  for (auto& b : out) b.coeff *= scale;
  return with_branches(std::move(out));
}

double HybridState::global_phase() const {
  const Branch* best = nullptr;
  for (const auto& b : branches_) {
    if (best == nullptr || std::abs(b.coeff) > std::abs(best->coeff)) best = &b;
  }
  return best == nullptr ? 0.0 : std::arg(best->coeff);
}

double HybridState::bus_spread() const {
  if (bus_consumed_) return 0.0;
  double spread = 0.0;
  for (std::size_t i = 0; i < branches_.size(); ++i) {
    for (std::size_t j = i + 1; j < branches_.size(); ++j) {
      spread = std::max(spread, std::abs(branches_[i].bus - branches_[j].bus));
    }
  }
  return spread;
}

std::vector<Complex> HybridState::qubit_amplitudes(double tol) const {
  if (bus_spread() > tol) {
    throw SimulationError("bus is entangled with the qubits (spread " +
                          std::to_string(bus_spread()) + ")");
  }
  std::vector<Complex> amps(std::size_t{1} << n_qubits_);
  for (const auto& b : branches_) amps[b.label] += b.coeff;
  return amps;
}

}  // namespace qubus
