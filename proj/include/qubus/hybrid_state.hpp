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

#include <cstddef>
#include <span>
#include <vector>

#include "qubus/types.hpp"

namespace qubus {

/// One term c |label> |bus> of a qubit-register/bus superposition, where
/// |bus> is a coherent state.
struct Branch {
  Label label = 0;
  Complex coeff{1.0, 0.0};
  Complex bus{0.0, 0.0};
};

/// Branch cap used when none is given: QUBUS_BRANCH_CAP if set, else 4096.
std::size_t default_branch_cap();

/// <b|a> for coherent states |a>, |b>.
Complex coherent_overlap(Complex a, Complex b);

/// Exact state of n qubits and one bus mode as a finite sum of branches.
///
/// Branches with the same label whose bus amplitudes lie within
/// `merge_tol` of each other are merged on construction, and coefficients
/// below 1e-14 in magnitude are pruned. Displacement phases live in the
/// branch coefficients.
///
/// After a photon-number (n > 0) or quadrature measurement the bus is no
/// longer coherent; such states are flagged `bus_consumed()`. All branches
/// then share one bus state, the stored bus amplitudes are zero, and bus
/// operations are rejected until `with_fresh_bus` re-prepares it.
class HybridState {
 public:
  static constexpr double kDefaultMergeTol = 1e-9;
  static constexpr double kPruneTol = 1e-14;

  HybridState(int n_qubits, std::vector<Branch> branches,
              double merge_tol = kDefaultMergeTol,
              std::size_t branch_cap = default_branch_cap(),
              bool bus_consumed = false);

  /// Product state sum_l amps[l] |l> (x) |bus>; amps has 2^n entries.
  static HybridState product(int n_qubits, std::span<const Complex> amps,
                             Complex bus);
  static HybridState basis(int n_qubits, Label label, Complex bus);
  /// 2^{-n/2} sum_l |l> (x) |bus>, the |+...+> register.
  static HybridState plus_all(int n_qubits, Complex bus);

  int n_qubits() const { return n_qubits_; }
  std::span<const Branch> branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }
  double merge_tol() const { return merge_tol_; }
  std::size_t branch_cap() const { return branch_cap_; }
  bool bus_consumed() const { return bus_consumed_; }

  /// Same parameters, new branch list (merged/pruned/capped as usual).
  HybridState with_branches(std::vector<Branch> branches) const;
  /// Qubit part unchanged, bus replaced by a coherent state |alpha>.
  /// Branch buses are discarded, so this is only a valid re-preparation
  /// when the bus is already disentangled (e.g. consumed by a measurement).
  HybridState with_fresh_bus(Complex alpha) const;
  /// Qubit coefficients kept, bus flagged as measured.
  HybridState with_consumed_bus() const;

  /// <psi|psi> including coherent-state overlaps within each label.
  double norm_squared() const;
  HybridState normalized() const;

  /// Argument of the largest-magnitude coefficient. Unobservable, but
  /// reported so that outputs can be compared up to a common phase.
  double global_phase() const;

  /// Largest distance between any two bus amplitudes (0 for a single
  /// branch or a consumed bus). Zero means the bus is disentangled.
  double bus_spread() const;

  /// Qubit amplitudes when every branch carries the same bus state
  /// (bus_spread() <= tol or consumed); throws SimulationError otherwise.
  std::vector<Complex> qubit_amplitudes(double tol = 1e-12) const;

 private:
  void canonicalize();

  int n_qubits_;
  std::vector<Branch> branches_;
  double merge_tol_;
  std::size_t branch_cap_;
  bool bus_consumed_;
};

}  // namespace qubus
