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
#include <string>

#include <Eigen/Eigenvalues>

#include "qubus/measurement.hpp"
#include "qubus/qubit_analysis.hpp"

namespace qubus {

Eigen::MatrixXcd MixedOutcome::density() const {
  if (components.empty()) throw InvalidArgument("empty mixture");
  Eigen::MatrixXcd rho = components.front().first * reduced_qubit_density(components.front().second);
  for (std::size_t k = 1; k < components.size(); ++k) {
    rho += components[k].first * reduced_qubit_density(components[k].second);
  }
  return rho;
}

void MixedOutcome::check(double tol) const {
  double total = 0.0;
  for (const auto& [w, st] : components) {
    if (!(w >= 0.0)) throw InvalidArgument("negative mixture weight");
    total += w;
  }
  if (std::abs(total - 1.0) > tol) {
    throw InvalidArgument("mixture weights sum to " + std::to_string(total));
  }
}

MixedOutcome ensemble_from_density(const Eigen::MatrixXcd& rho, int n_qubits, double drop_tol) {
  if (rho.rows() != (Eigen::Index{1} << n_qubits)) {
    throw InvalidArgument("density matrix dimension does not match n_qubits");
  }
  const Eigen::MatrixXcd herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm);
  MixedOutcome mix;
  double total = 0.0;
  for (Eigen::Index k = herm.rows() - 1; k >= 0; --k) {
    const double w = es.eigenvalues()(k);
    if (w <= drop_tol) continue;
    std::vector<Branch> br;
    for (Eigen::Index l = 0; l < herm.rows(); ++l) {
      const Complex c = es.eigenvectors()(l, k);
      if (std::abs(c) > 0.0) br.push_back({static_cast<Label>(l), c, Complex{}});
    }
    HybridState st(n_qubits, std::move(br), HybridState::kDefaultMergeTol, default_branch_cap(), true);
    mix.components.emplace_back(w, st.normalized());
    total += w;
  }
  if (!(total > 0.0)) throw SimulationError("density matrix has no positive weight");
  for (auto& c : mix.components) c.first /= total;
  return mix;
}

}  // namespace qubus
