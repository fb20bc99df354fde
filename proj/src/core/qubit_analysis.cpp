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

#include "qubus/qubit_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qubus {

Eigen::MatrixXcd reduced_qubit_density(const HybridState& s) {
  const Eigen::Index dim = Eigen::Index{1} << s.n_qubits();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const auto br = s.branches();
  for (const auto& bi : br) {
    for (const auto& bj : br) {
      const Complex ov = s.bus_consumed() ? Complex{1.0} : coherent_overlap(bi.bus, bj.bus);
      rho(static_cast<Eigen::Index>(bi.label), static_cast<Eigen::Index>(bj.label)) +=
          bi.coeff * std::conj(bj.coeff) * ov;
    }
  }
  const double tr = rho.trace().real();
  if (tr > 0.0) rho /= tr;
  return rho;
}

void check_density_matrix(const Eigen::MatrixXcd& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw InvalidArgument("density matrix must be square and non-empty");
  }
  if (!rho.allFinite()) throw InvalidArgument("density matrix has non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tol) throw InvalidArgument("density matrix is not Hermitian (" + std::to_string(herm) + ")");
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > tol) {
    throw InvalidArgument("density matrix trace is " + std::to_string(tr));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    throw InvalidArgument("density matrix is not positive semidefinite");
  }
}

double concurrence(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != 4 || rho.cols() != 4) {
    throw InvalidArgument("concurrence needs a 4x4 density matrix");
  }
  check_density_matrix(rho);
  // Wootters via a square-root decomposition rho = Psi Psi^dagger:
  // the singular values of Psi^T (sy x sy) Psi are the lambda_i.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
  std::vector<Eigen::VectorXcd> cols;
  for (Eigen::Index k = 0; k < 4; ++k) {
    const double p = es.eigenvalues()(k);
    if (p > 1e-14) cols.push_back(std::sqrt(p) * es.eigenvectors().col(k));
  }
  Eigen::MatrixXcd psi(4, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t k = 0; k < cols.size(); ++k) psi.col(static_cast<Eigen::Index>(k)) = cols[k];
  Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::MatrixXcd tau = psi.transpose() * yy * psi;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(tau);
  Eigen::VectorXd sv = Eigen::VectorXd::Zero(4);
  sv.head(svd.singularValues().size()) = svd.singularValues();
  std::sort(sv.data(), sv.data() + 4, std::greater<>());
  return std::clamp(sv(0) - sv(1) - sv(2) - sv(3), 0.0, 1.0);
}

double concurrence(const Eigen::Matrix4cd& rho) { return concurrence(Eigen::MatrixXcd(rho)); }

double fidelity_to(const Eigen::MatrixXcd& rho, std::span<const Complex> target) {
  if (static_cast<Eigen::Index>(target.size()) != rho.rows()) {
    throw InvalidArgument("target has " + std::to_string(target.size()) +
                          " amplitudes, density matrix dimension is " +
                          std::to_string(rho.rows()));
  }
  Eigen::VectorXcd t(rho.rows());
  for (Eigen::Index i = 0; i < t.size(); ++i) t(i) = target[static_cast<std::size_t>(i)];
  const double n = t.norm();
  if (!(n > 0.0)) throw InvalidArgument("target state is zero");
  t /= n;
  const double f = std::real(t.dot(rho * t));
  return std::clamp(f, 0.0, 1.0);
}

double fidelity_to(const HybridState& s, std::span<const Complex> target) {
  return fidelity_to(reduced_qubit_density(s), target);
}

}  // namespace qubus
