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

#include "qubus/fock.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qubus {

double coherent_tail_mass(Complex alpha, int dim) {
  const double m = std::norm(alpha);
  if (dim <= 0) return 1.0;
  if (m == 0.0) return 0.0;
  const double log_m = std::log(m);
  double total = 0.0;
  for (int n = dim;; ++n) {
    const double term = std::exp(-m + n * log_m - std::lgamma(n + 1.0));
    total += term;
    if (n > m && term < 1e-30 * std::max(total, 1e-300)) break;
    if (n > m && term < 1e-300) break;
  }
  return std::min(total, 1.0);
}

int truncation_rule(double max_amplitude) {
  if (!(max_amplitude >= 0.0) || !std::isfinite(max_amplitude)) {
    throw InvalidArgument("truncation_rule needs a finite non-negative amplitude");
  }
  const double m = max_amplitude * max_amplitude;
  int dim = static_cast<int>(std::ceil(m + 6.0 * std::sqrt(m + 1.0)));
  while (coherent_tail_mass(Complex{max_amplitude, 0.0}, dim) >= 1e-14) ++dim;
  return dim;
}

Complex number_amplitude(int n, Complex alpha) {
  if (n < 0) return Complex{};
  const double r = std::abs(alpha);
  if (r == 0.0) return n == 0 ? Complex{1.0} : Complex{};
  const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
  return std::polar(std::exp(log_mag), n * std::arg(alpha));
}

Eigen::VectorXcd coherent_fock(Complex alpha, int dim) {
  if (dim <= 0) throw InvalidArgument("Fock dimension must be positive");
  const double tail = coherent_tail_mass(alpha, dim);
  if (tail > 1e-10) {
    throw TruncationError("Fock dimension " + std::to_string(dim) + " too small for |alpha| = " +
                          std::to_string(std::abs(alpha)) + " (tail mass " +
                          std::to_string(tail) + ")");
  }
  Eigen::VectorXcd v(dim);
  for (int n = 0; n < dim; ++n) v(n) = number_amplitude(n, alpha);
  return v;
}

Eigen::MatrixXcd annihilation(int dim) {
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw SimulationError("Hermitian eigensolver failed");
  const Eigen::VectorXcd phases =
      (kI * es.eigenvalues().cast<Complex>()).array().exp().matrix();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Eigen::MatrixXcd displacement_matrix(Complex beta, int dim) {
  if (dim <= 0) throw InvalidArgument("Fock dimension must be positive");
  if (!is_finite(beta)) throw InvalidArgument("displacement must be finite");
  const int needed = truncation_rule(std::abs(beta));
  if (dim < needed) {
    throw TruncationError("Fock dimension " + std::to_string(dim) + " too small for |beta| = " +
                          std::to_string(std::abs(beta)) + " (need " + std::to_string(needed) +
                          ")");
  }
  const int n = dim + kFockPadding;
  const Eigen::MatrixXcd a = annihilation(n);
  // beta a^dag - conj(beta) a = i h with h Hermitian
  const Eigen::MatrixXcd h = -kI * (beta * a.adjoint() - std::conj(beta) * a);
  return exp_i_hermitian(h).topLeftCorner(dim, dim);
}

Eigen::VectorXcd number_phase_diagonal(double theta, int dim) {
  Eigen::VectorXcd d(dim);
  for (int n = 0; n < dim; ++n) d(n) = std::exp(kI * (theta * n));
  return d;
}

Eigen::MatrixXcd number_phase_matrix(double theta, int dim) {
  return number_phase_diagonal(theta, dim).asDiagonal();
}

double top_tail_mass(const Eigen::VectorXcd& v) {
  const auto dim = v.size();
  const auto start = static_cast<Eigen::Index>(std::floor(0.9 * static_cast<double>(dim)));
  return v.tail(dim - start).squaredNorm();
}

double unitarity_defect(const Eigen::MatrixXcd& u) {
  const auto k = static_cast<Eigen::Index>(std::floor(0.9 * static_cast<double>(u.cols())));
  const Eigen::MatrixXcd g = u.leftCols(k).adjoint() * u.leftCols(k);
  return (g - Eigen::MatrixXcd::Identity(k, k)).cwiseAbs().maxCoeff();
}

}  // namespace qubus
