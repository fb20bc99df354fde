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

#include "qubus/sandwich.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "qubus/fock.hpp"

namespace qubus {

namespace {

// sigma_z [|a|^2 + conj(a) a^dag + a a + a^dag a] for sigma_z = +1.
Eigen::MatrixXcd displaced_kerr(Complex alpha, const Eigen::MatrixXcd& a) {
  const auto n = a.rows();
  return std::norm(alpha) * Eigen::MatrixXcd::Identity(n, n) + std::conj(alpha) * a.adjoint() +
         alpha * a + a.adjoint() * a;
}

Eigen::MatrixXcd segment_product(Complex alpha, double chi_t, double s, const Eigen::MatrixXcd& a) {
  const Eigen::MatrixXcd outer = exp_i_hermitian(s * chi_t / 4.0 * displaced_kerr(alpha, a));
  const Eigen::MatrixXcd inner = exp_i_hermitian(-s * chi_t / 2.0 * displaced_kerr(-alpha, a));
  return outer * inner * outer;
}

Eigen::MatrixXcd target(Complex alpha, double chi_t, double s, const Eigen::MatrixXcd& a) {
  const double theta = -std::arg(alpha);
  const Eigen::MatrixXcd x = std::exp(kI * theta) * a.adjoint() + std::exp(-kI * theta) * a;
  return exp_i_hermitian(s * std::abs(alpha) * chi_t * x);
}

void check_args(Complex alpha, double chi_t, int dim, int low_levels) {
  if (!is_finite(alpha)) throw InvalidArgument("alpha must be finite");
  if (!(chi_t >= 0.0 && chi_t <= 0.2)) throw InvalidArgument("chi_t must lie in [0, 0.2]");
  if (low_levels <= 0 || low_levels > dim) throw InvalidArgument("low_levels must be in [1, dim]");
  const double reach = std::abs(alpha) * chi_t + std::sqrt(static_cast<double>(low_levels));
  if (dim < truncation_rule(reach) + low_levels) {
    throw TruncationError("Fock dimension too small for the sandwich check");
  }
}

}  // namespace

SandwichReport sandwich_displacement(Complex alpha, double chi_t, int dim, int low_levels) {
  check_args(alpha, chi_t, dim, low_levels);
  const Eigen::MatrixXcd a = annihilation(dim + kFockPadding);
  SandwichReport r;
  const Eigen::MatrixXcd up = segment_product(alpha, chi_t, 1.0, a);
  const Eigen::MatrixXcd um = segment_product(alpha, chi_t, -1.0, a);
  const Eigen::MatrixXcd vp = target(alpha, chi_t, 1.0, a);
  const Eigen::MatrixXcd vm = target(alpha, chi_t, -1.0, a);
  r.u_plus = up.topLeftCorner(dim, dim);
  r.u_minus = um.topLeftCorner(dim, dim);
  r.v_plus = vp.topLeftCorner(dim, dim);
  r.v_minus = vm.topLeftCorner(dim, dim);
  for (const auto* pair : {&up, &um}) {
    const Eigen::MatrixXcd& u = *pair;
    const Eigen::MatrixXcd& v = pair == &up ? vp : vm;
    const Eigen::MatrixXcd diff = (u - v).topLeftCorner(dim, low_levels);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
    r.error = std::max(r.error, svd.singularValues()(0));
  }
  r.unitarity_defect = std::max(unitarity_defect(r.u_plus), unitarity_defect(r.u_minus));
  return r;
}

Complex induced_displacement(Complex alpha, double chi_t, int dim) {
  check_args(alpha, chi_t, dim, 1);
  const Eigen::MatrixXcd a = annihilation(dim + kFockPadding);
  const Eigen::VectorXcd psi = segment_product(alpha, chi_t, 1.0, a).col(0);
  return psi.dot(a * psi);
}

}  // namespace qubus
