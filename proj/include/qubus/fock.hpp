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

#include <Eigen/Dense>

#include "qubus/types.hpp"

namespace qubus {

/// Extra levels added when building operators; results are cropped back.
inline constexpr int kFockPadding = 16;

/// Fock dimension adequate for coherent states with |alpha| <= max_amplitude.
int truncation_rule(double max_amplitude);

/// Poisson mass of |alpha> at levels n >= dim.
double coherent_tail_mass(Complex alpha, int dim);

/// <n|alpha> computed in log space.
Complex number_amplitude(int n, Complex alpha);

Eigen::VectorXcd coherent_fock(Complex alpha, int dim);

Eigen::MatrixXcd annihilation(int dim);

/// exp(i h) for Hermitian h.
Eigen::MatrixXcd exp_i_hermitian(const Eigen::MatrixXcd& h);

/// D(beta) = exp(beta a^dagger - conj(beta) a), built in dim + padding and cropped.
Eigen::MatrixXcd displacement_matrix(Complex beta, int dim);

/// exp(i theta a^dagger a), stored as its diagonal.
Eigen::VectorXcd number_phase_diagonal(double theta, int dim);
Eigen::MatrixXcd number_phase_matrix(double theta, int dim);

/// Mass in the top 10% of levels.
double top_tail_mass(const Eigen::VectorXcd& v);

/// max |(U^dagger U - I)_{ij}| over i, j < 0.9 dim.
double unitarity_defect(const Eigen::MatrixXcd& u);

}  // namespace qubus
