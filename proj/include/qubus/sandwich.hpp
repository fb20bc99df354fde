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

struct SandwichReport {
  /// Composed three-segment unitaries for sigma_z = +1 and -1 (cropped to dim).
  Eigen::MatrixXcd u_plus, u_minus;
  /// Target conditional displacements exp(+-i |alpha| chi_t X(theta)).
  Eigen::MatrixXcd v_plus, v_minus;
  /// Spectral norm of U - V on inputs below low_levels, worst sign.
  double error = 0.0;
  double unitarity_defect = 0.0;
};

SandwichReport sandwich_displacement(Complex alpha, double chi_t, int dim,
                                     int low_levels = 8);

/// <a> after the sigma_z = +1 sandwich acting on vacuum.
Complex induced_displacement(Complex alpha, double chi_t, int dim);

}  // namespace qubus
