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

#include "qubus/types.hpp"

namespace qubus {

struct JCParams {
  double omega0 = 0.0;
  double omega_c = 0.0;
  double Omega = 0.0;
  double delta_d = 0.0;  // omega_c - omega0
  double t_final = 0.0;
  double dt = 0.0;  // 0 selects 0.01 / |delta_d|
};

struct DispersiveFit {
  double chi_eff = 0.0;
  double chi_predicted = 0.0;  // Omega^2 / (4 delta_d)
  double relative_error = 0.0;
  double dt_used = 0.0;
  /// |chi(dt) - chi(dt/2)| / |chi(dt/2)| at the accepted step.
  double step_change = 0.0;
};

/// Integrates the Jaynes-Cummings model for a coherent bus and fits the
/// conditional rotation rate. Throws InvalidArgument outside the dispersive
/// regime and SimulationError if step halving does not converge.
DispersiveFit dispersive_jc_validate(const JCParams& p, Complex alpha, int dim);

}  // namespace qubus
