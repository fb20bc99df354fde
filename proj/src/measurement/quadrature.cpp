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

#include "qubus/measurement.hpp"

namespace qubus {

Complex quadrature_kernel(double x, Complex alpha, double angle) {
  const Complex r = alpha * std::exp(-kI * angle);
  const double a = r.real();
  const double b = r.imag();
  const double norm = std::pow(2.0 * kPi, -0.25);
  return norm * std::exp(Complex{-(x - 2.0 * a) * (x - 2.0 * a) / 4.0, b * x - a * b});
}

double discrimination_error(double half_separation, double variance) {
  if (!(variance > 0.0)) throw InvalidArgument("variance must be positive");
  return 0.5 * std::erfc(std::abs(half_separation) / std::sqrt(2.0 * variance));
}

double qnd_error_nominal(double beta, double excess_noise) {
  if (!(excess_noise >= 0.0)) throw InvalidArgument("excess_noise must be >= 0");
  return 0.5 * std::erfc(std::abs(beta) / std::sqrt(2.0 * (1.0 + excess_noise)));
}

void validate(const MeasurementModel& m) {
  if (const auto* h = std::get_if<Homodyne>(&m)) {
    if (!std::isfinite(h->angle)) throw InvalidArgument("homodyne angle must be finite");
    if (!(h->excess_noise >= 0.0) || !std::isfinite(h->excess_noise)) {
      throw InvalidArgument("excess_noise must be finite and >= 0");
    }
  }
}

}  // namespace qubus
