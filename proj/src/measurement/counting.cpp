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

#include <algorithm>
#include <cmath>
#include <string>

#include "qubus/fock.hpp"
#include "qubus/measurement.hpp"

namespace qubus {

namespace {

void require_live_bus(const HybridState& s, const char* what) {
  if (s.bus_consumed()) throw SimulationError(std::string(what) + " on a consumed bus");
}

double label_sum_probability(const HybridState& s, std::int64_t n) {
  std::vector<std::pair<Label, Complex>> acc;
  for (const auto& b : s.branches()) {
    const Complex amp = b.coeff * number_amplitude(static_cast<int>(n), b.bus);
    auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& p) { return p.first == b.label; });
    if (it == acc.end()) acc.emplace_back(b.label, amp);
    else it->second += amp;
  }
  double p = 0.0;
  for (const auto& [l, a] : acc) p += std::norm(a);
  return p;
}

Complex expm1c(Complex z) {
  if (std::abs(z) < 1e-5) return z + z * z / 2.0 + z * z * z / 6.0;
  return std::exp(z) - 1.0;
}

enum class ClickPart { kAll, kEven, kOdd };

// Unnormalized qubit density of the bus-traced state projected on n >= 1
// (or on the even / odd n >= 1 sectors).
Eigen::MatrixXcd click_density(const HybridState& s, ClickPart part) {
  const Eigen::Index dim = Eigen::Index{1} << s.n_qubits();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
  const double norm = s.norm_squared();
  for (const auto& bi : s.branches()) {
    for (const auto& bj : s.branches()) {
      const Complex z = std::conj(bj.bus) * bi.bus;
      Complex f;
      switch (part) {
        case ClickPart::kAll: f = expm1c(z); break;
        case ClickPart::kEven: {
          const Complex sh = std::sinh(z / 2.0);
          f = 2.0 * sh * sh;
          break;
        }
        case ClickPart::kOdd: f = std::sinh(z); break;
      }
      rho(static_cast<Eigen::Index>(bi.label), static_cast<Eigen::Index>(bj.label)) +=
          bi.coeff * std::conj(bj.coeff) *
          std::exp(-0.5 * (std::norm(bi.bus) + std::norm(bj.bus))) * f / norm;
    }
  }
  return rho;
}

}  // namespace

double photon_number_probability(const HybridState& s, std::int64_t n) {
  require_live_bus(s, "photon counting");
  if (n < 0) return 0.0;
  return label_sum_probability(s, n) / s.norm_squared();
}

std::vector<double> photon_number_pmf(const HybridState& s, int n_max) {
  require_live_bus(s, "photon counting");
  if (n_max < 0) throw InvalidArgument("n_max must be >= 0");
  const double norm = s.norm_squared();
  std::vector<double> p(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) p[static_cast<std::size_t>(n)] = label_sum_probability(s, n) / norm;
  return p;
}

MeasurementRecord photon_number_measure_at(const HybridState& s, std::int64_t n) {
  require_live_bus(s, "photon counting");
  if (n < 0) throw InvalidArgument("photon number must be >= 0");
  const double p = photon_number_probability(s, n);
  if (!(p >= 1e-300)) {
    throw SimulationError("photon number " + std::to_string(n) + " has zero probability");
  }
  std::vector<Branch> out;
  out.reserve(s.size());
  for (const auto& b : s.branches()) {
    out.push_back({b.label, b.coeff * number_amplitude(static_cast<int>(n), b.bus), Complex{}});
  }
  // n = 0 leaves the bus in vacuum, itself a coherent state
  HybridState post(s.n_qubits(), std::move(out), s.merge_tol(), s.branch_cap(), n > 0);
  return MeasurementRecord{n, p, post.normalized(), 0.0};
}

MeasurementRecord photon_number_measure(const HybridState& s, Philox& rng) {
  require_live_bus(s, "photon counting");
  double max_amp = 0.0;
  for (const auto& b : s.branches()) max_amp = std::max(max_amp, std::abs(b.bus));
  const int n_max = truncation_rule(max_amp);
  const double norm = s.norm_squared();
  const double u = rng.uniform();
  double acc = 0.0;
  std::int64_t chosen = -1;
  std::int64_t last_nonzero = 0;
  for (int n = 0; n <= n_max; ++n) {
    const double p = label_sum_probability(s, n) / norm;
    if (p > 0.0) last_nonzero = n;
    acc += p;
    if (u <= acc) {
      chosen = n;
      break;
    }
  }
  if (chosen < 0) chosen = last_nonzero;
  return photon_number_measure_at(s, chosen);
}

double bucket_click_probability(const HybridState& s) {
  require_live_bus(s, "bucket detection");
  return std::max(0.0, click_density(s, ClickPart::kAll).trace().real());
}

BucketRecord bucket_measure_at(const HybridState& s, const Bucket& model, bool click) {
  require_live_bus(s, "bucket detection");
  if (!click) {
    const auto rec = photon_number_measure_at(s, 0);
    MixedOutcome mix;
    mix.components.emplace_back(1.0, rec.posterior);
    return BucketRecord{false, rec.probability, std::move(mix), 1.0};
  }
  const Eigen::MatrixXcd rho = click_density(s, ClickPart::kAll);
  const double p = rho.trace().real();
  if (!(p >= 1e-300)) throw SimulationError("bucket click has zero probability");
  const Eigen::MatrixXcd even = click_density(s, ClickPart::kEven);
  const Eigen::MatrixXcd odd = click_density(s, ClickPart::kOdd);
  const double pe = even.trace().real();
  const double po = odd.trace().real();
  Eigen::MatrixXcd post;
  double a = pe / p;
  if (model.worst_case && pe > 1e-300 && po > 1e-300) {
    post = 0.5 * even / pe + 0.5 * odd / po;
    a = 0.5;
  } else {
    post = rho / p;
  }
  return BucketRecord{true, p, ensemble_from_density(post, s.n_qubits()), a};
}

BucketRecord bucket_measure(const HybridState& s, const Bucket& model, Philox& rng) {
  const double p_click = bucket_click_probability(s);
  return bucket_measure_at(s, model, rng.uniform() < p_click);
}

}  // namespace qubus
