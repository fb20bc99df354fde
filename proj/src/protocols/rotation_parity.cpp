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
#include <vector>

#include "internal.hpp"
#include "qubus/qubit_analysis.hpp"
#include "qubus/sequences.hpp"

namespace qubus {

namespace {

std::vector<Complex> odd_target(std::span<const Complex> a) {
  return detail::normalized_target({0.0, a[1], a[2], 0.0});
}

void check_two_qubit(std::span<const Complex> amps, double alpha, double theta) {
  if (amps.size() != 4) throw InvalidArgument("parity gate needs a two-qubit input");
  if (!std::isfinite(alpha) || !std::isfinite(theta)) throw InvalidArgument("alpha and theta must be finite");
}

}  // namespace

ProtocolResult rotation_parity_number(std::span<const Complex> amps, double alpha, double theta,
                                      const MeasurementModel& detector, const ShotOptions& opt) {
  check_two_qubit(amps, alpha, theta);
  validate(detector);
  const bool homodyne = std::holds_alternative<Homodyne>(detector);
  std::vector<BusOp> ops{CondRot{0, theta}, CondRot{1, theta}};
  // the X(pi/2) variant reads the rotated peaks directly
  if (!homodyne) ops.push_back(UncondDisp{Complex{-alpha, 0.0}});
  const Complex a{alpha, 0.0};
  CircuitRun run = run_circuit(register_input(amps, a), ops);
  const HybridState pre = run.final;
  ProtocolResult r{std::nullopt, pre, {}, std::move(run.trajectory), {}, {}};
  r.metrics["admixture_exact"] = std::exp(-std::norm(a * (std::exp(2.0 * kI * theta) - 1.0)));
  r.metrics["admixture_nominal"] = std::exp(-4.0 * alpha * alpha * theta * theta);
  const auto odd = odd_target(amps);

  if (homodyne) {
    const auto& h = std::get<Homodyne>(detector);
    const auto w = detail::odd_herald_window(detail::basis_final_buses(ops, a), h.angle);
    detail::homodyne_herald_metrics(pre, h, w, odd, opt, r);
    if (opt.forced) {
      r.outcome = homodyne_measure_at(pre, h, std::get<double>(*opt.forced));
    } else if (opt.shots > 0) {
      Philox rng(opt.seed, 0);
      r.outcome = homodyne_measure(pre, h, rng);
    }
    if (r.outcome) r.final = r.outcome->posterior;
    return r;
  }
  if (const auto* b = std::get_if<Bucket>(&detector)) {
    detail::bucket_metrics(pre, odd, *b, opt, r);
    return r;
  }

  const double p0 = photon_number_probability(pre, 0);
  r.metrics["p_n0"] = p0;
  if (p0 > 1e-300 && !odd.empty()) {
    r.metrics["fidelity_n0"] = fidelity_to(photon_number_measure_at(pre, 0).posterior, odd);
  }
  if (opt.forced) {
    r.outcome = photon_number_measure_at(pre, std::get<std::int64_t>(*opt.forced));
  } else if (opt.shots > 0) {
    Philox rng(opt.seed, 0);
    r.outcome = photon_number_measure(pre, rng);
  }
  if (r.outcome) r.final = r.outcome->posterior;
  if (opt.shots == 0) return r;

  const double base = std::norm(a) * std::sin(2.0 * theta);
  struct Shot {
    std::int64_t n;
    double exact_deviation;
    double nominal_fidelity;
  };
  const auto shots = detail::run_shots<Shot>(opt, [&](Philox& rng, std::size_t) {
    const auto rec = photon_number_measure(pre, rng);
    const auto n = std::get<std::int64_t>(rec.outcome);
    Shot s{n, 0.0, 1.0};
    if (n == 0) return s;
    const double dn = static_cast<double>(n);
    const Complex in = std::pow(kI, dn);
    const Complex min = std::pow(-kI, dn);
    const double phi = base + dn * theta;
    const auto exact = detail::normalized_target(
        {amps[0] * std::exp(kI * phi) * in, 0.0, 0.0, amps[3] * std::exp(-kI * phi) * min});
    const auto nominal = detail::normalized_target({amps[0] * in, 0.0, 0.0, amps[3] * min});
    const auto q = detail::qubit_vector(rec.posterior);
    if (!exact.empty()) s.exact_deviation = phase_aligned_distance(q, exact);
    if (!nominal.empty()) s.nominal_fidelity = fidelity_to(rec.posterior, nominal);
    return s;
  });
  std::uint64_t zeros = 0, positive = 0;
  double max_dev = 0.0, fsum = 0.0;
  std::vector<Outcome> ns;
  ns.reserve(shots.size());
  for (const auto& s : shots) {
    ns.emplace_back(s.n);
    if (s.n == 0) {
      ++zeros;
      continue;
    }
    ++positive;
    max_dev = std::max(max_dev, s.exact_deviation);
    fsum += s.nominal_fidelity;
  }
  r.metrics["rate_n0"] = static_cast<double>(zeros) / static_cast<double>(opt.shots);
  r.metrics["rate_n0_sigma"] = detail::binomial_sigma(p0, opt.shots);
  r.metrics["exact_phase_max_deviation"] = max_dev;
  if (positive > 0) r.metrics["nominal_form_mean_fidelity"] = fsum / static_cast<double>(positive);
  detail::store_samples(r, ns);
  return r;
}

ProtocolResult rotation_parity_homodyne(std::span<const Complex> amps, double alpha, double theta,
                                        double excess_noise, const ShotOptions& opt) {
  check_two_qubit(amps, alpha, theta);
  const Homodyne model{0.0, excess_noise};
  validate(MeasurementModel{model});
  const Complex a{alpha, 0.0};
  const std::vector<BusOp> ops{CondRot{0, theta}, CondRot{1, theta},
                               UncondDisp{-2.0 * a * std::cos(2.0 * theta)}, CondRot{0, theta},
                               CondRot{1, theta}};
  CircuitRun run = run_circuit(register_input(amps, a), ops);
  const HybridState pre = run.final;
  ProtocolResult r{std::nullopt, pre, {}, std::move(run.trajectory), {}, {}};
  const auto buses = detail::basis_final_buses(ops, a);
  r.metrics["closure_error"] = std::max(std::abs(buses[0] + a), std::abs(buses[3] + a));
  const Complex odd_expected = a * (1.0 - 2.0 * std::cos(2.0 * theta));
  r.metrics["odd_amplitude_error"] =
      std::max(std::abs(buses[1] - odd_expected), std::abs(buses[2] - odd_expected));
  detail::parity_discrimination(pre, buses, model,
                                std::sqrt(2.0) * std::abs(alpha) * theta * theta, opt, r);
  return r;
}

ProtocolResult rotation_displacement_parity(std::span<const Complex> amps, double alpha,
                                            double theta, double excess_noise,
                                            const ShotOptions& opt) {
  check_two_qubit(amps, alpha, theta);
  const Homodyne model{0.0, excess_noise};
  validate(MeasurementModel{model});
  const Complex a{alpha, 0.0};
  const double beta = 0.5 * alpha * std::sin(2.0 * theta);
  const auto ops = instantiate(frozen_fig13(), theta, beta);
  CircuitRun run = run_circuit(register_input(amps, a), ops);
  const HybridState pre = run.final;
  ProtocolResult r{std::nullopt, pre, {}, std::move(run.trajectory), {}, {}};
  const auto buses = detail::basis_final_buses(ops, a);
  const Complex nominal_even = a * (1.0 - std::cos(2.0 * theta));
  const Complex corrected_even = a * std::cos(2.0 * theta);
  auto residual = [&](Complex even) {
    return std::max({std::abs(buses[0] - even), std::abs(buses[3] - even), std::abs(buses[1] - a),
                     std::abs(buses[2] - a)});
  };
  r.metrics["beta"] = beta;
  r.metrics["even_target_residual"] = residual(nominal_even);
  r.metrics["even_cos_residual"] = residual(corrected_even);
  detail::parity_discrimination(pre, buses, model,
                                std::abs(alpha) * theta * theta / std::sqrt(2.0), opt, r);
  return r;
}

}  // namespace qubus
