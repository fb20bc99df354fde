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

#include "internal.hpp"
#include "qubus/qubit_analysis.hpp"

namespace qubus {

HybridState register_input(std::span<const Complex> amps, Complex bus) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < amps.size()) ++n;
  if (n == 0 || (std::size_t{1} << n) != amps.size()) {
    throw InvalidArgument("qubit amplitude count must be a power of two >= 2, got " +
                          std::to_string(amps.size()));
  }
  double norm = 0.0;
  for (Complex c : amps) {
    if (!is_finite(c)) throw InvalidArgument("qubit amplitudes must be finite");
    norm += std::norm(c);
  }
  if (std::abs(norm - 1.0) > 1e-10) {
    throw InvalidArgument("qubit amplitudes must be normalized (norm^2 = " + std::to_string(norm) + ")");
  }
  return HybridState::product(static_cast<int>(n), amps, bus);
}

double wrap_phase(double x) {
  double y = std::remainder(x, 2.0 * kPi);
  if (y <= -kPi) y += 2.0 * kPi;
  return y;
}

double phase_aligned_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw InvalidArgument("state vectors differ in size");
  Complex overlap{};
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    overlap += std::conj(b[i]) * a[i];
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  // || a - e^{i phi} b ||^2 minimized at phi = arg <b|a>
  return std::sqrt(std::max(0.0, na + nb - 2.0 * std::abs(overlap)));
}

Process process_matrix(std::span<const BusOp> ops, Complex alpha) {
  Process p{};
  Complex first_bus{};
  for (Label l = 0; l < 4; ++l) {
    const CircuitRun run = run_circuit(HybridState::basis(2, l, alpha), ops);
    if (run.final.bus_spread() > 1e-9) {
      throw SimulationError("circuit leaves the bus entangled for input " + label_string(l, 2));
    }
    const Complex bus = run.final.branches()[0].bus;
    if (l == 0) first_bus = bus;
    if (std::abs(bus - first_bus) > 1e-9) {
      throw SimulationError("final bus depends on the qubit input " + label_string(l, 2));
    }
    const auto amps = run.final.qubit_amplitudes(1e-9);
    for (std::size_t r = 0; r < 4; ++r) p[r][l] = amps[r];
  }
  return p;
}

UnwrappedRun run_unwrapped(Label label, Complex alpha, std::span<const BusOp> ops) {
  HybridState s = HybridState::basis(2, label, alpha);
  double phase = 0.0;
  for (const auto& op : ops) {
    Complex delta{};
    if (const auto* d = std::get_if<CondDisp>(&op)) delta = d->beta;
    if (const auto* d = std::get_if<UncondDisp>(&op)) delta = d->beta;
    const double bus = std::abs(s.branches()[0].bus);
    const int pieces = 1 + static_cast<int>(std::ceil(std::abs(delta) * (bus + std::abs(delta))));
    for (int k = 0; k < pieces; ++k) {
      BusOp piece = op;
      if (auto* d = std::get_if<CondDisp>(&piece)) d->beta /= static_cast<double>(pieces);
      if (auto* d = std::get_if<UncondDisp>(&piece)) d->beta /= static_cast<double>(pieces);
      const Complex before = s.branches()[0].coeff;
      s = apply_op(s, piece);
      if (s.size() != 1) throw SimulationError("unwrapped run needs a branch-preserving circuit");
      phase += std::arg(s.branches()[0].coeff / before);
      if (std::holds_alternative<CondRot>(op) || std::holds_alternative<SingleQubit>(op)) break;
    }
  }
  return {s.branches()[0].bus, phase};
}

namespace detail {

std::vector<Complex> normalized_target(std::vector<Complex> amps) {
  double n = 0.0;
  for (Complex c : amps) n += std::norm(c);
  if (!(n > 1e-300)) return {};
  for (Complex& c : amps) c /= std::sqrt(n);
  return amps;
}

std::vector<Complex> qubit_vector(const HybridState& s) { return s.qubit_amplitudes(1e-9); }

std::array<Complex, 4> basis_final_buses(std::span<const BusOp> ops, Complex alpha) {
  std::array<Complex, 4> out{};
  for (Label l = 0; l < 4; ++l) {
    const CircuitRun run = run_circuit(HybridState::basis(2, l, alpha), ops);
    if (run.final.size() != 1) throw SimulationError("basis input split into several branches");
    out[l] = run.final.branches()[0].bus;
  }
  return out;
}

HeraldWindow odd_herald_window(const std::array<Complex, 4>& buses, double angle) {
  const Complex rot = std::exp(-kI * angle);
  const double odd = 2.0 * std::real(buses[1] * rot);
  const double gap = std::min(std::abs(2.0 * std::real(buses[0] * rot) - odd),
                              std::abs(2.0 * std::real(buses[3] * rot) - odd));
  return {odd, 0.5 * gap};
}

void homodyne_herald_metrics(const HybridState& pre, const Homodyne& model, const HeraldWindow& w,
                             std::span<const Complex> odd_target, const ShotOptions& opt,
                             ProtocolResult& r) {
  r.metrics["herald_center"] = w.center;
  r.metrics["herald_half_width"] = w.half_width;
  const double p = homodyne_window_probability(pre, model, w.center - w.half_width,
                                               w.center + w.half_width);
  r.metrics["herald_probability"] = p;
  if (!odd_target.empty()) {
    const auto at_center = homodyne_measure_at(pre, model, w.center);
    r.metrics["fidelity_at_center"] = fidelity_to(at_center.posterior, odd_target);
  }
  if (opt.shots == 0) return;
  struct Shot {
    double x = 0.0;
    bool heralded = false;
    double fidelity = 0.0;
  };
  const auto shots = run_shots<Shot>(opt, [&](Philox& rng, std::size_t) {
    const auto rec = homodyne_measure(pre, model, rng);
    const double x = std::get<double>(rec.outcome);
    Shot s{x, std::abs(x - w.center) < w.half_width, 0.0};
    if (s.heralded && !odd_target.empty()) s.fidelity = fidelity_to(rec.posterior, odd_target);
    return s;
  });
  std::uint64_t heralded = 0;
  double fsum = 0.0;
  std::vector<Outcome> xs;
  xs.reserve(shots.size());
  for (const auto& s : shots) {
    xs.emplace_back(s.x);
    if (s.heralded) {
      ++heralded;
      fsum += s.fidelity;
    }
  }
  const double rate = static_cast<double>(heralded) / static_cast<double>(opt.shots);
  r.metrics["herald_rate"] = rate;
  r.metrics["herald_rate_sigma"] = binomial_sigma(p, opt.shots);
  if (heralded > 0 && !odd_target.empty()) {
    r.metrics["heralded_mean_fidelity"] = fsum / static_cast<double>(heralded);
  }
  store_samples(r, xs);
}

void parity_discrimination(const HybridState& pre, const std::array<Complex, 4>& buses,
                           const Homodyne& model, double nominal_argument, const ShotOptions& opt,
                           ProtocolResult& r) {
  const double x_even = 2.0 * buses[0].real();
  const double x_odd = 2.0 * buses[1].real();
  const double mid = 0.5 * (x_even + x_odd);
  const double half_gap = 0.5 * std::abs(x_odd - x_even);
  const double v = 1.0 + model.excess_noise;
  const double e_exact = discrimination_error(half_gap, v);
  const double arg_exact = half_gap / std::sqrt(2.0 * v);
  const double arg_nominal = nominal_argument / std::sqrt(v);
  r.metrics["x_even"] = x_even;
  r.metrics["x_odd"] = x_odd;
  r.metrics["half_separation"] = half_gap;
  r.metrics["E_exact"] = e_exact;
  r.metrics["E_paper"] = 0.5 * std::erfc(arg_nominal);
  if (arg_nominal > 0.0) r.metrics["erfc_argument_ratio"] = arg_exact / arg_nominal;
  const bool odd_high = x_odd >= x_even;
  auto says_odd = [&](double x) { return (x >= mid) == odd_high; };

  if (opt.forced) {
    r.outcome = homodyne_measure_at(pre, model, std::get<double>(*opt.forced));
  } else if (opt.shots > 0) {
    Philox rng(opt.seed, 0);
    r.outcome = homodyne_measure(pre, model, rng);
  }
  if (r.outcome) {
    r.final = r.outcome->posterior;
    r.metrics["outcome_parity_odd"] = says_odd(std::get<double>(r.outcome->outcome)) ? 1.0 : 0.0;
  }
  if (opt.shots == 0) return;
  struct Shot {
    double x;
    bool error;
  };
  const auto shots = run_shots<Shot>(opt, [&](Philox& rng, std::size_t) {
    const auto rec = homodyne_measure(pre, model, rng);
    const double x = std::get<double>(rec.outcome);
    const auto q = qubit_vector(rec.posterior);
    const double p_odd = std::norm(q[1]) + std::norm(q[2]);
    const bool truth_odd = rng.uniform() < p_odd;
    return Shot{x, says_odd(x) != truth_odd};
  });
  std::uint64_t errors = 0;
  std::vector<Outcome> xs;
  xs.reserve(shots.size());
  for (const auto& s : shots) {
    errors += s.error ? 1 : 0;
    xs.emplace_back(s.x);
  }
  r.metrics["E_empirical"] = static_cast<double>(errors) / static_cast<double>(opt.shots);
  r.metrics["E_empirical_sigma"] = binomial_sigma(e_exact, opt.shots);
  store_samples(r, xs);
}

void store_samples(ProtocolResult& r, const std::vector<Outcome>& all) {
  const std::size_t n = std::min(all.size(), kMaxStoredSamples);
  r.samples.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n));
}

}  // namespace detail

}  // namespace qubus
