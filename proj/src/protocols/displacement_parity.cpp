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

namespace qubus {

namespace {

std::vector<Complex> odd_target(std::span<const Complex> a) {
  return detail::normalized_target({0.0, a[1], a[2], 0.0});
}

std::vector<Complex> even_target(std::span<const Complex> a, std::int64_t n) {
  const double sign = n % 2 == 0 ? 1.0 : -1.0;
  return detail::normalized_target({a[0], 0.0, 0.0, sign * a[3]});
}

void number_detector(const HybridState& pre, std::span<const Complex> amps, const ShotOptions& opt,
                     double beta, ProtocolResult& r) {
  const auto odd = odd_target(amps);
  const double p0 = photon_number_probability(pre, 0);
  r.metrics["p_n0"] = p0;
  r.metrics["admixture_bound"] = std::exp(-4.0 * beta * beta);
  if (p0 > 1e-300 && !odd.empty()) {
    r.metrics["fidelity_n0"] = fidelity_to(photon_number_measure_at(pre, 0).posterior, odd);
  }
  if (opt.forced) {
    r.outcome = photon_number_measure_at(pre, std::get<std::int64_t>(*opt.forced));
  } else if (opt.shots > 0) {
    Philox rng(opt.seed, 0);
    r.outcome = photon_number_measure(pre, rng);
  }
  if (opt.shots == 0) return;
  struct Shot {
    std::int64_t n;
    double deviation;  // from the heralded even-parity target, n > 0 only
  };
  const auto shots = detail::run_shots<Shot>(opt, [&](Philox& rng, std::size_t) {
    const auto rec = photon_number_measure(pre, rng);
    const auto n = std::get<std::int64_t>(rec.outcome);
    double dev = 0.0;
    if (n > 0) {
      const auto target = even_target(amps, n);
      if (!target.empty()) dev = phase_aligned_distance(detail::qubit_vector(rec.posterior), target);
    }
    return Shot{n, dev};
  });
  std::uint64_t zeros = 0;
  double max_dev = 0.0;
  std::vector<Outcome> ns;
  ns.reserve(shots.size());
  for (const auto& s : shots) {
    zeros += s.n == 0 ? 1 : 0;
    max_dev = std::max(max_dev, s.deviation);
    ns.emplace_back(s.n);
  }
  r.metrics["rate_n0"] = static_cast<double>(zeros) / static_cast<double>(opt.shots);
  r.metrics["rate_n0_sigma"] = detail::binomial_sigma(p0, opt.shots);
  r.metrics["even_posterior_max_deviation"] = max_dev;
  detail::store_samples(r, ns);
}

}  // namespace

void detail::bucket_metrics(const HybridState& pre, std::span<const Complex> odd,
                            const Bucket& model, const ShotOptions& opt, ProtocolResult& r) {
  const double pc = bucket_click_probability(pre);
  r.metrics["p_click"] = pc;
  if (pc > 1e-300) {
    const auto click = bucket_measure_at(pre, model, true);
    r.metrics["A"] = click.even_weight;
    r.final = click.posterior;
  }
  if (1.0 - pc > 1e-300 && !odd.empty()) {
    const auto none = bucket_measure_at(pre, model, false);
    r.metrics["fidelity_no_click"] = fidelity_to(none.posterior.components[0].second, odd);
  }
  std::optional<BucketRecord> rec;
  if (opt.forced) {
    rec = bucket_measure_at(pre, model, std::get<bool>(*opt.forced));
  } else if (opt.shots > 0) {
    Philox rng(opt.seed, 0);
    rec = bucket_measure(pre, model, rng);
  }
  if (rec) r.final = rec->posterior;
  if (opt.shots == 0) return;
  const auto clicks = detail::run_shots<char>(opt, [&](Philox& rng, std::size_t) {
    return static_cast<char>(rng.uniform() < pc ? 1 : 0);
  });
  std::uint64_t n_click = 0;
  std::vector<Outcome> out;
  out.reserve(clicks.size());
  for (char c : clicks) {
    n_click += c != 0 ? 1 : 0;
    out.emplace_back(c != 0);
  }
  r.metrics["click_rate"] = static_cast<double>(n_click) / static_cast<double>(opt.shots);
  r.metrics["click_rate_sigma"] = detail::binomial_sigma(pc, opt.shots);
  detail::store_samples(r, out);
}

ProtocolResult parity_gate_displacement(std::span<const Complex> amps, double beta, Complex alpha,
                                        const MeasurementModel& detector, const ShotOptions& opt) {
  if (amps.size() != 4) throw InvalidArgument("parity gate needs a two-qubit input");
  if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
  validate(detector);
  const HybridState input = register_input(amps, alpha);
  const std::vector<BusOp> ops{CondDisp{0, Complex{beta, 0.0}}, CondDisp{1, Complex{beta, 0.0}},
                               UncondDisp{-alpha}};
  CircuitRun run = run_circuit(input, ops);
  const HybridState pre = run.final;
  ProtocolResult r{std::nullopt, pre, {}, std::move(run.trajectory), {}, {}};

  if (std::holds_alternative<PhotonNumber>(detector)) {
    number_detector(pre, amps, opt, beta, r);
    if (r.outcome) r.final = r.outcome->posterior;
  } else if (const auto* b = std::get_if<Bucket>(&detector)) {
    detail::bucket_metrics(pre, odd_target(amps), *b, opt, r);
  } else {
    const auto& h = std::get<Homodyne>(detector);
    const auto w = detail::odd_herald_window(detail::basis_final_buses(ops, alpha), h.angle);
    detail::homodyne_herald_metrics(pre, h, w, odd_target(amps), opt, r);
    if (opt.forced) {
      r.outcome = homodyne_measure_at(pre, h, std::get<double>(*opt.forced));
    } else if (opt.shots > 0) {
      Philox rng(opt.seed, 0);
      r.outcome = homodyne_measure(pre, h, rng);
    }
    if (r.outcome) r.final = r.outcome->posterior;
  }
  return r;
}

namespace {

// Weighted pure components; weights need not sum to one.
using Ensemble = std::vector<std::pair<double, HybridState>>;

HybridState parity_round_input(const HybridState& qubits, bool hadamards, double beta) {
  HybridState s = qubits.bus_consumed() ? qubits.with_fresh_bus(Complex{}) : qubits;
  if (hadamards) {
    s = apply_single_qubit(s, 0, gates::hadamard());
    s = apply_single_qubit(s, 1, gates::hadamard());
  }
  s = apply_cond_disp(s, 0, Complex{beta, 0.0});
  return apply_cond_disp(s, 1, Complex{beta, 0.0});
}

Ensemble compress(const Ensemble& e) {
  if (e.empty()) return {};
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  for (const auto& [w, st] : e) rho += w * reduced_qubit_density(st);
  const double tr = rho.trace().real();
  if (!(tr > 1e-300)) return {};
  Ensemble out;
  for (const auto& [w, st] : ensemble_from_density(rho / tr, 2).components) out.emplace_back(w * tr, st);
  return out;
}

}  // namespace

ProtocolResult bucket_purification(std::span<const Complex> amps, double beta, int iterations,
                                   bool worst_case, const ShotOptions& opt) {
  if (amps.size() != 4) throw InvalidArgument("purification needs a two-qubit input");
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
  const HybridState input = register_input(amps, Complex{});
  const Bucket model{worst_case};

  // Exact propagation of the unheralded ensemble.
  Ensemble pending{{1.0, input}};
  Ensemble success;
  std::vector<Metrics> ledger;
  double residual = 1.0;
  for (int k = 1; k <= iterations && !pending.empty(); ++k) {
    Ensemble next;
    double succeeded = 0.0;
    double a_weighted = 0.0, click_mass = 0.0;
    for (const auto& [w, st] : pending) {
      const HybridState pre = parity_round_input(st, k > 1, beta);
      const double pc = bucket_click_probability(pre);
      if (1.0 - pc > 1e-300) {
        const auto none = bucket_measure_at(pre, model, false);
        success.emplace_back(w * none.probability, none.posterior.components[0].second);
        succeeded += w * none.probability;
      }
      if (pc > 1e-300) {
        const auto click = bucket_measure_at(pre, model, true);
        for (const auto& [cw, cs] : click.posterior.components) next.emplace_back(w * pc * cw, cs);
        a_weighted += w * pc * click.even_weight;
        click_mass += w * pc;
      }
    }
    pending = compress(next);
    residual = 0.0;
    for (const auto& p : pending) residual += p.first;
    ledger.push_back({{"iteration", k},
                      {"success_probability", succeeded},
                      {"residual", residual},
                      {"A", click_mass > 0.0 ? a_weighted / click_mass : 0.0},
                      {"residual_nominal", std::pow(0.5, k)}});
  }
  while (static_cast<int>(ledger.size()) < iterations) {
    const int k = static_cast<int>(ledger.size()) + 1;
    ledger.push_back({{"iteration", k}, {"success_probability", 0.0}, {"residual", 0.0}, {"A", 0.0},
                      {"residual_nominal", std::pow(0.5, k)}});
  }

  MixedOutcome out;
  double total = 0.0;
  for (const auto& s : success) total += s.first;
  for (const auto& [w, st] : success) {
    if (w / total > 1e-14) out.components.emplace_back(w / total, st);
  }
  double kept = 0.0;
  for (const auto& c : out.components) kept += c.first;
  for (auto& c : out.components) c.first /= kept;

  ProtocolResult r{std::nullopt, out, {}, {}, {}, std::move(ledger)};
  r.metrics["residual"] = residual;
  r.metrics["residual_nominal"] = std::pow(0.5, iterations);
  r.metrics["success_probability"] = 1.0 - residual;
  r.metrics["iterations"] = iterations;

  if (opt.shots > 0) {
    // Monte Carlo: sample click outcomes and click-ensemble components.
    const auto rounds = detail::run_shots<int>(opt, [&](Philox& rng, std::size_t) {
      HybridState st = input;
      for (int k = 1; k <= iterations; ++k) {
        const HybridState pre = parity_round_input(st, k > 1, beta);
        const auto rec = bucket_measure(pre, model, rng);
        if (!rec.click) return k;
        const double u = rng.uniform();
        double acc = 0.0;
        const auto& comps = rec.posterior.components;
        st = comps.back().second;
        for (const auto& [w, cs] : comps) {
          acc += w;
          if (u <= acc) {
            st = cs;
            break;
          }
        }
      }
      return 0;
    });
    std::uint64_t failures = 0;
    std::vector<Outcome> out_rounds;
    out_rounds.reserve(rounds.size());
    for (int k : rounds) {
      failures += k == 0 ? 1 : 0;
      out_rounds.emplace_back(static_cast<std::int64_t>(k));
    }
    r.metrics["residual_mc"] = static_cast<double>(failures) / static_cast<double>(opt.shots);
    r.metrics["residual_mc_sigma"] = detail::binomial_sigma(residual, opt.shots);
    detail::store_samples(r, out_rounds);
  }
  return r;
}

}  // namespace qubus
