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

#include "qubus/cli.hpp"
#include "qubus/parallel.hpp"
#include "qubus/qubit_analysis.hpp"

namespace qubus::cli {

namespace {

constexpr int kMaxQubits = 16;

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InvalidArgument("field '" + field + "': " + what);
}

double param(const Scenario& sc, const char* key) {
  const std::string field = std::string("protocol.params.") + key;
  if (!sc.params.contains(key)) bad(field, "missing");
  const json& v = sc.params.at(key);
  if (!v.is_number() || !std::isfinite(v.get<double>())) bad(field, "expected a finite number");
  return v.get<double>();
}

double param_or(const Scenario& sc, const char* key, double fallback) {
  return sc.params.contains(key) ? param(sc, key) : fallback;
}

bool flag_or(const Scenario& sc, const char* key, bool fallback) {
  if (!sc.params.contains(key)) return fallback;
  const json& v = sc.params.at(key);
  if (!v.is_boolean()) bad(std::string("protocol.params.") + key, "expected a boolean");
  return v.get<bool>();
}

void need_qubits(const Scenario& sc, int n) {
  if (sc.n_qubits != n) {
    bad("n_qubits", "protocol '" + sc.protocol + "' needs " + std::to_string(n) + " qubit(s)");
  }
}

const MeasurementModel& need_detector(const Scenario& sc) {
  if (!sc.measure) bad("measure", "protocol '" + sc.protocol + "' needs a detector");
  return *sc.measure;
}

/// Excess noise of a homodyne-only protocol: from `measure` when given,
/// otherwise from the params.
double homodyne_noise(const Scenario& sc) {
  if (sc.measure) {
    const auto* h = std::get_if<Homodyne>(&*sc.measure);
    if (h == nullptr) bad("measure.type", "protocol '" + sc.protocol + "' reads out by homodyne");
    if (h->angle != 0.0) bad("measure.angle", "protocol '" + sc.protocol + "' measures X(0)");
    return h->excess_noise;
  }
  return param_or(sc, "excess_noise", 0.0);
}

double real_alpha(const Scenario& sc) {
  if (sc.params.contains("alpha")) return param(sc, "alpha");
  if (sc.bus.imag() != 0.0) bad("initial.bus", "protocol '" + sc.protocol + "' needs a real bus amplitude");
  return sc.bus.real();
}

enum class OutcomeKind { kReal, kCount, kClick };

OutcomeKind kind_of(const MeasurementModel& m) {
  if (std::holds_alternative<Homodyne>(m)) return OutcomeKind::kReal;
  if (std::holds_alternative<PhotonNumber>(m)) return OutcomeKind::kCount;
  return OutcomeKind::kClick;
}

std::optional<Outcome> forced_outcome(const Scenario& sc, OutcomeKind kind) {
  if (!sc.forced) return std::nullopt;
  const json& f = *sc.forced;
  switch (kind) {
    case OutcomeKind::kReal:
      if (!f.is_number() || !std::isfinite(f.get<double>())) bad("forced_outcome", "expected a real quadrature value");
      return Outcome{f.get<double>()};
    case OutcomeKind::kCount:
      if (!f.is_number_integer() || f.get<std::int64_t>() < 0) bad("forced_outcome", "expected a photon count >= 0");
      return Outcome{f.get<std::int64_t>()};
    case OutcomeKind::kClick:
      if (!f.is_boolean()) bad("forced_outcome", "expected a boolean click");
      return Outcome{f.get<bool>()};
  }
  return std::nullopt;
}

ShotOptions shot_options(const Scenario& sc, bool parallel, std::optional<OutcomeKind> kind) {
  ShotOptions opt;
  opt.shots = sc.shots;
  opt.seed = sc.seed;
  opt.parallel = parallel;
  if (sc.forced) {
    if (!kind) bad("forced_outcome", "this scenario has no measurement to force");
    opt.forced = forced_outcome(sc, *kind);
  }
  return opt;
}

ProtocolResult dispatch(const Scenario& sc, bool parallel) {
  const std::string& p = sc.protocol;
  if (p == "qnd_qubit_measurement") {
    need_qubits(sc, 1);
    const double noise = homodyne_noise(sc);
    return qnd_qubit_measurement(sc.amps[0], sc.amps[1], param(sc, "beta"), noise, sc.bus,
                                 shot_options(sc, parallel, OutcomeKind::kReal));
  }
  if (p == "parity_gate_displacement") {
    need_qubits(sc, 2);
    const auto& det = need_detector(sc);
    return parity_gate_displacement(sc.amps, param(sc, "beta"), sc.bus, det,
                                    shot_options(sc, parallel, kind_of(det)));
  }
  if (p == "bucket_purification") {
    need_qubits(sc, 2);
    const double it = param(sc, "iterations");
    if (it != std::floor(it) || it < 1 || it > 64) bad("protocol.params.iterations", "expected an integer in [1, 64]");
    return bucket_purification(sc.amps, param(sc, "beta"), static_cast<int>(it),
                               flag_or(sc, "worst_case", false),
                               shot_options(sc, parallel, OutcomeKind::kClick));
  }
  if (p == "rotation_parity_number") {
    need_qubits(sc, 2);
    const auto& det = need_detector(sc);
    return rotation_parity_number(sc.amps, real_alpha(sc), param(sc, "theta"), det,
                                  shot_options(sc, parallel, kind_of(det)));
  }
  if (p == "rotation_parity_homodyne" || p == "rotation_displacement_parity") {
    need_qubits(sc, 2);
    const double noise = homodyne_noise(sc);
    const auto opt = shot_options(sc, parallel, OutcomeKind::kReal);
    if (p == "rotation_parity_homodyne") {
      return rotation_parity_homodyne(sc.amps, real_alpha(sc), param(sc, "theta"), noise, opt);
    }
    return rotation_displacement_parity(sc.amps, real_alpha(sc), param(sc, "theta"), noise, opt);
  }
  if (p == "cphase_displacement_gate" || p == "cnot_displacement_variant" || p == "rotation_only_cphase") {
    need_qubits(sc, 2);
    if (sc.measure) bad("measure", "protocol '" + p + "' is measurement free");
    if (sc.shots != 0 || sc.forced) bad("shots", "protocol '" + p + "' is deterministic");
    if (p == "rotation_only_cphase") {
      return rotation_only_cphase(sc.amps, param(sc, "beta"), param(sc, "theta"),
                                  flag_or(sc, "final_displacement", true));
    }
    if (p == "cphase_displacement_gate") {
      return cphase_displacement_gate(sc.amps, param(sc, "beta1"), param(sc, "beta2"), sc.bus);
    }
    return cnot_displacement_variant(sc.amps, param(sc, "beta1"), param(sc, "beta2"), sc.bus);
  }
  bad("protocol.name", "unknown protocol '" + p + "'");
}

std::vector<double> label_probabilities(const HybridState& s) {
  std::vector<double> p(std::size_t{1} << s.n_qubits(), 0.0);
  const auto br = s.branches();
  for (std::size_t i = 0; i < br.size(); ++i) {
    for (std::size_t j = 0; j < br.size(); ++j) {
      if (br[i].label != br[j].label) continue;
      const Complex ov = s.bus_consumed() ? Complex{1.0, 0.0} : coherent_overlap(br[i].bus, br[j].bus);
      p[br[i].label] += std::real(br[i].coeff * std::conj(br[j].coeff) * ov);
    }
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return p;
}

json record_json(const MeasurementRecord& r, bool homodyne) {
  json j{{"value", to_json(r.outcome)}, {"probability", r.probability}};
  if (homodyne) j["latent"] = r.latent;
  return j;
}

json samples_json(const std::vector<Outcome>& samples) {
  json arr = json::array();
  for (const auto& o : samples) arr.push_back(to_json(o));
  return arr;
}

/// Circuit scenario followed by an optional detector.
ProtocolResult run_ops(const Scenario& sc, bool parallel, json& record) {
  CircuitRun run = run_circuit(register_input(sc.amps, sc.bus), *sc.ops);
  const HybridState pre = run.final;
  ProtocolResult r{std::nullopt, pre, {}, std::move(run.trajectory), {}, {}};
  r.metrics["bus_spread"] = pre.bus_spread();
  r.metrics["max_bus_amplitude"] = max_bus_amplitude(r.trajectory);
  r.metrics["branches"] = static_cast<double>(pre.size());
  const auto probs = label_probabilities(pre);
  for (std::size_t l = 0; l < probs.size(); ++l) {
    r.metrics["p_label_" + bits(static_cast<Label>(l), sc.n_qubits)] = probs[l];
  }
  if (!sc.measure) {
    if (sc.shots != 0) bad("shots", "shots need a measurement");
    if (sc.forced) bad("forced_outcome", "this scenario has no measurement to force");
    return r;
  }
  const MeasurementModel& m = *sc.measure;
  const ShotOptions opt = shot_options(sc, parallel, kind_of(m));

  if (const auto* b = std::get_if<Bucket>(&m)) {
    r.metrics["p_click"] = bucket_click_probability(pre);
    std::optional<BucketRecord> rec;
    if (opt.forced) {
      rec = bucket_measure_at(pre, *b, std::get<bool>(*opt.forced));
    } else if (opt.shots > 0) {
      Philox rng(opt.seed, 0);
      rec = bucket_measure(pre, *b, rng);
    }
    if (rec) {
      record = {{"value", rec->click}, {"probability", rec->probability}, {"even_weight", rec->even_weight}};
      r.final = rec->posterior;
    }
    if (opt.shots > 0) {
      const auto clicks = run_indexed<char>(opt.shots, opt.parallel, [&](std::size_t i) {
        Philox rng(opt.seed, i);
        return static_cast<char>(bucket_measure(pre, *b, rng).click);
      });
      std::uint64_t n = 0;
      for (std::size_t i = 0; i < clicks.size(); ++i) {
        n += clicks[i] ? 1 : 0;
        if (r.samples.size() < kMaxStoredSamples) r.samples.emplace_back(clicks[i] != 0);
      }
      r.metrics["click_rate"] = static_cast<double>(n) / static_cast<double>(opt.shots);
    }
    return r;
  }

  const bool homodyne = std::holds_alternative<Homodyne>(m);
  auto measure_one = [&](Philox& rng) {
    return homodyne ? homodyne_measure(pre, std::get<Homodyne>(m), rng) : photon_number_measure(pre, rng);
  };
  if (!homodyne) r.metrics["p_n0"] = photon_number_probability(pre, 0);
  if (opt.forced) {
    r.outcome = homodyne ? homodyne_measure_at(pre, std::get<Homodyne>(m), std::get<double>(*opt.forced))
                         : photon_number_measure_at(pre, std::get<std::int64_t>(*opt.forced));
  } else if (opt.shots > 0) {
    Philox rng(opt.seed, 0);
    r.outcome = measure_one(rng);
  }
  if (r.outcome) {
    record = record_json(*r.outcome, homodyne);
    r.final = r.outcome->posterior;
  }
  if (opt.shots > 0) {
    const auto xs = run_indexed<double>(opt.shots, opt.parallel, [&](std::size_t i) {
      Philox rng(opt.seed, i);
      const auto rec = measure_one(rng);
      return homodyne ? std::get<double>(rec.outcome) : static_cast<double>(std::get<std::int64_t>(rec.outcome));
    });
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    r.metrics["sample_mean"] = mean;
    if (xs.size() > 1) r.metrics["sample_variance"] = var / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 0; i < xs.size() && i < kMaxStoredSamples; ++i) {
      if (homodyne) {
        r.samples.emplace_back(xs[i]);
      } else {
        r.samples.emplace_back(static_cast<std::int64_t>(xs[i]));
      }
    }
  }
  return r;
}

}  // namespace

const std::vector<std::string>& protocol_names() {
  static const std::vector<std::string> names{
      "qnd_qubit_measurement",    "parity_gate_displacement", "bucket_purification",
      "rotation_parity_number",   "rotation_parity_homodyne", "rotation_displacement_parity",
      "cphase_displacement_gate", "cnot_displacement_variant", "rotation_only_cphase"};
  return names;
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) bad("<root>", "expected an object");
  if (!j.contains("schema") || j.at("schema") != kSchema) bad("schema", std::string("expected \"") + kSchema + "\"");
  Scenario sc;
  sc.source = j;
  if (!j.contains("n_qubits")) bad("n_qubits", "missing");
  if (!j.at("n_qubits").is_number_integer()) bad("n_qubits", "expected an integer");
  sc.n_qubits = j.at("n_qubits").get<int>();
  if (sc.n_qubits < 1 || sc.n_qubits > kMaxQubits) bad("n_qubits", "must be in [1, 16]");
  const std::size_t dim = std::size_t{1} << sc.n_qubits;

  if (!j.contains("initial") || !j.at("initial").is_object()) bad("initial", "missing or not an object");
  const json& init = j.at("initial");
  if (!init.contains("qubits")) bad("initial.qubits", "missing");
  const json& q = init.at("qubits");
  if (q.is_string()) {
    if (q.get<std::string>() != "plus_all") bad("initial.qubits", "unknown preset '" + q.get<std::string>() + "'");
    sc.amps.assign(dim, Complex{1.0 / std::sqrt(static_cast<double>(dim)), 0.0});
  } else if (q.is_array()) {
    if (q.size() != dim) bad("initial.qubits", "expected " + std::to_string(dim) + " amplitudes");
    for (std::size_t i = 0; i < dim; ++i) {
      sc.amps.push_back(complex_from_json(q[i], "initial.qubits[" + std::to_string(i) + "]"));
    }
    double norm = 0.0;
    for (const auto& a : sc.amps) norm += std::norm(a);
    if (std::abs(norm - 1.0) > 1e-10) bad("initial.qubits", "amplitudes must be normalized");
  } else {
    bad("initial.qubits", "expected an amplitude list or \"plus_all\"");
  }
  sc.bus = init.contains("bus") ? complex_from_json(init.at("bus"), "initial.bus") : Complex{};

  const bool has_ops = j.contains("ops");
  const bool has_protocol = j.contains("protocol");
  if (has_ops == has_protocol) bad("ops", "exactly one of 'ops' and 'protocol' is required");
  if (has_ops) {
    const json& ops = j.at("ops");
    if (!ops.is_array()) bad("ops", "expected an array");
    std::vector<BusOp> list;
    for (std::size_t i = 0; i < ops.size(); ++i) {
      list.push_back(op_from_json(ops[i], sc.n_qubits, "ops[" + std::to_string(i) + "]"));
    }
    sc.ops = std::move(list);
  } else {
    const json& p = j.at("protocol");
    if (!p.is_object() || !p.contains("name") || !p.at("name").is_string()) bad("protocol.name", "missing");
    sc.protocol = p.at("name").get<std::string>();
    const auto& names = protocol_names();
    if (std::find(names.begin(), names.end(), sc.protocol) == names.end()) {
      bad("protocol.name", "unknown protocol '" + sc.protocol + "'");
    }
    if (p.contains("params")) {
      if (!p.at("params").is_object()) bad("protocol.params", "expected an object");
      sc.params = p.at("params");
    }
  }
  if (j.contains("measure")) sc.measure = measurement_from_json(j.at("measure"), "measure");
  if (j.contains("shots")) {
    if (!j.at("shots").is_number_unsigned()) bad("shots", "expected an integer >= 0");
    sc.shots = j.at("shots").get<std::uint64_t>();
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) bad("seed", "expected a 64-bit unsigned integer");
    sc.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("forced_outcome")) sc.forced = j.at("forced_outcome");
  return sc;
}

RunOutput run_scenario(const Scenario& sc, bool parallel) {
  json record;
  ProtocolResult r = sc.ops ? run_ops(sc, parallel, record) : dispatch(sc, parallel);
  if (!sc.ops && r.outcome) {
    record = record_json(*r.outcome, std::holds_alternative<double>(r.outcome->outcome));
  }

  json report{{"schema", kSchema}, {"rng", rng_info()}, {"scenario", sc.source}};
  report["kind"] = sc.ops ? "ops" : "protocol";
  if (!sc.ops) report["protocol"] = sc.protocol;
  Eigen::MatrixXcd rho;
  if (const auto* st = std::get_if<HybridState>(&r.final)) {
    report["final"] = to_json(*st);
    rho = reduced_qubit_density(*st);
  } else {
    const auto& mix = std::get<MixedOutcome>(r.final);
    report["final"] = to_json(mix);
    rho = mix.density();
  }
  report["reduced_density"] = to_json(rho);
  if (sc.n_qubits == 2 && !r.metrics.contains("concurrence")) r.metrics["concurrence"] = concurrence(rho);
  json metrics = json::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = v;
  report["metrics"] = std::move(metrics);
  report["outcome"] = record;
  report["shots"] = sc.shots;
  report["samples"] = samples_json(r.samples);
  if (!r.ledger.empty()) {
    json rows = json::array();
    for (const auto& row : r.ledger) {
      json jr = json::object();
      for (const auto& [k, v] : row) jr[k] = v;
      rows.push_back(std::move(jr));
    }
    report["ledger"] = std::move(rows);
  }
  json traj{{"schema", kSchema},
            {"n_qubits", sc.n_qubits},
            {"stages", trajectory_to_json(r.trajectory, sc.n_qubits)}};
  return {std::move(report), std::move(traj)};
}

}  // namespace qubus::cli
