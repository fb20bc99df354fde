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

#include <charconv>
#include <cmath>
#include <string>

#include "qubus/cli.hpp"
#include "qubus/rng.hpp"

namespace qubus::cli {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InvalidArgument("field '" + field + "': " + what);
}

const json& require(const json& j, const char* key, const std::string& field) {
  if (!j.is_object() || !j.contains(key)) bad(field + "." + key, "missing");
  return j.at(key);
}

double number(const json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  const double x = j.get<double>();
  if (!std::isfinite(x)) bad(field, "must be finite");
  return x;
}

int qubit_index(const json& j, int n_qubits, const std::string& field) {
  if (!j.is_number_integer()) bad(field, "expected an integer qubit index");
  const int q = j.get<int>();
  if (q < 0 || q >= n_qubits) bad(field, "qubit index out of range");
  return q;
}

Gate2 named_gate(const std::string& name, const std::string& field) {
  if (name == "H") return gates::hadamard();
  if (name == "X") return gates::pauli_x();
  if (name == "Z") return gates::pauli_z();
  if (name == "minus_quarter_z") return gates::minus_quarter_z();
  if (name == "minus_quarter_x") return gates::minus_quarter_x();
  bad(field, "unknown gate '" + name + "'");
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string bits(Label label, int n_qubits) {
  std::string s(static_cast<std::size_t>(n_qubits), '0');
  for (int q = 0; q < n_qubits; ++q) {
    if (bit_of(label, q, n_qubits)) s[static_cast<std::size_t>(q)] = '1';
  }
  return s;
}

json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

Complex complex_from_json(const json& j, const std::string& field) {
  if (j.is_number()) return {number(j, field), 0.0};
  if (j.is_object() && j.contains("re") && j.contains("im") && j.size() == 2) {
    return {number(j.at("re"), field + ".re"), number(j.at("im"), field + ".im")};
  }
  bad(field, "expected a number or {\"re\",\"im\"}");
}

json to_json(const HybridState& s) {
  json branches = json::array();
  for (const auto& b : s.branches()) {
    branches.push_back({{"label", b.label},
                        {"bits", bits(b.label, s.n_qubits())},
                        {"coeff", to_json(b.coeff)},
                        {"bus", to_json(b.bus)}});
  }
  return {{"type", "pure"},
          {"n_qubits", s.n_qubits()},
          {"bus_consumed", s.bus_consumed()},
          {"branches", std::move(branches)}};
}

json to_json(const MixedOutcome& m) {
  json comps = json::array();
  for (const auto& [w, st] : m.components) comps.push_back({{"weight", w}, {"state", to_json(st)}});
  return {{"type", "mixture"}, {"components", std::move(comps)}};
}

json to_json(const Eigen::MatrixXcd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const Outcome& o) {
  return std::visit([](const auto& v) { return json(v); }, o);
}

json to_json(const BusOp& op) {
  if (const auto* d = std::get_if<CondDisp>(&op)) {
    return {{"type", "cond_disp"}, {"qubit", d->qubit}, {"beta", to_json(d->beta)}};
  }
  if (const auto* r = std::get_if<CondRot>(&op)) {
    return {{"type", "cond_rot"}, {"qubit", r->qubit}, {"theta", r->theta}};
  }
  if (const auto* d = std::get_if<UncondDisp>(&op)) {
    return {{"type", "disp"}, {"beta", to_json(d->beta)}};
  }
  const auto& g = std::get<SingleQubit>(op);
  json u = json::array();
  for (const auto& row : g.u) u.push_back({to_json(row[0]), to_json(row[1])});
  return {{"type", "gate"}, {"qubit", g.qubit}, {"u", std::move(u)}};
}

json trajectory_to_json(const std::vector<TrajectoryStage>& stages, int n_qubits) {
  json out = json::array();
  for (const auto& st : stages) {
    json buses = json::object();
    for (const auto& [label, list] : st.buses) {
      json arr = json::array();
      for (const auto& b : list) arr.push_back(to_json(b));
      buses[bits(label, n_qubits)] = std::move(arr);
    }
    out.push_back({{"op", st.op}, {"buses", std::move(buses)}});
  }
  return out;
}

json rng_info() { return {{"name", Philox::kName}, {"version", Philox::kVersion}}; }

BusOp op_from_json(const json& j, int n_qubits, const std::string& field) {
  if (!j.is_object()) bad(field, "expected an object");
  const json& type = require(j, "type", field);
  if (!type.is_string()) bad(field + ".type", "expected a string");
  const auto t = type.get<std::string>();
  BusOp op;
  if (t == "cond_disp") {
    op = CondDisp{qubit_index(require(j, "qubit", field), n_qubits, field + ".qubit"),
                  complex_from_json(require(j, "beta", field), field + ".beta")};
  } else if (t == "cond_rot") {
    op = CondRot{qubit_index(require(j, "qubit", field), n_qubits, field + ".qubit"),
                 number(require(j, "theta", field), field + ".theta")};
  } else if (t == "disp") {
    op = UncondDisp{complex_from_json(require(j, "beta", field), field + ".beta")};
  } else if (t == "gate") {
    SingleQubit g;
    g.qubit = qubit_index(require(j, "qubit", field), n_qubits, field + ".qubit");
    if (j.contains("name")) {
      if (!j.at("name").is_string()) bad(field + ".name", "expected a string");
      g.u = named_gate(j.at("name").get<std::string>(), field + ".name");
    } else {
      const json& u = require(j, "u", field);
      if (!u.is_array() || u.size() != 2) bad(field + ".u", "expected a 2x2 array");
      for (std::size_t r = 0; r < 2; ++r) {
        if (!u[r].is_array() || u[r].size() != 2) bad(field + ".u", "expected a 2x2 array");
        for (std::size_t c = 0; c < 2; ++c) {
          g.u[r][c] = complex_from_json(u[r][c], field + ".u[" + std::to_string(r) + "][" +
                                                     std::to_string(c) + "]");
        }
      }
      if (!gates::is_unitary(g.u, 1e-10)) bad(field + ".u", "not unitary");
    }
    op = g;
  } else {
    bad(field + ".type", "unknown op type '" + t + "'");
  }
  try {
    validate(op, n_qubits);
  } catch (const InvalidArgument& e) {
    bad(field, e.what());
  }
  return op;
}

std::optional<MeasurementModel> measurement_from_json(const json& j, const std::string& field) {
  if (j.is_string() && j.get<std::string>() == "none") return std::nullopt;
  if (!j.is_object()) bad(field, "expected \"none\" or an object");
  const json& type = require(j, "type", field);
  if (!type.is_string()) bad(field + ".type", "expected a string");
  const auto t = type.get<std::string>();
  MeasurementModel m;
  if (t == "homodyne") {
    Homodyne h;
    if (j.contains("angle")) h.angle = number(j.at("angle"), field + ".angle");
    if (j.contains("excess_noise")) h.excess_noise = number(j.at("excess_noise"), field + ".excess_noise");
    m = h;
  } else if (t == "photon_number") {
    m = PhotonNumber{};
  } else if (t == "bucket") {
    Bucket b;
    if (j.contains("worst_case")) {
      if (!j.at("worst_case").is_boolean()) bad(field + ".worst_case", "expected a boolean");
      b.worst_case = j.at("worst_case").get<bool>();
    }
    m = b;
  } else {
    bad(field + ".type", "unknown measurement '" + t + "'");
  }
  try {
    validate(m);
  } catch (const InvalidArgument& e) {
    bad(field, e.what());
  }
  return m;
}

}  // namespace qubus::cli
