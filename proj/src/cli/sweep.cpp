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

#include <sstream>
#include <string>

#include "qubus/cli.hpp"
#include "qubus/parallel.hpp"

namespace qubus::cli {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw InvalidArgument("field '" + field + "': " + what);
}

json::json_pointer locate(const std::string& path, const std::string& field) {
  if (path.empty()) bad(field, "empty path");
  if (path.front() == '/') {
    try {
      return json::json_pointer(path);
    } catch (const json::exception& e) {
      bad(field, e.what());
    }
  }
  std::string pointer;
  std::stringstream in(path);
  std::string part;
  while (std::getline(in, part, '.')) {
    if (part.empty()) bad(field, "empty path segment in '" + path + "'");
    pointer += '/';
    for (char c : part) {
      if (c == '~') {
        pointer += "~0";
      } else if (c == '/') {
        pointer += "~1";
      } else {
        pointer += c;
      }
    }
  }
  return json::json_pointer(pointer);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string cell(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_integer() || v.is_number_unsigned() || v.is_boolean()) return v.dump();
  if (v.is_string()) return csv_field(v.get<std::string>());
  return csv_field(v.dump());
}

}  // namespace

SweepSpec parse_sweep(const json& j) {
  if (!j.is_object()) bad("<root>", "expected an object");
  if (!j.contains("schema") || j.at("schema") != kSchema) bad("schema", std::string("expected \"") + kSchema + "\"");
  SweepSpec spec;
  if (!j.contains("base") || !j.at("base").is_object()) bad("base", "missing or not an object");
  spec.base = j.at("base");
  if (!spec.base.contains("schema")) spec.base["schema"] = kSchema;
  if (!j.contains("axes") || !j.at("axes").is_array() || j.at("axes").empty()) bad("axes", "expected a non-empty array");
  std::size_t points = 1;
  for (std::size_t i = 0; i < j.at("axes").size(); ++i) {
    const json& a = j.at("axes")[i];
    const std::string field = "axes[" + std::to_string(i) + "]";
    if (!a.is_object() || !a.contains("path") || !a.at("path").is_string()) bad(field + ".path", "missing");
    if (!a.contains("values") || !a.at("values").is_array() || a.at("values").empty()) {
      bad(field + ".values", "expected a non-empty array");
    }
    SweepAxis axis{a.at("path").get<std::string>(), {}};
    locate(axis.path, field + ".path");
    for (const auto& v : a.at("values")) axis.values.push_back(v);
    points *= axis.values.size();
    if (points > kMaxSweepPoints) bad("axes", "grid exceeds 10^6 points");
    spec.axes.push_back(std::move(axis));
  }
  if (j.contains("metrics")) {
    if (!j.at("metrics").is_array()) bad("metrics", "expected an array of names");
    for (const auto& m : j.at("metrics")) {
      if (!m.is_string()) bad("metrics", "expected an array of names");
      spec.metrics.push_back(m.get<std::string>());
    }
  }
  return spec;
}

std::string run_sweep(const SweepSpec& spec, bool parallel) {
  std::size_t total = 1;
  for (const auto& a : spec.axes) total *= a.values.size();

  // Build and validate every point before running any of them.
  std::vector<Scenario> scenarios;
  std::vector<std::vector<const json*>> coords;
  scenarios.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    json point = spec.base;
    std::vector<const json*> at(spec.axes.size());
    std::size_t rest = idx;
    for (std::size_t k = spec.axes.size(); k-- > 0;) {
      const auto& axis = spec.axes[k];
      const json& v = axis.values[rest % axis.values.size()];
      rest /= axis.values.size();
      at[k] = &v;
      try {
        point[locate(axis.path, "axes[" + std::to_string(k) + "].path")] = v;
      } catch (const json::exception& e) {
        bad("axes[" + std::to_string(k) + "].path", e.what());
      }
    }
    try {
      scenarios.push_back(parse_scenario(point));
    } catch (const InvalidArgument& e) {
      throw InvalidArgument("sweep point " + std::to_string(idx) + ": " + e.what());
    }
    coords.push_back(std::move(at));
  }

  const auto results = run_indexed<json>(total, parallel, [&](std::size_t i) {
    return run_scenario(scenarios[i], !parallel).report.at("metrics");
  });

  std::vector<std::string> metrics = spec.metrics;
  if (metrics.empty()) {
    for (const auto& [k, v] : results.front().items()) metrics.push_back(k);
  }
  std::string out;
  for (std::size_t k = 0; k < spec.axes.size(); ++k) {
    if (k) out += ',';
    out += csv_field(spec.axes[k].path);
  }
  for (const auto& m : metrics) out += ',' + csv_field(m);
  out += '\n';
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t k = 0; k < spec.axes.size(); ++k) {
      if (k) out += ',';
      out += cell(*coords[i][k]);
    }
    for (const auto& m : metrics) {
      out += ',';
      const auto it = results[i].find(m);
      if (it == results[i].end()) continue;
      out += it->is_null() ? "nan" : format_double(it->get<double>());
    }
    out += '\n';
  }
  return out;
}

}  // namespace qubus::cli
