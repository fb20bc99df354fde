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
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <omp.h>

#include <CLI11.hpp>

#include "qubus/cli.hpp"

namespace fs = std::filesystem;
using qubus::cli::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qubus::InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw qubus::InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw qubus::InvalidArgument("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw qubus::Error("write to '" + path.string() + "' failed");
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw qubus::InvalidArgument("cannot create '" + dir + "': " + ec.message());
}

std::string brief(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

int cmd_run(const std::string& file, const std::string& out_dir) {
  const auto sc = qubus::cli::parse_scenario(read_json(file));
  auto res = qubus::cli::run_scenario(sc);
  if (out_dir.empty()) {
    res.report["trajectory"] = res.trajectory.at("stages");
    std::cout << res.report.dump(2) << '\n';
    return qubus::cli::kOk;
  }
  ensure_dir(out_dir);
  write_file(fs::path(out_dir) / "report.json", res.report.dump(2) + "\n");
  write_file(fs::path(out_dir) / "trajectory.json", res.trajectory.dump(2) + "\n");
  return qubus::cli::kOk;
}

int cmd_sweep(const std::string& file, int jobs, const std::string& out_dir) {
  if (jobs < 0) throw qubus::InvalidArgument("--jobs must be >= 0");
  if (jobs > 0) omp_set_num_threads(jobs);
  const auto spec = qubus::cli::parse_sweep(read_json(file));
  const std::string csv = qubus::cli::run_sweep(spec, jobs != 1);
  if (out_dir.empty()) {
    std::cout << csv;
  } else {
    ensure_dir(out_dir);
    write_file(fs::path(out_dir) / "sweep.csv", csv);
  }
  return qubus::cli::kOk;
}

int cmd_validate(const std::string& filter, bool as_json, double merge_tol) {
  qubus::cli::ValidationOptions opt;
  opt.filter = filter;
  if (merge_tol >= 0.0) opt.merge_tol = merge_tol;
  const auto checks = qubus::cli::run_validation(opt);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.passed;
  if (as_json) {
    std::cout << qubus::cli::to_json(checks).dump(2) << '\n';
  } else {
    for (const auto& c : checks) {
      std::cout << (c.passed ? "PASS  " : "FAIL  ") << pad(c.suite + "." + c.name, 44) << " "
                << pad(brief(c.value), 14) << " tol " << brief(c.tolerance);
      if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
      std::cout << '\n';
    }
    std::size_t failed = 0;
    for (const auto& c : checks) failed += c.passed ? 0 : 1;
    std::cout << checks.size() - failed << "/" << checks.size() << " checks passed\n";
  }
  return ok ? qubus::cli::kOk : qubus::cli::kFailed;
}

int cmd_search(const std::string& which, const std::string& target, const std::string& out_dir) {
  qubus::SearchOutcome found;
  if (which == "fig11") {
    if (!target.empty()) throw qubus::InvalidArgument("--target applies to fig13 only");
    found = qubus::search_fig11();
  } else {
    const auto t = target == "corrected" ? qubus::Fig13Target::kCorrected : qubus::Fig13Target::kNominal;
    found = qubus::search_fig13(t);
  }
  const std::string text = qubus::cli::to_json(found.result, found.found).dump(2) + "\n";
  if (out_dir.empty()) {
    std::cout << text;
  } else {
    ensure_dir(out_dir);
    write_file(fs::path(out_dir) / (which + ".json"), text);
  }
  if (!found.found) std::cerr << "qubus: no sequence matches target '" << found.result.target << "'\n";
  return found.found ? qubus::cli::kOk : qubus::cli::kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qubus: qubit-bus hybrid simulator"};
  app.require_subcommand(1);

  std::string file, out_dir, filter, which, target;
  int jobs = 0;
  bool as_json = false;
  double merge_tol = -1.0;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("file", file, "Scenario JSON")->required();
  run->add_option("--out", out_dir, "Write report.json and trajectory.json here");

  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and emit CSV");
  sweep->add_option("file", file, "Sweep JSON")->required();
  sweep->add_option("--jobs", jobs, "Worker threads (0: OpenMP default)");
  sweep->add_option("--out", out_dir, "Write sweep.csv here");

  auto* validate = app.add_subcommand("validate", "Run the built-in invariant suites");
  validate->add_option("--filter", filter, "Run only suites whose name contains this");
  validate->add_flag("--json", as_json, "Print a JSON summary");
  validate->add_option("--merge-tol", merge_tol)->group("");

  auto* search = app.add_subcommand("search-sequence", "Search the gate-sequence space for a target");
  search->add_option("figure", which, "fig11 or fig13")->required()->check(CLI::IsMember({"fig11", "fig13"}));
  search->add_option("--target", target, "fig13 target form")->check(CLI::IsMember({"nominal", "corrected"}));
  search->add_option("--out", out_dir, "Write <target>.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return qubus::cli::kInputError;
  }

  try {
    if (*run) return cmd_run(file, out_dir);
    if (*sweep) return cmd_sweep(file, jobs, out_dir);
    if (*validate) return cmd_validate(filter, as_json, merge_tol);
    return cmd_search(which, target, out_dir);
  } catch (const qubus::InvalidArgument& e) {
    std::cerr << "qubus: input error: " << e.what() << '\n';
    return qubus::cli::kInputError;
  } catch (const json::exception& e) {
    std::cerr << "qubus: input error: " << e.what() << '\n';
    return qubus::cli::kInputError;
  } catch (const std::exception& e) {
    std::cerr << "qubus: runtime error: " << e.what() << '\n';
    return qubus::cli::kRuntimeError;
  }
}
