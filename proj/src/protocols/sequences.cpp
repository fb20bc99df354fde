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

#include "qubus/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <regex>

#include "qubus/circuit.hpp"
#include "qubus/protocols.hpp"

namespace qubus {

namespace {

const std::vector<SymOp>& alphabet() {
  static const std::vector<SymOp> ops = [] {
    std::vector<SymOp> v;
    for (int q = 0; q < 2; ++q)
      for (int s : {1, -1}) v.push_back({SymOp::Kind::kRot, q, s, 0});
    for (int q = 0; q < 2; ++q)
      for (int d = 0; d < 2; ++d)
        for (int s : {1, -1}) v.push_back({SymOp::Kind::kCondDisp, q, s, d});
    for (int d = 0; d < 2; ++d)
      for (int s : {1, -1}) v.push_back({SymOp::Kind::kDisp, 0, s, d});
    return v;
  }();
  return ops;
}

// Per-label bus and unwrapped coefficient phase, without branch bookkeeping.
struct Track {
  Complex bus;
  double phase = 0.0;
};

void advance(Track& t, const SymOp& op, Label label, double theta, double beta) {
  const double sigma = op.kind == SymOp::Kind::kDisp ? 1.0 : sigma_z_sign(label, op.qubit, 2);
  if (op.kind == SymOp::Kind::kRot) {
    t.bus *= std::exp(kI * (sigma * op.sign * theta));
    return;
  }
  const Complex delta = sigma * op.sign * (op.dir ? kI : Complex{1.0}) * beta;
  t.phase += std::imag(delta * std::conj(t.bus));
  t.bus += delta;
}

std::array<Track, 4> track(const std::vector<SymOp>& seq, Complex start, double theta, double beta) {
  std::array<Track, 4> out;
  for (Label l = 0; l < 4; ++l) {
    out[l] = {start, 0.0};
    for (const auto& op : seq) advance(out[l], op, l, theta, beta);
  }
  return out;
}

double fig13_beta(double alpha, double theta) { return 0.5 * alpha * std::sin(2.0 * theta); }

Complex fig13_even_target(double alpha, double theta, Fig13Target target) {
  return target == Fig13Target::kNominal ? alpha * (1.0 - std::cos(2.0 * theta))
                                         : alpha * std::cos(2.0 * theta);
}

Complex fig11_start(double alpha) { return alpha * std::exp(kI * (kPi / 4.0)); }

double fig13_deviation(const std::array<Track, 4>& t, double alpha, double theta, Fig13Target target) {
  const Complex even = fig13_even_target(alpha, theta, target);
  return std::max({std::abs(t[0].bus - even), std::abs(t[3].bus - even),
                   std::abs(t[1].bus - alpha), std::abs(t[2].bus - alpha)});
}

double fig11_deviation(const std::array<Track, 4>& t, double alpha, double theta) {
  const auto forms = appendix2_closed_forms(alpha, theta);
  const Complex a0 = fig11_start(alpha);
  return std::max({std::abs(t[0].bus - forms.alpha_plus), std::abs(t[3].bus - forms.alpha_minus),
                   std::abs(t[1].bus - a0), std::abs(t[2].bus - a0),
                   std::abs(wrap_phase(t[1].phase - forms.phi_ge)),
                   std::abs(wrap_phase(t[2].phase - forms.phi_eg))});
}

// Enumerates sequences in (length, lexicographic) order.
template <class Allowed, class Match>
SearchOutcome enumerate(const std::string& name, int max_len, Allowed&& allowed, Match&& match) {
  SearchOutcome out;
  out.result.target = name;
  const auto& abc = alphabet();
  std::vector<SymOp> seq;
  std::size_t shortest = 0;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      ++out.result.examined;
      if (match(seq)) {
        ++out.result.total_matches;
        if (shortest == 0) shortest = seq.size();
        if (seq.size() == shortest) out.result.matches.push_back(seq);
      }
      return;
    }
    for (const auto& op : abc) {
      if (!allowed(seq, op)) continue;
      seq.push_back(op);
      rec(remaining - 1);
      seq.pop_back();
    }
  };
  for (int len = 1; len <= max_len; ++len) rec(len);
  if (!out.result.matches.empty()) {
    out.found = true;
    out.result.sequence = out.result.matches.front();
    out.result.multiplicity = out.result.matches.size();
  }
  return out;
}

}  // namespace

int alphabet_index(const SymOp& op) {
  const auto& abc = alphabet();
  const auto it = std::find(abc.begin(), abc.end(), op);
  if (it == abc.end()) throw InvalidArgument("operation outside the search alphabet");
  return static_cast<int>(it - abc.begin());
}

std::string to_string(const SymOp& op) {
  const std::string sign = op.sign > 0 ? "+" : "-";
  switch (op.kind) {
    case SymOp::Kind::kRot:
      return "R" + std::to_string(op.qubit) + "(" + sign + "theta)";
    case SymOp::Kind::kCondDisp:
      return "C" + std::to_string(op.qubit) + "(" + sign + (op.dir ? "i*" : "") + "beta)";
    case SymOp::Kind::kDisp:
      return "D(" + sign + (op.dir ? "i*" : "") + "beta)";
  }
  return {};
}

SymOp parse_sym_op(const std::string& text) {
  static const std::regex rot(R"(R([01])\(([+-])theta\))");
  static const std::regex cond(R"(C([01])\(([+-])(i\*)?beta\))");
  static const std::regex disp(R"(D\(([+-])(i\*)?beta\))");
  std::smatch m;
  if (std::regex_match(text, m, rot)) {
    return {SymOp::Kind::kRot, m[1].str()[0] - '0', m[2].str() == "+" ? 1 : -1, 0};
  }
  if (std::regex_match(text, m, cond)) {
    return {SymOp::Kind::kCondDisp, m[1].str()[0] - '0', m[2].str() == "+" ? 1 : -1,
            m[3].matched ? 1 : 0};
  }
  if (std::regex_match(text, m, disp)) {
    return {SymOp::Kind::kDisp, 0, m[1].str() == "+" ? 1 : -1, m[2].matched ? 1 : 0};
  }
  throw InvalidArgument("cannot parse sequence element '" + text + "'");
}

BusOp instantiate(const SymOp& op, double theta, double beta) {
  const Complex b = static_cast<double>(op.sign) * (op.dir ? kI : Complex{1.0}) * beta;
  switch (op.kind) {
    case SymOp::Kind::kRot:
      return CondRot{op.qubit, op.sign * theta};
    case SymOp::Kind::kCondDisp:
      return CondDisp{op.qubit, b};
    case SymOp::Kind::kDisp:
      return UncondDisp{b};
  }
  throw InvalidArgument("unknown sequence element");
}

std::vector<BusOp> instantiate(const std::vector<SymOp>& seq, double theta, double beta) {
  std::vector<BusOp> out;
  out.reserve(seq.size());
  for (const auto& op : seq) out.push_back(instantiate(op, theta, beta));
  return out;
}

const std::vector<SequenceGridPoint>& sequence_grid() {
  static const std::vector<SequenceGridPoint> grid = [] {
    std::vector<SequenceGridPoint> g;
    for (double a : {0.5, 1.0, 2.0})
      for (double t : {0.01, 0.05, 0.1}) g.push_back({a, t});
    return g;
  }();
  return grid;
}

double fig13_residual(const std::vector<SymOp>& seq, Fig13Target target) {
  double worst = 0.0;
  for (const auto& [alpha, theta] : sequence_grid()) {
    const auto ops = instantiate(seq, theta, fig13_beta(alpha, theta));
    const Complex even = fig13_even_target(alpha, theta, target);
    for (Label l = 0; l < 4; ++l) {
      const auto fin = run_circuit(HybridState::basis(2, l, Complex{alpha, 0.0}), ops).final;
      const Complex want = (l == 0 || l == 3) ? even : Complex{alpha, 0.0};
      for (const auto& b : fin.branches()) worst = std::max(worst, std::abs(b.bus - want));
    }
  }
  return worst;
}

double fig11_residual(const std::vector<SymOp>& seq) {
  double worst = 0.0;
  for (const auto& [alpha, theta] : sequence_grid()) {
    const auto ops = instantiate(seq, theta, std::sqrt(2.0) * alpha);
    const auto forms = appendix2_closed_forms(alpha, theta);
    const Complex a0 = fig11_start(alpha);
    const Complex want_bus[4] = {forms.alpha_plus, a0, a0, forms.alpha_minus};
    for (Label l = 0; l < 4; ++l) {
      const auto fin = run_circuit(HybridState::basis(2, l, a0), ops).final;
      for (const auto& b : fin.branches()) {
        worst = std::max(worst, std::abs(b.bus - want_bus[l]));
        if (l == 1 || l == 2) worst = std::max(worst, std::abs(wrap_phase(std::arg(b.coeff) - forms.phi_ge)));
      }
    }
  }
  return worst;
}

SearchOutcome search_fig13(Fig13Target target, double tol) {
  const auto allowed = [](const std::vector<SymOp>&, const SymOp& op) {
    return op.kind != SymOp::Kind::kDisp;
  };
  const auto match = [&](const std::vector<SymOp>& seq) {
    for (const auto& [alpha, theta] : sequence_grid()) {
      const auto t = track(seq, Complex{alpha, 0.0}, theta, fig13_beta(alpha, theta));
      if (!(fig13_deviation(t, alpha, theta, target) < tol)) return false;
    }
    return true;
  };
  SearchOutcome out = enumerate(target == Fig13Target::kNominal ? "fig13" : "fig13-corrected", 5,
                                allowed, match);
  if (out.found) out.result.residual = fig13_residual(out.result.sequence, target);
  return out;
}

SearchOutcome search_fig11(double tol) {
  const auto allowed = [](const std::vector<SymOp>& seq, const SymOp& op) {
    if (op.kind == SymOp::Kind::kCondDisp) return false;
    return seq.empty() || (seq.back().kind == SymOp::Kind::kRot) != (op.kind == SymOp::Kind::kRot);
  };
  const auto match = [&](const std::vector<SymOp>& seq) {
    for (const auto& [alpha, theta] : sequence_grid()) {
      const auto t = track(seq, fig11_start(alpha), theta, std::sqrt(2.0) * alpha);
      if (!(fig11_deviation(t, alpha, theta) < tol)) return false;
    }
    return true;
  };
  SearchOutcome out = enumerate("fig11", 9, allowed, match);
  if (out.found) out.result.residual = fig11_residual(out.result.sequence);
  return out;
}

const std::vector<SymOp>& frozen_fig11() {
  static const std::vector<SymOp> seq = [] {
    std::vector<SymOp> v;
    for (const char* s : {"R0(+theta)", "D(-beta)", "R1(+theta)", "D(-i*beta)", "R0(+theta)",
                          "D(+beta)", "R1(+theta)", "D(+i*beta)"})
      v.push_back(parse_sym_op(s));
    return v;
  }();
  return seq;
}

const std::vector<SymOp>& frozen_fig13() {
  static const std::vector<SymOp> seq = [] {
    std::vector<SymOp> v;
    for (const char* s : {"R0(+theta)", "R1(+theta)", "C0(-i*beta)", "C1(-i*beta)"})
      v.push_back(parse_sym_op(s));
    return v;
  }();
  return seq;
}

}  // namespace qubus
