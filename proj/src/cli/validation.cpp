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
#include <functional>
#include <string>

#include "qubus/cli.hpp"
#include "qubus/dispersive.hpp"
#include "qubus/fock.hpp"
#include "qubus/fock_circuit.hpp"
#include "qubus/parallel.hpp"
#include "qubus/sandwich.hpp"

namespace qubus::cli {

namespace {

using Sink = std::vector<CheckResult>;

void add(Sink& out, const std::string& suite, const std::string& name, double value, double tol,
         std::string detail = {}) {
  out.push_back({suite, name, std::isfinite(value) && value <= tol, value, tol, std::move(detail)});
}

Complex random_complex(Philox& rng, double radius) {
  const double r = radius * std::sqrt(rng.uniform());
  return std::polar(r, 2.0 * kPi * rng.uniform());
}

std::string grid_tag(double alpha, double theta) {
  return "alpha=" + format_double(alpha) + ",theta=" + format_double(theta);
}

// D(b2) D(b1) |alpha> equals exp(i Im(b2 conj b1)) D(b1 + b2) |alpha>.
void composition_suite(Sink& out) {
  Philox rng(2024, 1);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Complex a = random_complex(rng, 3.0), b1 = random_complex(rng, 2.0), b2 = random_complex(rng, 2.0);
    const auto s = HybridState::basis(1, 0, a);
    const auto two = apply_uncond_disp(apply_uncond_disp(s, b1), b2);
    const auto one = apply_uncond_disp(s, b1 + b2);
    const Complex expected = one.branches()[0].coeff * std::exp(kI * std::imag(b2 * std::conj(b1)));
    worst = std::max({worst, std::abs(two.branches()[0].coeff - expected),
                      std::abs(two.branches()[0].bus - one.branches()[0].bus)});
  }
  add(out, "composition", "uncond_disp_pairs", worst, 1e-12, "200 random pairs");

  // Conditional displacements on a superposed qubit compose per label.
  worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const Complex b1 = random_complex(rng, 2.0), b2 = random_complex(rng, 2.0);
    const std::vector<Complex> amps{std::sqrt(0.5), std::sqrt(0.5)};
    const auto s = HybridState::product(1, amps, Complex{});
    const auto two = apply_cond_disp(apply_cond_disp(s, 0, b1), 0, b2);
    for (const auto& br : two.branches()) {
      const double z = br.label == 0 ? 1.0 : -1.0;
      const Complex phase = std::exp(kI * std::imag(z * b2 * std::conj(z * b1)));
      worst = std::max({worst, std::abs(br.coeff - std::sqrt(0.5) * phase), std::abs(br.bus - z * (b1 + b2))});
    }
  }
  add(out, "composition", "cond_disp_pairs", worst, 1e-12, "200 random pairs");

  const auto r = apply_cond_rot(apply_cond_rot(HybridState::basis(1, 1, {1.5, 0.5}), 0, 0.3), 0, -0.3);
  add(out, "composition", "rotation_inverse", std::abs(r.branches()[0].bus - Complex{1.5, 0.5}), 1e-12);
}

double shoelace(const std::vector<Complex>& vertices) {
  double area = 0.0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    const Complex p = vertices[i], q = vertices[(i + 1) % vertices.size()];
    area += p.real() * q.imag() - q.real() * p.imag();
  }
  return 0.5 * area;
}

void area_suite(Sink& out) {
  const std::vector<Complex> square{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  add(out, "area", "unit_square", std::abs(geometric_phase_of_path(square) - 2.0), 1e-10);
  const std::vector<Complex> back{{1.5, 0.5}, {-1.5, -0.5}};
  add(out, "area", "back_and_forth", std::abs(geometric_phase_of_path(back)), 1e-12);
  Philox rng(2024, 2);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int n = 3 + static_cast<int>(rng.uniform() * 6.0);
    std::vector<Complex> v;
    for (int k = 0; k < n; ++k) v.push_back(random_complex(rng, 2.0));
    std::vector<Complex> steps;
    for (int k = 0; k < n; ++k) steps.push_back(v[static_cast<std::size_t>((k + 1) % n)] - v[static_cast<std::size_t>(k)]);
    // The path starts at the origin, so prepend the leg to the first vertex.
    std::vector<Complex> path{v[0]};
    path.insert(path.end(), steps.begin(), steps.end());
    path.push_back(-v[0]);
    const double phase = geometric_phase_of_path(path);
    worst = std::max(worst, std::abs(phase - 2.0 * shoelace(v)));
  }
  add(out, "area", "random_polygons", worst, 1e-10, "50 closed polygons vs 2 x shoelace");
}

void oracle_suite(Sink& out, const ValidationOptions& opt) {
  const double merge = opt.merge_tol.value_or(HybridState::kDefaultMergeTol);
  const auto fid = run_indexed<double>(100, opt.parallel, [&](std::size_t i) {
    Philox rng(2024, 1000 + i);
    return oracle_fidelity(random_oracle_case(rng), merge, false);
  });
  double worst = 0.0;
  for (double f : fid) worst = std::max(worst, 1.0 - f);
  add(out, "oracle", "random_circuits", worst, 1e-8, "100 random circuits, 1 - min fidelity");
}

void appendix2_suite(Sink& out) {
  struct Field {
    const char* name;
    std::function<double(const Appendix2Forms&, const Appendix2Forms&)> diff;
  };
  const std::vector<Field> fields{
      {"phi_gg", [](const auto& a, const auto& b) { return std::abs(a.phi_gg - b.phi_gg); }},
      {"phi_ge", [](const auto& a, const auto& b) { return std::abs(a.phi_ge - b.phi_ge); }},
      {"phi_eg", [](const auto& a, const auto& b) { return std::abs(a.phi_eg - b.phi_eg); }},
      {"phi_ee", [](const auto& a, const auto& b) { return std::abs(a.phi_ee - b.phi_ee); }},
      {"psi_gg", [](const auto& a, const auto& b) { return std::abs(a.psi_gg - b.psi_gg); }},
      {"psi_ee", [](const auto& a, const auto& b) { return std::abs(a.psi_ee - b.psi_ee); }},
      {"gamma_gg", [](const auto& a, const auto& b) { return std::abs(a.gamma_gg - b.gamma_gg); }},
      {"gamma_ee", [](const auto& a, const auto& b) { return std::abs(a.gamma_ee - b.gamma_ee); }},
      {"alpha_plus", [](const auto& a, const auto& b) { return std::abs(a.alpha_plus - b.alpha_plus); }},
      {"alpha_minus", [](const auto& a, const auto& b) { return std::abs(a.alpha_minus - b.alpha_minus); }},
      {"phi_d", [](const auto& a, const auto& b) { return std::abs(a.phi_d - b.phi_d); }},
  };
  for (const char* mode : {"verbatim", "corrected"}) {
    for (const auto& f : fields) {
      double worst = 0.0;
      std::string where;
      for (const auto& g : sequence_grid()) {
        const auto sim = appendix2_from_simulation(g.alpha, g.theta);
        const auto ref = std::string(mode) == "verbatim" ? appendix2_closed_forms(g.alpha, g.theta)
                                                         : appendix2_corrected_forms(g.alpha, g.theta);
        const double d = f.diff(sim, ref);
        if (d > worst) {
          worst = d;
          where = grid_tag(g.alpha, g.theta);
        }
      }
      add(out, "appendix2", std::string(mode) + "." + f.name, worst, 1e-9, where);
    }
  }
  for (double alpha : {0.5, 1.0, 2.0}) {
    const double theta = 1e-3;
    const auto sim = appendix2_from_simulation(alpha, theta);
    const double ratio = std::max(sim.gamma_gg, sim.gamma_ee) / (4.0 * alpha * alpha * std::pow(theta, 4));
    add(out, "appendix2", "gamma_small_theta.alpha=" + format_double(alpha), std::abs(ratio - 1.0), 0.05);
  }
}

void dispersive_suite(Sink& out) {
  auto fit = [](double omega, double delta) {
    JCParams p;
    p.omega0 = 100.0;
    p.omega_c = 100.0 + delta;
    p.delta_d = delta;
    p.Omega = omega;
    const double chi = omega * omega / (4.0 * delta);
    p.t_final = chi == 0.0 ? 10.0 : 1.0 / std::abs(chi);
    return dispersive_jc_validate(p, Complex{1.0, 0.0}, 24);
  };
  add(out, "dispersive", "omega_zero", std::abs(fit(0.0, 50.0).chi_eff), 1e-12);
  const auto f50 = fit(1.0, 50.0);
  add(out, "dispersive", "ratio_50", f50.relative_error, 0.05, "Delta/Omega = 50, |alpha| = 1");
  const auto f100 = fit(1.0, 100.0);
  add(out, "dispersive", "monotone_to_100", f100.relative_error <= f50.relative_error ? 0.0 : 1.0, 0.0,
      "relative error " + format_double(f50.relative_error) + " -> " + format_double(f100.relative_error));
  const double doubling = fit(1.0, 25.0).chi_eff / f50.chi_eff;
  add(out, "dispersive", "halving_delta_doubles_chi", std::abs(doubling / 2.0 - 1.0), 0.10);
}

void sandwich_suite(Sink& out) {
  const Complex alpha{1.0, 0.0};
  const int dim = 64;
  const auto zero = sandwich_displacement(alpha, 0.0, dim);
  add(out, "sandwich", "identity_at_zero", zero.error, 1e-12);
  const double e1 = sandwich_displacement(alpha, 0.1, dim).error;
  const double e2 = sandwich_displacement(alpha, 0.05, dim).error;
  add(out, "sandwich", "cubic_step_ratio", std::abs(e1 / e2 / 8.0 - 1.0), 0.20,
      "error ratio " + format_double(e1 / e2));
  const Complex d1 = induced_displacement(alpha, 0.05, dim);
  const Complex d2 = induced_displacement(2.0 * alpha, 0.05, dim);
  add(out, "sandwich", "linear_in_alpha", std::abs(std::abs(d2) / std::abs(d1) / 2.0 - 1.0), 0.02);
}

void measurement_suite(Sink& out) {
  double worst = 0.0;
  const std::vector<Complex> amps{0.6, Complex{0.0, 0.8}};
  for (double beta : {0.5, 1.0, 3.0}) {
    auto s = apply_cond_disp(HybridState::product(1, amps, Complex{0.5, 0.0}), 0, {beta, 0.2});
    for (double noise : {0.0, 1.0}) {
      const HomodynePdf pdf(s, Homodyne{0.3, noise});
      const auto [lo, hi] = pdf.support();
      worst = std::max(worst, std::abs(pdf.integrate(lo, hi) - 1.0));
    }
  }
  add(out, "measurement", "homodyne_normalization", worst, 1e-8);
  // <x|alpha> against its Hermite-function expansion.
  worst = 0.0;
  const int n_max = 160;
  for (Complex a : {Complex{0.0, 0.0}, Complex{1.0, -0.5}, Complex{-2.5, 3.0}, Complex{0.0, 4.0}}) {
    for (double x = -12.0; x <= 12.0; x += 1.5) {
      // Hermite functions for X = a + a^dagger (vacuum variance 1).
      const double y = x / std::sqrt(2.0);
      double h_prev = std::pow(kPi, -0.25) * std::exp(-y * y / 2.0) * std::pow(2.0, -0.25);
      double h = std::sqrt(2.0) * y * h_prev;
      Complex sum = h_prev * number_amplitude(0, a) + h * number_amplitude(1, a);
      for (int n = 2; n <= n_max; ++n) {
        const double next = std::sqrt(2.0 / n) * y * h - std::sqrt((n - 1.0) / n) * h_prev;
        h_prev = h;
        h = next;
        sum += h * number_amplitude(n, a);
      }
      worst = std::max(worst, std::abs(sum - quadrature_kernel(x, a, 0.0)));
    }
  }
  add(out, "measurement", "kernel_vs_hermite", worst, 1e-8);
}

void sequences_suite(Sink& out) {
  add(out, "sequences", "fig11_frozen", fig11_residual(frozen_fig11()), 1e-9);
  add(out, "sequences", "fig13_frozen_corrected", fig13_residual(frozen_fig13(), Fig13Target::kCorrected), 1e-9);
}

}  // namespace

OracleCase random_oracle_case(Philox& rng, int max_ops) {
  OracleCase c;
  double norm = 0.0;
  for (int i = 0; i < 4; ++i) {
    c.amps.push_back(Complex{rng.normal(), rng.normal()});
    norm += std::norm(c.amps.back());
  }
  for (auto& a : c.amps) a /= std::sqrt(norm);
  c.alpha = random_complex(rng, 1.5);
  const int n_ops = 1 + static_cast<int>(rng.uniform() * max_ops);
  for (int k = 0; k < n_ops; ++k) {
    const int q = rng.uniform() < 0.5 ? 0 : 1;
    const double u = rng.uniform();
    if (u < 0.3) {
      c.ops.push_back(CondDisp{q, random_complex(rng, 1.0)});
    } else if (u < 0.55) {
      c.ops.push_back(CondRot{q, kPi * (2.0 * rng.uniform() - 1.0)});
    } else if (u < 0.8) {
      c.ops.push_back(UncondDisp{random_complex(rng, 1.0)});
    } else {
      const Gate2 choices[] = {gates::hadamard(), gates::pauli_x(), gates::minus_quarter_x()};
      c.ops.push_back(SingleQubit{q, choices[static_cast<int>(rng.uniform() * 3.0) % 3]});
    }
  }
  return c;
}

double oracle_fidelity(const OracleCase& c, double merge_tol, bool parallel) {
  std::vector<Branch> branches;
  for (std::size_t l = 0; l < c.amps.size(); ++l) branches.push_back({static_cast<Label>(l), c.amps[l], c.alpha});
  const HybridState input(2, std::move(branches), merge_tol);
  const auto run = run_circuit(input, c.ops);
  const int dim = oracle_dim_for(HybridState::product(2, c.amps, c.alpha), c.ops);
  const auto fock = run_circuit_fock(2, c.amps, c.alpha, c.ops, dim, parallel);
  return joint_fidelity(embed(run.final, dim), fock);
}

const std::vector<std::string>& validation_suites() {
  static const std::vector<std::string> names{"composition", "area",     "oracle",      "appendix2",
                                              "dispersive",  "sandwich", "measurement", "sequences"};
  return names;
}

std::vector<CheckResult> run_validation(const ValidationOptions& opt) {
  Sink out;
  const auto& suites = validation_suites();
  bool any = false;
  for (const auto& name : suites) {
    if (!opt.filter.empty() && name.find(opt.filter) == std::string::npos) continue;
    any = true;
    if (name == "composition") composition_suite(out);
    if (name == "area") area_suite(out);
    if (name == "oracle") oracle_suite(out, opt);
    if (name == "appendix2") appendix2_suite(out);
    if (name == "dispersive") dispersive_suite(out);
    if (name == "sandwich") sandwich_suite(out);
    if (name == "measurement") measurement_suite(out);
    if (name == "sequences") sequences_suite(out);
  }
  if (!any) throw InvalidArgument("no validation suite matches filter '" + opt.filter + "'");
  return out;
}

json to_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  std::size_t failed = 0;
  for (const auto& c : checks) {
    failed += c.passed ? 0 : 1;
    arr.push_back({{"suite", c.suite},
                   {"name", c.name},
                   {"passed", c.passed},
                   {"value", c.value},
                   {"tolerance", c.tolerance},
                   {"detail", c.detail}});
  }
  return {{"schema", kSchema},
          {"rng", rng_info()},
          {"passed", failed == 0},
          {"total", checks.size()},
          {"failed", failed},
          {"checks", std::move(arr)}};
}

}  // namespace qubus::cli
