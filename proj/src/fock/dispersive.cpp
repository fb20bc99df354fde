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

#include "qubus/dispersive.hpp"

#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qubus/fock.hpp"

namespace qubus {

namespace {

// Rotating frame: H' = -delta |1><1| + Omega/2 (a sigma_+ + a^dag sigma_-),
// sigma_+ = |1><0|. Layout psi[q * dim + n].
struct JCModel {
  int dim;
  double delta;
  double omega;
  std::vector<double> sq;  // sqrt(n)

  void derivative(const Eigen::VectorXcd& psi, Eigen::VectorXcd& out) const {
    const Complex mi{0.0, -1.0};
    for (int n = 0; n < dim; ++n) {
      Complex h0{};
      Complex h1 = -delta * psi(dim + n);
      // a sigma_+ : |0,n> -> sqrt(n) |1,n-1>
      if (n + 1 < dim) h1 += 0.5 * omega * sq[n + 1] * psi(n + 1);
      // a^dag sigma_- : |1,n> -> sqrt(n+1) |0,n+1>
      if (n > 0) h0 += 0.5 * omega * sq[n] * psi(dim + n - 1);
      out(n) = mi * h0;
      out(dim + n) = mi * h1;
    }
  }
};

double mean_a_phase(const Eigen::VectorXcd& psi, int dim) {
  Complex m{};
  for (int q = 0; q < 2; ++q)
    for (int n = 1; n < dim; ++n)
      m += std::sqrt(static_cast<double>(n)) * std::conj(psi(q * dim + n - 1)) * psi(q * dim + n);
  return std::arg(m);
}

// Samples arg<a> at samples+1 equally spaced times.
std::vector<double> phase_track(const JCModel& model, const Eigen::VectorXcd& psi0, double t_final,
                                int steps_per_sample, int samples) {
  const double h = t_final / (static_cast<double>(steps_per_sample) * samples);
  Eigen::VectorXcd psi = psi0;
  Eigen::VectorXcd k1(psi.size()), k2(psi.size()), k3(psi.size()), k4(psi.size()), tmp(psi.size());
  std::vector<double> phases;
  phases.reserve(static_cast<std::size_t>(samples) + 1);
  phases.push_back(mean_a_phase(psi, model.dim));
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < steps_per_sample; ++k) {
      model.derivative(psi, k1);
      tmp = psi + 0.5 * h * k1;
      model.derivative(tmp, k2);
      tmp = psi + 0.5 * h * k2;
      model.derivative(tmp, k3);
      tmp = psi + h * k3;
      model.derivative(tmp, k4);
      psi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    phases.push_back(mean_a_phase(psi, model.dim));
  }
  if (!psi.allFinite() || std::abs(psi.squaredNorm() - 1.0) > 1e-6) {
    throw SimulationError("JC integration diverged; reduce dt");
  }
  // unwrap
  for (std::size_t i = 1; i < phases.size(); ++i) {
    double d = phases[i] - phases[i - 1];
    d -= 2.0 * kPi * std::round(d / (2.0 * kPi));
    phases[i] = phases[i - 1] + d;
  }
  return phases;
}

double fit_chi(const JCModel& model, Complex alpha, double t_final, int steps_per_sample,
               int samples) {
  const Eigen::VectorXcd coh = coherent_fock(alpha, model.dim);
  Eigen::VectorXcd g = Eigen::VectorXcd::Zero(2 * model.dim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(2 * model.dim);
  g.head(model.dim) = coh;
  e.tail(model.dim) = coh;
  const auto pg = phase_track(model, g, t_final, steps_per_sample, samples);
  const auto pe = phase_track(model, e, t_final, steps_per_sample, samples);
  // least-squares slope of (phase_e - phase_g) / 2 against t
  double st = 0, sy = 0, stt = 0, sty = 0;
  const double n = static_cast<double>(pg.size());
  for (std::size_t i = 0; i < pg.size(); ++i) {
    const double t = t_final * static_cast<double>(i) / samples;
    const double y = 0.5 * (pe[i] - pg[i]);
    st += t;
    sy += y;
    stt += t * t;
    sty += t * y;
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace

DispersiveFit dispersive_jc_validate(const JCParams& p, Complex alpha, int dim) {
  if (!(p.delta_d != 0.0) || !std::isfinite(p.delta_d)) {
    throw InvalidArgument("delta_d must be finite and nonzero");
  }
  if (!(std::abs(p.Omega / p.delta_d) < 0.2)) {
    throw InvalidArgument("not dispersive: |Omega / delta_d| must be below 0.2");
  }
  if ((p.omega0 != 0.0 || p.omega_c != 0.0) &&
      std::abs(p.omega_c - p.omega0 - p.delta_d) > 1e-9 * std::max(1.0, std::abs(p.delta_d))) {
    throw InvalidArgument("delta_d must equal omega_c - omega0");
  }
  if (!(p.t_final > 0.0) || !(p.dt >= 0.0)) throw InvalidArgument("t_final must be positive and dt non-negative");
  if (dim < truncation_rule(std::abs(alpha)) + 2) throw TruncationError("Fock dimension too small for alpha");

  JCModel model{dim, p.delta_d, p.Omega, {}};
  model.sq.resize(static_cast<std::size_t>(dim) + 1);
  for (int n = 0; n <= dim; ++n) model.sq[static_cast<std::size_t>(n)] = std::sqrt(static_cast<double>(n));

  DispersiveFit fit;
  fit.chi_predicted = p.Omega * p.Omega / (4.0 * p.delta_d);
  constexpr int kSamples = 200;
  const double dt0 = p.dt > 0.0 ? p.dt : 0.01 / std::abs(p.delta_d);
  int steps = std::max(1, static_cast<int>(std::ceil(p.t_final / (dt0 * kSamples))));
  double coarse = fit_chi(model, alpha, p.t_final, steps, kSamples);
  for (int refine = 0; refine < 6; ++refine) {
    const double fine = fit_chi(model, alpha, p.t_final, 2 * steps, kSamples);
    const double scale = std::abs(fine);
    const double change = scale < 1e-12 ? std::abs(fine - coarse) : std::abs(fine - coarse) / scale;
    if (change < 1e-3) {
      fit.chi_eff = fine;
      fit.dt_used = p.t_final / (2.0 * steps * kSamples);
      fit.step_change = change;
      fit.relative_error = fit.chi_predicted == 0.0
                               ? std::abs(fine)
                               : std::abs(fine - fit.chi_predicted) / std::abs(fit.chi_predicted);
      return fit;
    }
    coarse = fine;
    steps *= 2;
  }
  throw SimulationError("JC integration did not converge under step halving");
}

}  // namespace qubus
