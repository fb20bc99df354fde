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
#include <limits>
#include <string>

#include "gauss_legendre.hpp"
#include "qubus/measurement.hpp"

namespace qubus {

namespace {

constexpr double kSupportSigmas = 12.0;

HybridState condition_on_quadrature(const HybridState& s, double x, double angle) {
  std::vector<Branch> out;
  out.reserve(s.size());
  for (const auto& b : s.branches()) {
    out.push_back({b.label, b.coeff * quadrature_kernel(x, b.bus, angle), Complex{}});
  }
  HybridState post(s.n_qubits(), std::move(out), s.merge_tol(), s.branch_cap(), true);
  if (!(post.norm_squared() > 1e-300)) {
    throw SimulationError("homodyne outcome x = " + std::to_string(x) + " has zero probability");
  }
  return post.normalized();
}

}  // namespace

HomodynePdf::HomodynePdf(const HybridState& s, const Homodyne& model) {
  validate(MeasurementModel{model});
  if (s.bus_consumed()) throw SimulationError("homodyne measurement of a consumed bus");
  variance_ = 1.0 + model.excess_noise;
  const double norm = s.norm_squared();
  if (!(norm > 0.0)) throw SimulationError("homodyne measurement of a zero state");
  const auto br = s.branches();
  const Complex rot = std::exp(-kI * model.angle);
  for (std::size_t i = 0; i < br.size(); ++i) {
    const Complex ri = br[i].bus * rot;
    for (std::size_t j = i; j < br.size(); ++j) {
      if (br[j].label != br[i].label) continue;
      const Complex rj = br[j].bus * rot;
      const double ai = ri.real(), bi = ri.imag(), aj = rj.real(), bj = rj.imag();
      const double k = bi - bj;
      const double m = ai + aj;
      const Complex pref = br[i].coeff * std::conj(br[j].coeff) *
                           std::exp(Complex{-(ai - aj) * (ai - aj) / 2.0 - k * k / 2.0,
                                            -(ai * bi - aj * bj) + k * m}) *
                           (i == j ? 1.0 : 2.0) / norm;
      if (std::abs(pref) < 1e-300 && i != j) continue;
      terms_.push_back({br[i].label, pref, m, k});
    }
  }
  for (const auto& t : terms_) {
    auto it = std::find_if(weights_.begin(), weights_.end(),
                           [&](const auto& w) { return w.first == t.label; });
    if (it == weights_.end()) {
      weights_.emplace_back(t.label, 0.0);
      it = weights_.end() - 1;
    }
    it->second += t.prefactor.real();
  }
  std::sort(weights_.begin(), weights_.end());
}

double HomodynePdf::eval(long long label_filter, double x) const {
  const double scale = 1.0 / std::sqrt(2.0 * kPi * variance_);
  double total = 0.0;
  for (const auto& t : terms_) {
    if (label_filter >= 0 && t.label != static_cast<Label>(label_filter)) continue;
    const Complex z{x - t.mean, -t.shift};
    total += std::real(t.prefactor * std::exp(-z * z / (2.0 * variance_)));
  }
  return std::max(0.0, total * scale);
}

double HomodynePdf::operator()(double x) const { return eval(-1, x); }

double HomodynePdf::label_density(Label label, double x) const {
  return eval(static_cast<long long>(label), x);
}

std::pair<double, double> HomodynePdf::support() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& t : terms_) {
    lo = std::min(lo, t.mean);
    hi = std::max(hi, t.mean);
  }
  const double w = kSupportSigmas * std::sqrt(variance_);
  return {lo - w, hi + w};
}

double HomodynePdf::integrate_terms(long long label_filter, double lo, double hi) const {
  const auto [s_lo, s_hi] = support();
  lo = std::max(lo, s_lo);
  hi = std::min(hi, s_hi);
  if (!(hi > lo)) return 0.0;
  double kmax = 0.0;
  for (const auto& t : terms_) {
    if (label_filter >= 0 && t.label != static_cast<Label>(label_filter)) continue;
    if (std::abs(t.prefactor) > 1e-18) kmax = std::max(kmax, std::abs(t.shift));
  }
  const double panel = std::min(0.25 * std::sqrt(variance_), kmax > 0.0 ? 0.5 * variance_ / kmax : 1.0);
  return detail::GaussLegendre::instance().integrate([&](double x) { return eval(label_filter, x); }, lo,
                                                     hi, panel);
}

double HomodynePdf::integrate(double lo, double hi) const { return integrate_terms(-1, lo, hi); }

double HomodynePdf::label_integrate(Label label, double lo, double hi) const {
  return integrate_terms(static_cast<long long>(label), lo, hi);
}

HomodynePdf homodyne_pdf(const HybridState& s, const Homodyne& model) {
  return HomodynePdf(s, model);
}

namespace {

// Inverse-CDF draw of the noiseless outcome restricted to one label.
double sample_label_block(const HybridState& s, const HomodynePdf& pdf, Label label, double weight,
                          double angle, Philox& rng) {
  std::size_t count = 0;
  Complex bus{};
  for (const auto& b : s.branches()) {
    if (b.label == label) {
      ++count;
      bus = b.bus;
    }
  }
  const double u_normal = rng.normal();
  const double u = rng.uniform();
  if (count == 1) return 2.0 * std::real(bus * std::exp(-kI * angle)) + u_normal;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& b : s.branches()) {
    if (b.label != label) continue;
    const double m = 2.0 * std::real(b.bus * std::exp(-kI * angle));
    lo = std::min(lo, m);
    hi = std::max(hi, m);
  }
  lo -= kSupportSigmas;
  hi += kSupportSigmas;
  const double target = u * weight;
  constexpr double kPanel = 0.25;
  double acc = 0.0;
  double a = lo;
  while (a < hi) {
    const double b = std::min(hi, a + kPanel);
    const double mass = pdf.label_integrate(label, a, b);
    if (acc + mass >= target || b >= hi) {
      double left = a, right = b;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (left + right);
        if (acc + pdf.label_integrate(label, a, mid) < target) left = mid;
        else right = mid;
      }
      return 0.5 * (left + right);
    }
    acc += mass;
    a = b;
  }
  return hi;
}

}  // namespace

MeasurementRecord homodyne_measure(const HybridState& s, const Homodyne& model, Philox& rng) {
  const HomodynePdf latent_pdf(s, Homodyne{model.angle, 0.0});
  const auto& weights = latent_pdf.label_weights();
  const double u = rng.uniform();
  double total = 0.0;
  for (const auto& w : weights) total += std::max(0.0, w.second);
  double acc = 0.0;
  Label label = weights.back().first;
  double weight = weights.back().second;
  for (const auto& w : weights) {
    acc += std::max(0.0, w.second);
    if (u * total <= acc) {
      label = w.first;
      weight = w.second;
      break;
    }
  }
  const double x = sample_label_block(s, latent_pdf, label, weight, model.angle, rng);
  const double noise = model.excess_noise > 0.0 ? std::sqrt(model.excess_noise) * rng.normal() : 0.0;
  const double reported = x + noise;
  MeasurementRecord rec{reported, HomodynePdf(s, model)(reported),
                        condition_on_quadrature(s, x, model.angle), x};
  return rec;
}

MeasurementRecord homodyne_measure_at(const HybridState& s, const Homodyne& model, double x) {
  if (!std::isfinite(x)) throw InvalidArgument("forced homodyne outcome must be finite");
  const double density = HomodynePdf(s, model)(x);
  if (!(density >= 1e-300)) {
    throw SimulationError("forced homodyne outcome x = " + std::to_string(x) +
                          " has zero probability density");
  }
  return MeasurementRecord{x, density, condition_on_quadrature(s, x, model.angle), x};
}

double homodyne_window_probability(const HybridState& s, const Homodyne& model, double lo,
                                   double hi) {
  return HomodynePdf(s, model).integrate(lo, hi);
}

}  // namespace qubus
