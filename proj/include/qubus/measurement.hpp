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

#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qubus/hybrid_state.hpp"
#include "qubus/rng.hpp"

namespace qubus {

struct Homodyne {
  double angle = 0.0;
  double excess_noise = 0.0;
};
struct PhotonNumber {};
struct Bucket {
  /// Replace the click posterior by the equal mixture of the even-n and
  /// odd-n conditional states (A = 1/2).
  bool worst_case = false;
};

using MeasurementModel = std::variant<Homodyne, PhotonNumber, Bucket>;

void validate(const MeasurementModel& m);

using Outcome = std::variant<double, std::int64_t, bool>;

struct MeasurementRecord {
  Outcome outcome;
  /// Density (homodyne) or mass (number, bucket) of the reported outcome.
  double probability = 0.0;
  HybridState posterior;
  /// Homodyne only: the value the posterior was conditioned on.
  double latent = 0.0;
};

struct MixedOutcome {
  std::vector<std::pair<double, HybridState>> components;

  Eigen::MatrixXcd density() const;
  /// Weights non-negative and summing to 1 within tol.
  void check(double tol = 1e-10) const;
};

struct BucketRecord {
  bool click = false;
  double probability = 0.0;
  MixedOutcome posterior;
  /// Weight of the even-n part in the click posterior (A); 1 on no-click.
  double even_weight = 1.0;
};

// Homodyne

/// <x|alpha> for the quadrature X(angle) = a^dagger e^{i angle} + a e^{-i angle}.
Complex quadrature_kernel(double x, Complex alpha, double angle = 0.0);

/// Outcome density of X(angle) smeared by Gaussian readout noise of variance
/// excess_noise. Closed form per branch pair.
class HomodynePdf {
 public:
  HomodynePdf(const HybridState& s, const Homodyne& model);

  double operator()(double x) const;
  /// Density restricted to one label (not normalized).
  double label_density(Label label, double x) const;
  /// Label weights sum_{i,j in label} c_i conj(c_j) <bus_j|bus_i>.
  const std::vector<std::pair<Label, double>>& label_weights() const { return weights_; }
  /// Range holding all but a negligible part of the mass.
  std::pair<double, double> support() const;
  double integrate(double lo, double hi) const;
  double label_integrate(Label label, double lo, double hi) const;

 private:
  struct Term {
    Label label;
    Complex prefactor;
    double mean;
    double shift;  // imaginary centre offset k
  };
  // label_filter < 0 selects all labels
  double eval(long long label_filter, double x) const;
  double integrate_terms(long long label_filter, double lo, double hi) const;

  double variance_;
  std::vector<Term> terms_;
  std::vector<std::pair<Label, double>> weights_;
};

HomodynePdf homodyne_pdf(const HybridState& s, const Homodyne& model);

MeasurementRecord homodyne_measure(const HybridState& s, const Homodyne& model, Philox& rng);
MeasurementRecord homodyne_measure_at(const HybridState& s, const Homodyne& model, double x);

/// P(lo < x < hi) including the readout noise.
double homodyne_window_probability(const HybridState& s, const Homodyne& model, double lo,
                                   double hi);

/// Half-separation d in X units, variance v: (1/2) erfc(d / sqrt(2 v)).
double discrimination_error(double half_separation, double variance);
/// (1/2) erfc(|beta| / sqrt(2 (1 + excess_noise))).
double qnd_error_nominal(double beta, double excess_noise = 0.0);

// Photon counting

std::vector<double> photon_number_pmf(const HybridState& s, int n_max);
double photon_number_probability(const HybridState& s, std::int64_t n);
MeasurementRecord photon_number_measure(const HybridState& s, Philox& rng);
MeasurementRecord photon_number_measure_at(const HybridState& s, std::int64_t n);

BucketRecord bucket_measure(const HybridState& s, const Bucket& model, Philox& rng);
BucketRecord bucket_measure_at(const HybridState& s, const Bucket& model, bool click);
double bucket_click_probability(const HybridState& s);

/// Eigen-ensemble of a qubit density matrix, all buses consumed.
MixedOutcome ensemble_from_density(const Eigen::MatrixXcd& rho, int n_qubits,
                                   double drop_tol = 1e-14);

}  // namespace qubus
