// Copyright 2026 The stalambda Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <span>
#include <vector>

namespace stalambda {

class StaProtocol;

struct GaussianComponent {
  double zeta = 0.0;  // signed amplitude
  double tau = 0.0;   // center
  double chi = 1.0;   // width, > 0
};

/// Sum of zeta_i exp(-((t - tau_i) / chi_i)^2).
class GaussianPulse {
 public:
  GaussianPulse() = default;
  explicit GaussianPulse(std::vector<GaussianComponent> components);

  const std::vector<GaussianComponent>& components() const {
    return components_;
  }
  std::size_t size() const { return components_.size(); }

  double operator()(double t) const;

  /// Copy with every amplitude multiplied by `factor`.
  GaussianPulse scaled(double factor) const;

 private:
  std::vector<GaussianComponent> components_;
};

struct Sample {
  double t = 0.0;
  double value = 0.0;
};

struct FitReport {
  double rms_residual = 0.0;
  double max_residual = 0.0;
  double initial_rms_residual = 0.0;
  /// max |fitted(t)| over the sample grid.
  double peak_amplitude = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct FitOptions {
  int max_iterations = 500;
  double relative_tolerance = 1e-10;
};

struct FitResult {
  GaussianPulse pulse;
  FitReport report;
};

/// Damped Gauss-Newton (Levenberg-Marquardt) fit of an n-component
/// Gaussian sum to `samples`, equal weights. On iteration exhaustion the
/// best parameters so far are returned with report.converged == false.
///
/// Throws InvalidParameters for n < 1 or fewer than 30 n samples, and
/// DegenerateSamples when every sample value is zero.
FitResult fit_gaussian_sum(std::span<const Sample> samples, int n_components,
                           std::optional<GaussianPulse> init = std::nullopt,
                           const FitOptions& options = {});

/// Starting point used by fit_gaussian_sum when no init is given.
GaussianPulse initial_guess(std::span<const Sample> samples, int n_components);

/// max over a uniform grid on [0, duration] of max(|p1(t)|, |p2(t)|).
double pulse_amplitude(const GaussianPulse& p1, const GaussianPulse& p2,
                       double duration = 1.0, int grid = 1001);

/// Uniform samples of `f` on [0, duration] with `count` points.
template <typename F>
std::vector<Sample> sample_uniform(F&& f, double duration, int count) {
  std::vector<Sample> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const double t = duration * i / (count - 1);
    out.push_back({t, f(t)});
  }
  return out;
}

/// Both drive schedules of an STA protocol fitted to Gaussian sums.
struct FittedProtocol {
  FitResult pulse1;
  FitResult pulse2;
  double omega_tilde_0 = 0.0;
};

FittedProtocol fit_protocol(const StaProtocol& protocol, int n_components = 2,
                            int sample_count = 1001,
                            const FitOptions& options = {});

}  // namespace stalambda
