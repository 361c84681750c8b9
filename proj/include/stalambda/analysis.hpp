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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "stalambda/dynamics.hpp"
#include "stalambda/pulse_fit.hpp"

namespace stalambda {

enum class SweepQuantity {
  timing_error,
  amp1_error,
  amp2_error,
  stirap_amplitude,
  relaxation_pair,
  dephasing_pair,
};

std::string to_string(SweepQuantity q);
/// Throws ConfigError for unknown tags.
SweepQuantity parse_sweep_quantity(const std::string& tag);

struct SweepSpec {
  SweepQuantity quantity = SweepQuantity::timing_error;
  double min = -0.1;
  double max = 0.1;
  int points = 21;

  /// Throws InvalidParameters unless points >= 2 and min < max.
  void validate() const;
  /// Uniform grid including both end points.
  std::vector<double> grid() const;
};

struct SweepPoint {
  double x = 0.0;
  double y = 0.0;
};

struct AnalysisOptions {
  int steps = 10000;  // per run, independent of horizon
  int jobs = 1;
  double duration = 1.0;
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn);

/// max over a 1001-point grid on [0, duration] of max(|omega1|, |omega2|).
double peak_amplitude(const PulsePair& pulses, double duration = 1.0);

/// In-repo Gaussian fit of the m-winding STA schedules, wrapped as pulses.
/// `components` is the per-pulse component count.
PulsePair sta_fit_pulses(int m, int components, double duration = 1.0);

/// P3 at T' = T (1 + delta) with the nominal schedules; 0 when T' = 0.
double timing_error_point(const PulsePair& pulses, double delta,
                          const AnalysisOptions& options = {});
/// Sweep delta over [-range, range]. range must not exceed 0.2.
std::vector<SweepPoint> timing_error_sweep(const PulsePair& pulses,
                                           double range, int points,
                                           const AnalysisOptions& options = {});

/// P3(T) with pulse `which` (1 or 2) scaled by (1 + delta).
double amplitude_error_point(const PulsePair& pulses, int which, double delta,
                             const AnalysisOptions& options = {});
std::vector<SweepPoint> amplitude_error_sweep(
    const PulsePair& pulses, int which, double range, int points,
    const AnalysisOptions& options = {});

/// (omega0, 1 - P3(T)) for each STIRAP amplitude.
std::vector<SweepPoint> stirap_infidelity_curve(
    double t0, double tc, double duration, std::span<const double> amplitudes,
    const AnalysisOptions& options = {});

enum class DecoherenceMode { relaxation, dephasing };

std::string to_string(DecoherenceMode mode);

/// P3(T) over a grid of (rate1 / omega_tilde_0, rate2 / omega_tilde_0).
struct DecoherenceMap {
  DecoherenceMode mode = DecoherenceMode::relaxation;
  double omega_tilde_0 = 0.0;
  std::vector<double> ratios;
  /// Row-major: value(i, j) has rate1 = ratios[i], rate2 = ratios[j].
  std::vector<double> p3;
  double max_trace_drift = 0.0;
  double max_hermiticity_error = 0.0;

  double value(std::size_t i, std::size_t j) const {
    return p3[i * ratios.size() + j];
  }
  double min() const;
};

/// The rate scale omega_tilde_0 is taken from peak_amplitude(pulses).
/// Requires max_ratio <= 0.05 and grid >= 2.
DecoherenceMap decoherence_map(const PulsePair& pulses, DecoherenceMode mode,
                               double max_ratio, int grid,
                               const AnalysisOptions& options = {});

struct TableRow {
  int m = 1;
  double omega_tilde_0 = 0.0;
  double p2_max = 0.0;
  /// 1 - P3(T) with the fitted pulses.
  double infidelity = 0.0;
  int components = 0;
  bool fit_converged = false;
  /// Set when the fit did not converge or infidelity exceeds 1e-3.
  bool flagged = false;
};

/// Rows m = 1..max_m. Each pulse is fitted with fit_budget * m components,
/// so the default budget of 2 reproduces the two-Gaussian m = 1 fit.
std::vector<TableRow> table_one(int max_m, int fit_budget = 2,
                                const AnalysisOptions& options = {});

/// Final P3 for STIRAP (t0 = 0.15 T, tc = 0.2 T) with both dephasing rates
/// set to ratio * omega0.
double stirap_dephasing_check(double omega0 = 45.0, double ratio = 0.01,
                              const AnalysisOptions& options = {});

}  // namespace stalambda
