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

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "stalambda/linalg.hpp"

namespace stalambda {

class StaProtocol;
class StirapProtocol;
class GaussianPulse;

enum class PulseSource { sta_analytic, gaussian_fit, stirap };

std::string to_string(PulseSource source);

/// Drive schedules (omega1, omega2) in units of 1/time.
struct PulsePair {
  std::function<double(double)> omega1;
  std::function<double(double)> omega2;
  PulseSource source = PulseSource::sta_analytic;
};

PulsePair make_pulses(const StaProtocol& protocol);
PulsePair make_pulses(const GaussianPulse& pulse1, const GaussianPulse& pulse2);
PulsePair make_pulses(const StirapProtocol& protocol);

struct LindbladRates {
  double gamma1 = 0.0;      // |2> -> |1> relaxation
  double gamma2 = 0.0;      // |2> -> |3> relaxation
  double gamma_phi1 = 0.0;  // 2-1 dephasing
  double gamma_phi2 = 0.0;  // 2-3 dephasing
};

/// L1 = sqrt(G1)|1><2|, L2 = sqrt(G2)|3><2|,
/// L3 = sqrt(Gphi1)(|2><2| - |1><1|), L4 = sqrt(Gphi2)(|2><2| - |3><3|).
/// Throws NegativeRate.
std::array<Complex3x3Matrix, 4> lindblad_operators(const LindbladRates& rates);

struct TrajectorySample {
  double t = 0.0;
  std::array<double, 3> populations{};
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  /// Filled when PropagationOptions::record_states is set.
  std::vector<Complex3Vector> states;
  std::vector<Complex3x3Matrix> densities;

  int steps = 0;
  double time_unit = 1.0;

  Complex3Vector final_state = Complex3Vector::Zero();
  Complex3x3Matrix final_density = Complex3x3Matrix::Zero();

  // Largest deviations seen over the whole propagation.
  double max_norm_drift = 0.0;
  double max_trace_drift = 0.0;
  double max_hermiticity_error = 0.0;
  /// Smallest density eigenvalue over the recorded samples (open systems).
  double min_eigenvalue = 0.0;

  const TrajectorySample& final_sample() const { return samples.back(); }
  double final_population(int level) const {
    return samples.back().populations.at(level - 1);
  }
  /// True when min_eigenvalue fell below the -1e-7 positivity floor.
  bool positivity_warning() const { return min_eigenvalue < -1e-7; }
};

struct PropagationOptions {
  int steps = 10000;
  /// Record every `stride`-th step; t = 0 and the final step are always kept.
  int stride = 1;
  bool record_states = false;
  /// Reference duration used for t_over_T in outputs.
  double time_unit = 1.0;
};

/// Piecewise-constant midpoint propagator: each step applies
/// exp(-i H(t_mid) dt) exactly. Throws InvalidState / InvalidSteps.
Trajectory propagate_schrodinger(const PulsePair& pulses,
                                 const Complex3Vector& initial, double horizon,
                                 const PropagationOptions& options = {});

/// Fixed-step RK4 for d(rho)/dt = i[rho, H] + sum_l D[L_l](rho).
/// Throws InvalidDensity / InvalidRates / InvalidSteps.
Trajectory propagate_lindblad(const PulsePair& pulses,
                              const Complex3x3Matrix& initial,
                              const LindbladRates& rates, double horizon,
                              const PropagationOptions& options = {});

Complex3Vector basis_state(int level);
Complex3x3Matrix projector(int level);

}  // namespace stalambda
