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

#include <random>

#include "stalambda/linalg.hpp"
#include "stalambda/pulse_fit.hpp"

namespace stalambda::testing {

// Published two-Gaussian coefficients for the m = 1 protocol, T = 1.
inline GaussianPulse published_pulse1() {
  return GaussianPulse({{-3.194, 0.4396, 0.2476}, {-1.275, 0.2159, 0.1581}});
}

inline GaussianPulse published_pulse2() {
  return GaussianPulse({{3.194, 0.5604, 0.2476}, {1.275, 0.7841, 0.1581}});
}

inline Complex3x3Matrix random_hermitian(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Complex3x3Matrix a;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = Complex(n(rng), n(rng));
  return 0.5 * (a + a.adjoint());
}

inline double max_entry_diff(const Complex3x3Matrix& a, const Complex3x3Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace stalambda::testing
