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

#include "stalambda/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "stalambda/error.hpp"
#include "stalambda/protocol.hpp"
#include "stalambda/pulse_fit.hpp"

namespace stalambda {

std::string to_string(PulseSource source) {
  switch (source) {
    case PulseSource::sta_analytic:
      return "sta-analytic";
    case PulseSource::gaussian_fit:
      return "gaussian-fit";
    case PulseSource::stirap:
      return "stirap";
  }
  return "unknown";
}

PulsePair make_pulses(const StaProtocol& protocol) {
  return {[protocol](double t) { return protocol.omega1(t); },
          [protocol](double t) { return protocol.omega2(t); },
          PulseSource::sta_analytic};
}

PulsePair make_pulses(const GaussianPulse& pulse1, const GaussianPulse& pulse2) {
  return {[pulse1](double t) { return pulse1(t); },
          [pulse2](double t) { return pulse2(t); }, PulseSource::gaussian_fit};
}

PulsePair make_pulses(const StirapProtocol& protocol) {
  return {[protocol](double t) { return protocol.omega1(t); },
          [protocol](double t) { return protocol.omega2(t); },
          PulseSource::stirap};
}

std::array<Complex3x3Matrix, 4> lindblad_operators(const LindbladRates& rates) {
  for (double r : {rates.gamma1, rates.gamma2, rates.gamma_phi1,
                   rates.gamma_phi2}) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw NegativeRate("Lindblad rates must be finite and >= 0");
    }
  }
  std::array<Complex3x3Matrix, 4> ops;
  for (auto& op : ops) op.setZero();
  ops[0](0, 1) = std::sqrt(rates.gamma1);
  ops[1](2, 1) = std::sqrt(rates.gamma2);
  ops[2](1, 1) = std::sqrt(rates.gamma_phi1);
  ops[2](0, 0) = -std::sqrt(rates.gamma_phi1);
  ops[3](1, 1) = std::sqrt(rates.gamma_phi2);
  ops[3](2, 2) = -std::sqrt(rates.gamma_phi2);
  return ops;
}

Complex3Vector basis_state(int level) {
  if (level < 1 || level > 3) throw InvalidState("level must be 1, 2 or 3");
  Complex3Vector v = Complex3Vector::Zero();
  v(level - 1) = 1.0;
  return v;
}

Complex3x3Matrix projector(int level) {
  const Complex3Vector v = basis_state(level);
  return v * v.adjoint();
}

namespace {

void check_steps(int steps, int minimum, const PropagationOptions& options) {
  if (steps < minimum) {
    throw InvalidSteps("need at least " + std::to_string(minimum) +
                       " steps, got " + std::to_string(steps));
  }
  if (options.stride < 1) throw InvalidSteps("stride must be >= 1");
}

void check_horizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw InvalidParameters("horizon must be positive and finite");
  }
}

using Liouvillian = Eigen::Matrix<Complex, 9, 9>;
using LiouvilleVector = Eigen::Matrix<Complex, 9, 1>;

bool keep(int step, int steps, int stride) {
  return step % stride == 0 || step == steps;
}

}  // namespace

Trajectory propagate_schrodinger(const PulsePair& pulses,
                                 const Complex3Vector& initial, double horizon,
                                 const PropagationOptions& options) {
  check_steps(options.steps, 100, options);
  check_horizon(horizon);
  if (!initial.allFinite() || std::abs(initial.norm() - 1.0) > 1e-10) {
    throw InvalidState("initial state must be unit-norm within 1e-10");
  }

  const int steps = options.steps;
  const double dt = horizon / steps;
  Trajectory out;
  out.steps = steps;
  out.time_unit = options.time_unit;

  Complex3Vector psi = initial;
  auto record = [&](int step) {
    if (!keep(step, steps, options.stride)) return;
    TrajectorySample s;
    s.t = step == steps ? horizon : step * dt;
    for (int k = 0; k < 3; ++k) s.populations[k] = std::norm(psi(k));
    out.samples.push_back(s);
    if (options.record_states) out.states.push_back(psi);
  };

  record(0);
  for (int step = 0; step < steps; ++step) {
    const double mid = (step + 0.5) * dt;
    const Complex3x3Matrix h =
        build_hamiltonian(pulses.omega1(mid), pulses.omega2(mid));
    psi = expi_hermitian(h, -dt) * psi;
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(psi.norm() - 1.0));
    record(step + 1);
  }
  if (!psi.allFinite()) {
    throw ComputationError("non-finite state during propagation");
  }
  out.final_state = psi;
  out.final_density = psi * psi.adjoint();
  return out;
}

Trajectory propagate_lindblad(const PulsePair& pulses,
                              const Complex3x3Matrix& initial,
                              const LindbladRates& rates, double horizon,
                              const PropagationOptions& options) {
  check_steps(options.steps, 1000, options);
  check_horizon(horizon);
  for (double r : {rates.gamma1, rates.gamma2, rates.gamma_phi1,
                   rates.gamma_phi2}) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw InvalidRates("Lindblad rates must be finite and >= 0");
    }
  }
  if (!initial.allFinite() || hermiticity_error(initial) > 1e-10 ||
      std::abs(initial.trace() - Complex(1.0)) > 1e-10 ||
      hermitian_eigendecompose(initial).values[0] < -1e-10) {
    throw InvalidDensity("initial density must be Hermitian, unit-trace, PSD");
  }

  // Column-major vectorization: vec(A rho B) = (B^T kron A) vec(rho).
  const Complex3x3Matrix id = Complex3x3Matrix::Identity();
  auto left_right = [](const Complex3x3Matrix& a, const Complex3x3Matrix& b) {
    Liouvillian out;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) out.block<3, 3>(3 * r, 3 * c) = b(c, r) * a;
    return out;
  };
  // i[rho, H] for H = omega1 A + omega2 B splits into two fixed generators.
  const Complex3x3Matrix drive1 = build_hamiltonian(1.0, 0.0);
  const Complex3x3Matrix drive2 = build_hamiltonian(0.0, 1.0);
  const Liouvillian coherent1 = kI * (left_right(id, drive1) - left_right(drive1, id));
  const Liouvillian coherent2 = kI * (left_right(id, drive2) - left_right(drive2, id));
  Liouvillian dissipator = Liouvillian::Zero();
  for (const auto& l : lindblad_operators(rates)) {
    const Complex3x3Matrix ldl = l.adjoint() * l;
    dissipator += left_right(l, l.adjoint()) -
                  0.5 * (left_right(ldl, id) + left_right(id, ldl));
  }

  auto generator = [&](double t) -> Liouvillian {
    return pulses.omega1(t) * coherent1 + pulses.omega2(t) * coherent2 +
           dissipator;
  };

  const int steps = options.steps;
  const double dt = horizon / steps;
  Trajectory out;
  out.steps = steps;
  out.time_unit = options.time_unit;
  out.min_eigenvalue = hermitian_eigendecompose(initial).values[0];

  LiouvilleVector vec = Eigen::Map<const LiouvilleVector>(initial.data());
  Complex3x3Matrix rho = initial;
  auto record = [&](int step) {
    out.max_trace_drift =
        std::max(out.max_trace_drift, std::abs(rho.trace() - Complex(1.0)));
    out.max_hermiticity_error =
        std::max(out.max_hermiticity_error, hermiticity_error(rho));
    if (!keep(step, steps, options.stride)) return;
    TrajectorySample s;
    s.t = step == steps ? horizon : step * dt;
    for (int k = 0; k < 3; ++k) s.populations[k] = rho(k, k).real();
    out.samples.push_back(s);
    if (options.record_states) out.densities.push_back(rho);
    const double lowest =
        hermitian_eigendecompose(0.5 * (rho + rho.adjoint())).values[0];
    out.min_eigenvalue = std::min(out.min_eigenvalue, lowest);
  };

  record(0);
  Liouvillian at_start = generator(0.0);
  for (int step = 0; step < steps; ++step) {
    const double t = step * dt;
    const Liouvillian at_mid = generator(t + 0.5 * dt);
    const Liouvillian at_end = generator(t + dt);
    const LiouvilleVector k1 = at_start * vec;
    const LiouvilleVector k2 = at_mid * (vec + (0.5 * dt) * k1);
    const LiouvilleVector k3 = at_mid * (vec + (0.5 * dt) * k2);
    const LiouvilleVector k4 = at_end * (vec + dt * k3);
    vec += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = Eigen::Map<const Complex3x3Matrix>(vec.data());
    at_start = at_end;
    record(step + 1);
  }
  if (!rho.allFinite()) {
    throw ComputationError("non-finite density during propagation");
  }
  out.final_density = rho;
  return out;
}

}  // namespace stalambda
