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

#include <doctest.h>

#include <cmath>
#include <utility>

#include <unsupported/Eigen/MatrixFunctions>

#include "fixtures.hpp"
#include "stalambda/analysis.hpp"
#include "stalambda/dynamics.hpp"
#include "stalambda/error.hpp"
#include "stalambda/protocol.hpp"

using namespace stalambda;
using stalambda::testing::max_entry_diff;
using stalambda::testing::published_pulse1;
using stalambda::testing::published_pulse2;

namespace {

PulsePair constant_pulses(double a, double b) {
  return {[a](double) { return a; }, [b](double) { return b; }, PulseSource::sta_analytic};
}

double worst_population_error(const Trajectory& tr, const StaProtocol& p) {
  double worst = 0.0;
  for (const auto& s : tr.samples) {
    const Complex3Vector exact = analytic_state_constant_mu(p, s.t);
    for (int k = 0; k < 3; ++k) {
      worst = std::max(worst, std::abs(s.populations[k] - std::norm(exact(k))));
    }
  }
  return worst;
}

// exp(L t) vec(rho0) with L assembled column by column from the master
// equation applied to matrix units.
Complex3x3Matrix lindblad_exact(const Complex3x3Matrix& h,
                                const std::array<Complex3x3Matrix, 4>& jumps,
                                const Complex3x3Matrix& rho0, double t) {
  Eigen::Matrix<Complex, 9, 9> super;
  for (int col = 0; col < 9; ++col) {
    Complex3x3Matrix unit = Complex3x3Matrix::Zero();
    unit(col % 3, col / 3) = 1.0;
    Complex3x3Matrix d = kI * (unit * h - h * unit);
    for (const auto& l : jumps) {
      d += l * unit * l.adjoint() -
           0.5 * (l.adjoint() * l * unit + unit * l.adjoint() * l);
    }
    for (int row = 0; row < 9; ++row) super(row, col) = d(row % 3, row / 3);
  }
  const Eigen::Matrix<Complex, 9, 9> prop = (super * t).exp();
  Eigen::Matrix<Complex, 9, 1> v;
  for (int i = 0; i < 9; ++i) v(i) = rho0(i % 3, i / 3);
  const Eigen::Matrix<Complex, 9, 1> out = prop * v;
  Complex3x3Matrix rho;
  for (int i = 0; i < 9; ++i) rho(i % 3, i / 3) = out(i);
  return rho;
}

}  // namespace

TEST_CASE("zero pulses leave any state unchanged") {
  Complex3Vector psi(0.6, Complex(0.0, 0.64), 0.48);
  psi.normalize();
  const Trajectory tr = propagate_schrodinger(constant_pulses(0.0, 0.0), psi, 1.0,
                                              {.steps = 200, .stride = 1, .record_states = true});
  for (const auto& s : tr.states) CHECK((s - psi).norm() < 1e-15);
  CHECK(tr.samples.size() == 201);
}

TEST_CASE("analytic STA pulses follow the closed-form state") {
  const StaProtocol p = design_sta(1, 1.0);
  const Trajectory tr = propagate_schrodinger(make_pulses(p), basis_state(1), 1.0,
                                              {.steps = 10000, .stride = 1});
  CHECK(worst_population_error(tr, p) <= 1e-6);
  CHECK(std::abs(tr.final_population(3) - 1.0) <= 1e-8);
  CHECK(tr.max_norm_drift <= 1e-9);
  for (std::size_t i = 1; i < tr.samples.size(); ++i) {
    CHECK(tr.samples[i].t > tr.samples[i - 1].t);
  }
}

TEST_CASE("midpoint propagator is second order") {
  const StaProtocol p = design_sta(2, 1.0);
  double previous = 0.0;
  for (int steps : {200, 400, 800, 1600}) {
    const Trajectory tr = propagate_schrodinger(make_pulses(p), basis_state(1), 1.0,
                                                {.steps = steps, .stride = steps / 20});
    const double err = worst_population_error(tr, p);
    if (previous > 1e-10) CHECK(previous / err >= 3.0);
    previous = err;
  }
}

TEST_CASE("published Gaussian pulses complete the transfer") {
  const Trajectory tr = propagate_schrodinger(
      make_pulses(published_pulse1(), published_pulse2()), basis_state(1), 1.0);
  CHECK(1.0 - tr.final_population(3) <= 1e-4);
  CHECK(tr.max_norm_drift <= 1e-9);
}

TEST_CASE("Schrodinger input validation") {
  const PulsePair pulses = constant_pulses(1.0, 1.0);
  CHECK_THROWS_AS(propagate_schrodinger(pulses, Complex3Vector(1, 1, 0), 1.0), InvalidState);
  CHECK_THROWS_AS(propagate_schrodinger(pulses, basis_state(1), 1.0, {.steps = 99}), InvalidSteps);
  CHECK_THROWS_AS(propagate_schrodinger(pulses, basis_state(1), 1.0, {.steps = 100, .stride = 0}),
                  InvalidSteps);
  CHECK_THROWS_AS(propagate_schrodinger(pulses, basis_state(1), 0.0), InvalidParameters);
  CHECK_THROWS_AS(basis_state(4), InvalidState);
}

TEST_CASE("lindblad_operators") {
  for (const auto& l : lindblad_operators({})) CHECK(max_abs(l) == 0.0);

  const auto relax = lindblad_operators({.gamma1 = 4.0});
  CHECK(relax[0](0, 1) == Complex(2.0));
  CHECK(max_abs(relax[0]) == 2.0);
  CHECK(std::abs(relax[0].sum() - Complex(2.0)) == 0.0);

  const auto deph = lindblad_operators({.gamma_phi1 = 1.0});
  Complex3x3Matrix expected = Complex3x3Matrix::Zero();
  expected(0, 0) = -1.0;
  expected(1, 1) = 1.0;
  CHECK(max_entry_diff(deph[2], expected) == 0.0);

  const auto all = lindblad_operators({1.0, 9.0, 4.0, 16.0});
  CHECK(all[1](2, 1) == Complex(3.0));
  CHECK(all[3](1, 1) == Complex(4.0));
  CHECK(all[3](2, 2) == Complex(-4.0));

  CHECK_THROWS_AS(lindblad_operators({.gamma2 = -1.0}), NegativeRate);
}

TEST_CASE("zero rates reduce the master equation to the Schrodinger equation") {
  const PulsePair pulses = make_pulses(design_sta(1, 1.0));
  const Trajectory open = propagate_lindblad(pulses, projector(1), {}, 1.0, {.steps = 10000, .stride = 100});
  const Trajectory closed = propagate_schrodinger(pulses, basis_state(1), 1.0, {.steps = 10000, .stride = 100});
  REQUIRE(open.samples.size() == closed.samples.size());
  for (std::size_t i = 0; i < open.samples.size(); ++i) {
    for (int k = 0; k < 3; ++k) {
      CHECK(std::abs(open.samples[i].populations[k] - closed.samples[i].populations[k]) <= 1e-7);
    }
  }
  CHECK(open.max_trace_drift <= 1e-8);
  CHECK(open.max_hermiticity_error <= 1e-9);
}

TEST_CASE("RK4 matches the exact superoperator exponential for constant drive") {
  const LindbladRates rates{0.3, 0.2, 0.15, 0.4};
  Complex3x3Matrix rho0 = Complex3x3Matrix::Zero();
  rho0(0, 0) = 0.5;
  rho0(1, 1) = 0.3;
  rho0(2, 2) = 0.2;
  rho0(0, 1) = Complex(0.1, 0.05);
  rho0(1, 0) = std::conj(rho0(0, 1));
  const Trajectory tr = propagate_lindblad(constant_pulses(1.3, -0.8), rho0, rates, 2.0,
                                           {.steps = 2000, .stride = 2000});
  const Complex3x3Matrix exact =
      lindblad_exact(build_hamiltonian(1.3, -0.8), lindblad_operators(rates), rho0, 2.0);
  CHECK(max_entry_diff(tr.final_density, exact) <= 1e-10);
}

TEST_CASE("pure relaxation from |2> decays exponentially") {
  const Trajectory tr = propagate_lindblad(constant_pulses(0.0, 0.0), projector(2),
                                           {.gamma1 = 0.7, .gamma2 = 0.3}, 1.5,
                                           {.steps = 1000, .stride = 100});
  for (const auto& s : tr.samples) {
    const double left = std::exp(-s.t);
    CHECK(s.populations[1] == doctest::Approx(left).epsilon(1e-10));
    CHECK(s.populations[0] == doctest::Approx(0.7 * (1.0 - left)).epsilon(1e-10));
    CHECK(s.populations[2] == doctest::Approx(0.3 * (1.0 - left)).epsilon(1e-10));
  }
  CHECK(tr.min_eigenvalue >= -1e-12);
  CHECK_FALSE(tr.positivity_warning());
}

TEST_CASE("fitted pulses under single-channel decoherence") {
  const PulsePair pulses = sta_fit_pulses(1, 2);
  const double scale = peak_amplitude(pulses);
  SUBCASE("relaxation") {
    const Trajectory tr = propagate_lindblad(
        pulses, projector(1), {.gamma1 = 0.01 * scale, .gamma2 = 0.01 * scale}, 1.0);
    CHECK(tr.final_population(3) >= 0.986);
    CHECK(tr.max_trace_drift <= 1e-8);
    CHECK(tr.max_hermiticity_error <= 1e-9);
    CHECK(tr.min_eigenvalue >= -1e-7);
  }
  SUBCASE("dephasing") {
    const Trajectory tr = propagate_lindblad(
        pulses, projector(1), {.gamma_phi1 = 0.01 * scale, .gamma_phi2 = 0.01 * scale}, 1.0);
    CHECK(tr.final_population(3) >= 0.979);
    CHECK(tr.max_trace_drift <= 1e-8);
  }
}

TEST_CASE("Lindblad input validation") {
  const PulsePair pulses = constant_pulses(1.0, 1.0);
  Complex3x3Matrix bad = projector(1);
  bad(0, 1) = 0.3;
  CHECK_THROWS_AS(propagate_lindblad(pulses, bad, {}, 1.0), InvalidDensity);
  CHECK_THROWS_AS(propagate_lindblad(pulses, 2.0 * projector(1), {}, 1.0), InvalidDensity);
  Complex3x3Matrix negative = Complex3x3Matrix::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(propagate_lindblad(pulses, negative, {}, 1.0), InvalidDensity);
  CHECK_THROWS_AS(propagate_lindblad(pulses, projector(1), {.gamma_phi2 = -0.1}, 1.0), InvalidRates);
  CHECK_THROWS_AS(propagate_lindblad(pulses, projector(1), {}, 1.0, {.steps = 999}), InvalidSteps);
}

namespace {

// Smallest |<D(t)|psi(t)>|^2 over t in [0.1, 0.9] and where it occurs.
std::pair<double, double> worst_dark_overlap(double omega0) {
  const StirapProtocol p = design_stirap(omega0, 0.15, 0.2, 1.0);
  const Trajectory tr = propagate_schrodinger(make_pulses(p), basis_state(1), 1.0,
                                              {.steps = 10000, .stride = 10, .record_states = true});
  std::pair<double, double> worst{1.0, 0.0};
  for (std::size_t i = 0; i < tr.samples.size(); ++i) {
    const double t = tr.samples[i].t;
    if (t < 0.1 || t > 0.9) continue;
    const double f = std::norm(dark_state(p.omega1(t), p.omega2(t)).dot(tr.states[i]));
    if (f < worst.first) worst = {f, t};
  }
  return worst;
}

}  // namespace

// At 70/T the bright-state admixture peaks near T/2 at about 2%.
TEST_CASE("STIRAP dark-state overlap floor of 0.99 at 70/T" * doctest::should_fail()) {
  CHECK(worst_dark_overlap(70.0).first >= 0.99);
}

TEST_CASE("STIRAP follows the dark state more closely at larger amplitude") {
  const auto [f70, t70] = worst_dark_overlap(70.0);
  const auto [f140, t140] = worst_dark_overlap(140.0);
  CHECK(f70 >= 0.97);
  CHECK(std::abs(t70 - 0.5) <= 0.05);
  CHECK(f140 >= 0.99);
  CHECK(f140 > f70);
}
