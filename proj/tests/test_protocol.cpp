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
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "stalambda/error.hpp"
#include "stalambda/protocol.hpp"

using namespace stalambda;
using stalambda::testing::max_entry_diff;
using std::numbers::pi;

TEST_CASE("generator commutators are exact") {
  const Generators& g = generators();
  CHECK(max_entry_diff(commutator(g.g1, g.g2), kI * g.g3) == 0.0);
  CHECK(max_entry_diff(commutator(g.g2, g.g3), kI * g.g1) == 0.0);
  CHECK(max_entry_diff(commutator(g.g3, g.g1), kI * g.g2) == 0.0);
}

TEST_CASE("build_hamiltonian") {
  CHECK(max_abs(build_hamiltonian(0.0, 0.0)) == 0.0);

  const Complex3x3Matrix h = build_hamiltonian(1.0, 0.0);
  CHECK(h(0, 1) == Complex(1.0));
  CHECK(h(1, 0) == Complex(1.0));
  CHECK(max_abs(h) == 1.0);
  CHECK(std::abs(h.sum() - Complex(2.0)) == 0.0);

  const double a = 0.7, b = -1.9;
  const Complex3x3Matrix hab = build_hamiltonian(a, b);
  CHECK(hermiticity_error(hab) == 0.0);
  CHECK(hab(0, 2) == Complex(0.0));
  CHECK(hab.diagonal().cwiseAbs().maxCoeff() == 0.0);
  const double omega = std::hypot(a, b);
  const double theta = std::atan2(a, b);
  const Generators& g = generators();
  CHECK(max_entry_diff(hab, omega * (std::sin(theta) * g.g1 + std::cos(theta) * g.g2)) < 1e-15);
}

TEST_CASE("M eigenbasis") {
  SUBCASE("phi = 0") {
    const MEigenbasis xi = m_eigenbasis(0.0);
    const double r = 1.0 / std::sqrt(2.0);
    CHECK((xi.xi0 - Complex3Vector(1, 0, 0)).norm() == 0.0);
    CHECK((xi.xi_plus - Complex3Vector(0, r, r)).norm() < 1e-16);
    CHECK((xi.xi_minus - Complex3Vector(0, -r, r)).norm() < 1e-16);
  }
  SUBCASE("phi = pi/2 gives xi0 = -|3>") {
    const MEigenbasis xi = m_eigenbasis(pi / 2.0);
    CHECK((xi.xi0 - Complex3Vector(0, 0, -1)).norm() < 1e-15);
  }
  SUBCASE("eigen-equations and orthonormality for any phi") {
    for (double phi = -4.0; phi <= 4.0; phi += 0.37) {
      const MEigenbasis xi = m_eigenbasis(phi);
      const Complex3x3Matrix m = m_operator(phi);
      CHECK((m * xi.xi0).norm() < 1e-15);
      CHECK((m * xi.xi_plus - xi.xi_plus).norm() < 1e-15);
      CHECK((m * xi.xi_minus + xi.xi_minus).norm() < 1e-15);
      Complex3x3Matrix basis;
      basis << xi.xi0, xi.xi_plus, xi.xi_minus;
      CHECK(max_entry_diff(basis.adjoint() * basis, Complex3x3Matrix::Identity()) < 1e-15);
    }
  }
}

TEST_CASE("frame_match") {
  SUBCASE("constant mu") {
    const FrameMatch f = frame_match(pi / 3.0, 0.0, 0.4, 2.0);
    CHECK(f.delta == 0.0);
    CHECK(f.gamma == doctest::Approx(2.0 * std::sin(pi / 3.0)));
    CHECK(f.omega == f.gamma);
    CHECK(f.epsilon_dot == doctest::Approx(2.0 * 0.5));
    CHECK(f.theta == doctest::Approx(0.4 - pi / 2.0));
  }
  SUBCASE("stationary frame") {
    const FrameMatch f = frame_match(0.8, 0.0, 0.1, 0.0);
    CHECK(f.gamma == 0.0);
    CHECK(f.delta == 0.0);
  }
  SUBCASE("pure mu motion") {
    const FrameMatch f = frame_match(0.8, 1.0, 0.1, 0.0);
    CHECK(f.gamma == doctest::Approx(1.0));
    CHECK(f.delta == doctest::Approx(pi / 2.0));
  }
  SUBCASE("theta + epsilon = phi - delta - pi/2") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
      const double mu = 1.0 + 0.5 * u(rng), mu_dot = u(rng), phi = u(rng),
                   phi_dot = u(rng), eps = u(rng);
      const FrameMatch f = frame_match(mu, mu_dot, phi, phi_dot, eps);
      CHECK(f.theta + eps == doctest::Approx(phi - f.delta - pi / 2.0));
      CHECK(f.gamma == doctest::Approx(std::sqrt(mu_dot * mu_dot +
                                                 std::pow(phi_dot * std::sin(mu), 2))));
    }
  }
}

TEST_CASE("design_sta for m = 1") {
  const StaProtocol p = design_sta(1, 1.0);
  CHECK(p.kappa() == 0.5);
  CHECK(p.mu() == doctest::Approx(pi / 3.0).epsilon(1e-15));
  CHECK(p.phi(0.0) == 0.0);
  CHECK(p.phi(1.0) == doctest::Approx(pi).epsilon(1e-15));
  CHECK(p.omega(0.0) == 0.0);
  CHECK(std::abs(p.omega(1.0)) < 1e-14);
  for (double t = 0.0; t <= 1.0; t += 0.05) {
    CHECK(p.omega(t) == doctest::Approx(std::sqrt(3.0) / 2.0 * pi * pi / 2.0 *
                                        std::sin(pi * t)));
    CHECK(p.theta(t) == doctest::Approx((p.phi(t) - pi) / 2.0));
    CHECK(p.epsilon(t) == doctest::Approx(0.5 * p.phi(t)));
    CHECK(p.omega1(t) <= 1e-15);  // signed, non-positive for m = 1
    CHECK(p.omega1(t) * p.omega1(t) + p.omega2(t) * p.omega2(t) ==
          doctest::Approx(p.omega(t) * p.omega(t)));
  }
  // Dense-grid maximum against sqrt(3) pi^2 / 4 at T/2.
  double peak = 0.0, at = 0.0;
  for (int i = 0; i <= 100000; ++i) {
    const double t = i / 100000.0;
    if (p.omega(t) > peak) peak = p.omega(t), at = t;
  }
  CHECK(peak == doctest::Approx(std::sqrt(3.0) * pi * pi / 4.0).epsilon(1e-12));
  CHECK(at == doctest::Approx(0.5));
}

TEST_CASE("design_sta for higher windings and errors") {
  const StaProtocol p3 = design_sta(3, 1.0);
  CHECK(p3.kappa() == doctest::Approx(1.0 / 6.0));
  CHECK(p3.p2_max() == doctest::Approx(11.0 / 36.0));
  CHECK(p3.p2_max() == doctest::Approx(0.3056).epsilon(1e-4));
  CHECK(p3.phi(1.0) == doctest::Approx(3.0 * pi));

  CHECK_THROWS_AS(design_sta(0), InvalidWinding);
  CHECK_THROWS_AS(design_sta(-2), InvalidWinding);
  CHECK_THROWS_AS(design_sta(1, 0.0), InvalidParameters);
  CHECK_THROWS_AS(StaProtocol(1, 2.0, 1.0), InvalidParameters);
}

TEST_CASE("negative phi_dot segments keep omega non-negative") {
  const StaProtocol p = design_sta(1, 1.0);
  for (double t = 1.05; t < 2.0; t += 0.1) {
    CHECK(p.phi_dot(t) < 0.0);
    CHECK(p.omega(t) >= 0.0);
    // The signed drives equal phi_dot sin(mu) times the unshifted angle.
    const double raw = (1.0 - p.kappa()) * p.phi(t) - pi / 2.0;
    CHECK(p.omega1(t) == doctest::Approx(p.phi_dot(t) * std::sin(p.mu()) * std::sin(raw)));
    CHECK(p.omega2(t) == doctest::Approx(p.phi_dot(t) * std::sin(p.mu()) * std::cos(raw)));
  }
}

TEST_CASE("analytic_state_constant_mu") {
  const StaProtocol p = design_sta(1, 1.0);
  CHECK((analytic_state_constant_mu(p, 0.0) - Complex3Vector(1, 0, 0)).norm() < 1e-15);
  CHECK((analytic_state_constant_mu(p, 1.0) - Complex3Vector(0, 0, 1)).norm() < 1e-14);

  const Complex3Vector half = analytic_state_constant_mu(p, 0.5);
  const double r = std::sqrt(2.0) / 4.0;
  CHECK((half - Complex3Vector(r, kI * (std::sqrt(3.0) / 2.0), r)).norm() < 1e-15);
  CHECK(std::norm(half(0)) == doctest::Approx(0.125));
  CHECK(std::norm(half(1)) == doctest::Approx(0.75));
  CHECK(std::norm(half(2)) == doctest::Approx(0.125));

  CHECK_THROWS_AS(analytic_state_constant_mu(p, -0.1), TimeOutOfRange);
  CHECK_THROWS_AS(analytic_state_constant_mu(p, 1.1), TimeOutOfRange);
}

TEST_CASE("analytic state properties across protocols") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int m = 1; m <= 7; ++m) {
    const StaProtocol p = design_sta(m, 1.0);
    for (int i = 0; i < 50; ++i) {
      const double t = u(rng);
      const Complex3Vector psi = analytic_state_constant_mu(p, t);
      CHECK(std::abs(psi.norm() - 1.0) < 1e-12);
      const double s = std::sin(p.phi(t));
      CHECK(std::abs(std::norm(psi(1)) - p.p2_max() * s * s) < 1e-12);
      // general closed form with epsilon = kappa phi and cos mu = 1 - kappa.
      const Complex3Vector general = analytic_state_general(p.phi(t), p.epsilon(t), p.mu());
      CHECK((general - psi).norm() < 1e-12);
    }
    const Complex3Vector final = analytic_state_constant_mu(p, 1.0);
    CHECK(std::norm(final(2)) == doctest::Approx(1.0).epsilon(1e-14));
  }

  // Final-state law for arbitrary kappa: P3(T) = sin^2(kappa m pi).
  for (int i = 0; i < 40; ++i) {
    const int m = 1 + static_cast<int>(u(rng) * 5);
    const double kappa = 0.05 + 1.9 * u(rng);
    const StaProtocol p(m, kappa, 1.0);
    const double s = std::sin(kappa * m * pi);
    CHECK(std::norm(analytic_state_constant_mu(p, 1.0)(2)) == doctest::Approx(s * s).epsilon(1e-12));
  }
}

TEST_CASE("analytic_state_general special cases") {
  CHECK((analytic_state_general(0.0, 0.0, 0.9) - Complex3Vector(1, 0, 0)).norm() < 1e-16);
  CHECK((analytic_state_general(1.7, 0.0, 0.0) - Complex3Vector(1, 0, 0)).norm() < 1e-15);
  const StaProtocol p = design_sta(1, 1.0);
  CHECK((analytic_state_general(pi / 2.0, pi / 4.0, pi / 3.0) -
         analytic_state_constant_mu(p, 0.5)).norm() < 1e-15);
}

TEST_CASE("picture transformation reproduces H0") {
  const Generators& g = generators();
  for (int m = 1; m <= 3; ++m) {
    const StaProtocol p = design_sta(m, 1.0);
    auto frame = [&](double t) { return expi_hermitian(g.g3, -p.epsilon(t)); };
    for (double t = 0.03; t < 1.0; t += 0.07) {
      const double theta = p.theta(t), eps = p.epsilon(t), omega = p.omega(t);
      const double eps_dot = p.kappa() * p.phi_dot(t);
      const Complex3x3Matrix h1 = omega * std::sin(theta + eps) * g.g1 +
                                  omega * std::cos(theta + eps) * g.g2 - eps_dot * g.g3;
      const double h = 1e-5;
      const Complex3x3Matrix b = frame(t);
      const Complex3x3Matrix b_dot = (frame(t + h) - frame(t - h)) / (2.0 * h);
      const Complex3x3Matrix h0 = b * h1 * b.adjoint() + kI * b_dot * b.adjoint();
      CHECK(max_entry_diff(h0, build_hamiltonian(p.omega1(t), p.omega2(t))) < 1e-9);
      CHECK(max_entry_diff(build_hamiltonian(p.omega1(t), p.omega2(t)),
                           omega * (std::sin(theta) * g.g1 + std::cos(theta) * g.g2)) < 1e-12);
    }
  }
}

TEST_CASE("frame rotation of the generators") {
  const Generators& g = generators();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-pi, pi);
  for (int i = 0; i < 100; ++i) {
    const double eps = u(rng), theta = u(rng);
    const Complex3x3Matrix r = expi_hermitian(g.g3, eps);
    const Complex3x3Matrix g1r = r * g.g1 * r.adjoint();
    const Complex3x3Matrix g2r = r * g.g2 * r.adjoint();
    CHECK(max_entry_diff(g1r, std::cos(eps) * g.g1 - std::sin(eps) * g.g2) < 1e-10);
    CHECK(max_entry_diff(g2r, std::sin(eps) * g.g1 + std::cos(eps) * g.g2) < 1e-10);
    CHECK(max_entry_diff(std::sin(theta) * g1r + std::cos(theta) * g2r,
                         std::sin(theta + eps) * g.g1 + std::cos(theta + eps) * g.g2) < 1e-10);
  }
}

TEST_CASE("design_stirap") {
  const StirapProtocol p = design_stirap(10.0, 0.15, 0.2, 1.0);
  CHECK(p.omega1(0.5) == doctest::Approx(10.0 * std::exp(-0.5625)));
  CHECK(p.omega2(0.5) == doctest::Approx(10.0 * std::exp(-0.5625)));
  CHECK(p.omega1(0.65) == 10.0);
  CHECK(p.omega2(0.35) == 10.0);
  const double start_ratio = p.omega1(0.0) / p.omega2(0.0);
  CHECK(start_ratio == doctest::Approx(std::exp(-10.5625) / std::exp(-3.0625)));
  CHECK(start_ratio < 1e-3);
  CHECK(p.omega2(1.0) / p.omega1(1.0) < 1e-3);

  CHECK_THROWS_AS(design_stirap(0.0, 0.15, 0.2), InvalidParameters);
  CHECK_THROWS_AS(design_stirap(1.0, 0.15, 0.0), InvalidParameters);
  CHECK_THROWS_AS(design_stirap(1.0, 0.5, 0.2), InvalidParameters);
  CHECK_THROWS_AS(design_stirap(1.0, 0.0, 0.2), InvalidParameters);
}

TEST_CASE("dark_state") {
  CHECK((dark_state(0.0, 2.0) - Complex3Vector(1, 0, 0)).norm() == 0.0);
  CHECK((dark_state(3.0, 0.0) - Complex3Vector(0, 0, -1)).norm() == 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((dark_state(1.0, 1.0) - Complex3Vector(r, 0, -r)).norm() < 1e-16);
  for (double a : {-2.0, 0.3, 5.0}) {
    const Complex3Vector d = dark_state(a, 1.7);
    CHECK((build_hamiltonian(a, 1.7) * d).norm() < 1e-15);
  }
  CHECK_THROWS_AS(dark_state(0.0, 0.0), DegeneratePulse);
}

TEST_CASE("protocol params resolution") {
  ProtocolParams p;
  p.m = 2;
  CHECK(p.resolved_kappa() == 0.25);
  p.mu = pi / 3.0;
  CHECK(p.resolved_kappa() == doctest::Approx(0.5));
  p.kappa = 0.1;
  CHECK(p.sta().kappa() == 0.1);
  p.type = "stirap";
  CHECK(p.stirap().omega0() == 45.0);
}
