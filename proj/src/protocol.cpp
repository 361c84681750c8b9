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

#include "stalambda/protocol.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stalambda/error.hpp"

namespace stalambda {

using std::numbers::pi;

const Generators& generators() {
  static const Generators g = [] {
    Generators out;
    out.g1 = Complex3x3Matrix::Zero();
    out.g1(0, 1) = 1.0;
    out.g1(1, 0) = 1.0;
    out.g2 = Complex3x3Matrix::Zero();
    out.g2(1, 2) = 1.0;
    out.g2(2, 1) = 1.0;
    out.g3 = Complex3x3Matrix::Zero();
    out.g3(0, 2) = -kI;
    out.g3(2, 0) = kI;
    return out;
  }();
  return g;
}

Complex3x3Matrix build_hamiltonian(double omega1, double omega2) {
  Complex3x3Matrix h = Complex3x3Matrix::Zero();
  h(0, 1) = omega1;
  h(1, 0) = omega1;
  h(1, 2) = omega2;
  h(2, 1) = omega2;
  return h;
}

Complex3x3Matrix m_operator(double phi) {
  const Generators& g = generators();
  return std::sin(phi) * g.g1 + std::cos(phi) * g.g2;
}

MEigenbasis m_eigenbasis(double phi) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const double r = 1.0 / std::sqrt(2.0);
  MEigenbasis out;
  out.xi0 << c, 0.0, -s;
  out.xi_plus << r * s, r, r * c;
  out.xi_minus << r * s, -r, r * c;
  return out;
}

FrameMatch frame_match(double mu, double mu_dot, double phi, double phi_dot,
                       double epsilon) {
  FrameMatch out;
  const double transverse = phi_dot * std::sin(mu);
  out.gamma = std::hypot(mu_dot, transverse);
  out.omega = out.gamma;
  out.delta = (mu_dot == 0.0 && transverse == 0.0)
                  ? 0.0
                  : std::atan2(mu_dot, transverse);
  out.epsilon_dot = phi_dot * (1.0 - std::cos(mu));
  out.theta = phi - out.delta - pi / 2.0 - epsilon;
  return out;
}

StaProtocol::StaProtocol(int m, double kappa, double duration)
    : m_(m), kappa_(kappa), mu_(0.0), duration_(duration) {
  if (m < 1) {
    throw InvalidWinding("winding m must be >= 1, got " + std::to_string(m));
  }
  if (!(kappa > 0.0 && kappa < 2.0)) {
    throw InvalidParameters("kappa must lie in (0, 2)");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw InvalidParameters("duration must be positive and finite");
  }
  mu_ = std::acos(1.0 - kappa);
}

double StaProtocol::phi(double t) const {
  return 0.5 * m_ * pi * (1.0 - std::cos(pi * t / duration_));
}

double StaProtocol::phi_dot(double t) const {
  return 0.5 * m_ * pi * pi / duration_ * std::sin(pi * t / duration_);
}

double StaProtocol::theta(double t) const {
  const double base = (1.0 - kappa_) * phi(t) - pi / 2.0;
  return phi_dot(t) < 0.0 ? base + pi : base;
}

double StaProtocol::omega(double t) const {
  return std::abs(phi_dot(t)) * std::sin(mu_);
}

double StaProtocol::omega1(double t) const {
  return omega(t) * std::sin(theta(t));
}

double StaProtocol::omega2(double t) const {
  return omega(t) * std::cos(theta(t));
}

StaProtocol design_sta(int m, double duration) {
  if (m < 1) {
    throw InvalidWinding("winding m must be >= 1, got " + std::to_string(m));
  }
  return StaProtocol(m, 1.0 / (2.0 * m), duration);
}

Complex3Vector analytic_state_constant_mu(const StaProtocol& p, double t) {
  const double slack = 1e-12 * p.duration();
  if (!(t >= -slack && t <= p.duration() + slack)) {
    std::ostringstream msg;
    msg << "t = " << t << " outside [0, " << p.duration() << "]";
    throw TimeOutOfRange(msg.str());
  }
  const double k = p.kappa();
  const double phi = p.phi(t);
  const double sp = std::sin(phi);
  const double cp = std::cos(phi);
  const double ck = std::cos(k * phi);
  const double sk = std::sin(k * phi);
  const double well = 1.0 - k * sp * sp;

  Complex3Vector psi;
  psi << ck * well + k * sk * sp * cp,
      kI * (std::sqrt(2.0 * k - k * k) * sp),
      sk * well - k * ck * sp * cp;
  return psi;
}

Complex3Vector analytic_state_general(double phi, double epsilon, double mu) {
  const double sp = std::sin(phi);
  const double cp = std::cos(phi);
  const double cm = std::cos(mu);
  const double diag = cp * cp + sp * sp * cm;
  const double cross = sp * cp * (cm - 1.0);
  const double ce = std::cos(epsilon);
  const double se = std::sin(epsilon);

  Complex3Vector psi;
  psi << ce * diag - se * cross, kI * (sp * std::sin(mu)),
      ce * cross + se * diag;
  return psi;
}

StirapProtocol::StirapProtocol(double omega0, double t0, double tc,
                               double duration)
    : omega0_(omega0), t0_(t0), tc_(tc), duration_(duration) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw InvalidParameters("omega0 must be positive");
  }
  if (!(tc > 0.0)) throw InvalidParameters("tc must be positive");
  if (!(duration > 0.0)) throw InvalidParameters("duration must be positive");
  if (!(t0 > 0.0 && t0 < duration / 2.0)) {
    throw InvalidParameters("t0 must lie in (0, T/2)");
  }
}

double StirapProtocol::omega1(double t) const {
  const double x = (t - t0_ - duration_ / 2.0) / tc_;
  return omega0_ * std::exp(-x * x);
}

double StirapProtocol::omega2(double t) const {
  const double x = (t + t0_ - duration_ / 2.0) / tc_;
  return omega0_ * std::exp(-x * x);
}

StirapProtocol design_stirap(double omega0, double t0, double tc,
                             double duration) {
  return StirapProtocol(omega0, t0, tc, duration);
}

Complex3Vector dark_state(double omega1, double omega2) {
  const double norm = std::hypot(omega1, omega2);
  if (!(norm > 0.0)) {
    throw DegeneratePulse("dark state undefined when both pulses vanish");
  }
  Complex3Vector psi;
  psi << omega2 / norm, 0.0, -omega1 / norm;
  return psi;
}

double ProtocolParams::resolved_kappa() const {
  if (kappa > 0.0) return kappa;
  if (mu > 0.0) return 1.0 - std::cos(mu);
  if (m < 1) {
    throw InvalidWinding("winding m must be >= 1, got " + std::to_string(m));
  }
  return 1.0 / (2.0 * m);
}

StaProtocol ProtocolParams::sta() const {
  return StaProtocol(m, resolved_kappa(), duration);
}

StirapProtocol ProtocolParams::stirap() const {
  return design_stirap(omega0, t0, tc, duration);
}

}  // namespace stalambda
