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

#include <string>

#include "stalambda/linalg.hpp"

namespace stalambda {

/// The three generators G1, G2, G3 spanning the su(2) algebra of the
/// Lambda Hamiltonian: [G1,G2] = iG3, [G2,G3] = iG1, [G3,G1] = iG2.
struct Generators {
  Complex3x3Matrix g1;
  Complex3x3Matrix g2;
  Complex3x3Matrix g3;
};

const Generators& generators();

/// H0 = omega1 (|1><2| + |2><1|) + omega2 (|3><2| + |2><3|).
Complex3x3Matrix build_hamiltonian(double omega1, double omega2);

/// M(phi) = sin(phi) G1 + cos(phi) G2.
Complex3x3Matrix m_operator(double phi);

/// Eigenstates of M(phi) for eigenvalues 0, +1 and -1.
struct MEigenbasis {
  Complex3Vector xi0;
  Complex3Vector xi_plus;
  Complex3Vector xi_minus;
};

MEigenbasis m_eigenbasis(double phi);

/// Drive parameters that reproduce a prescribed (mu, phi) evolution in the
/// rotated frame.
struct FrameMatch {
  double omega = 0.0;        // Rabi amplitude, equals gamma
  double theta = 0.0;        // mixing angle of the drive
  double epsilon_dot = 0.0;  // frame rotation rate
  double gamma = 0.0;
  double delta = 0.0;
};

/// `epsilon` is the accumulated frame angle, which callers obtain by
/// integrating epsilon_dot from zero.
FrameMatch frame_match(double mu, double mu_dot, double phi, double phi_dot,
                       double epsilon = 0.0);

/// Constant-mu shortcut protocol with phi(t) = (m pi / 2)(1 - cos(pi t / T)).
class StaProtocol {
 public:
  /// Throws InvalidWinding for m < 1 and InvalidParameters for kappa outside
  /// (0, 2) or a non-positive duration.
  StaProtocol(int m, double kappa, double duration);

  int winding() const { return m_; }
  double kappa() const { return kappa_; }
  double mu() const { return mu_; }
  double duration() const { return duration_; }

  double phi(double t) const;
  double phi_dot(double t) const;
  double epsilon(double t) const { return kappa_ * phi(t); }
  /// Includes the +pi shift on segments where phi_dot < 0 so that
  /// omega() stays non-negative.
  double theta(double t) const;
  double omega(double t) const;
  double omega1(double t) const;
  double omega2(double t) const;

  /// Ceiling of the intermediate-state population, 2 kappa - kappa^2.
  double p2_max() const { return kappa_ * (2.0 - kappa_); }

 private:
  int m_;
  double kappa_;
  double mu_;
  double duration_;
};

/// kappa = 1/(2m), which makes the analytic final state exactly |3>.
StaProtocol design_sta(int m, double duration = 1.0);

/// Closed-form state of the constant-mu protocol at time t in [0, T].
Complex3Vector analytic_state_constant_mu(const StaProtocol& p, double t);

/// Closed-form state for general (phi, epsilon, mu), valid when epsilon is
/// the integral of phi_dot (1 - cos mu) starting from phi = epsilon = 0.
Complex3Vector analytic_state_general(double phi, double epsilon, double mu);

/// Counter-intuitive Gaussian pair
///   omega1(t) = omega0 exp(-((t - t0 - T/2)/tc)^2)
///   omega2(t) = omega0 exp(-((t + t0 - T/2)/tc)^2)
class StirapProtocol {
 public:
  StirapProtocol(double omega0, double t0, double tc, double duration);

  double omega0() const { return omega0_; }
  double t0() const { return t0_; }
  double tc() const { return tc_; }
  double duration() const { return duration_; }

  double omega1(double t) const;
  double omega2(double t) const;

 private:
  double omega0_;
  double t0_;
  double tc_;
  double duration_;
};

/// Throws InvalidParameters unless omega0 > 0, tc > 0, 0 < t0 < T/2.
StirapProtocol design_stirap(double omega0, double t0, double tc,
                             double duration = 1.0);

/// Zero-energy eigenstate (omega2 |1> - omega1 |3>) / sqrt(omega1^2 + omega2^2).
Complex3Vector dark_state(double omega1, double omega2);

/// Serializable protocol parameters. Fields left unset take the defaults
/// of design_sta / design_stirap.
struct ProtocolParams {
  std::string type = "sta";  // "sta" | "stirap"
  int m = 1;
  double kappa = 0.0;  // 0: derived from m (or mu when mu > 0)
  double mu = 0.0;
  double duration = 1.0;
  double omega0 = 45.0;
  double t0 = 0.15;
  double tc = 0.20;

  /// Resolved kappa for an STA protocol.
  double resolved_kappa() const;
  StaProtocol sta() const;
  StirapProtocol stirap() const;
};

}  // namespace stalambda
