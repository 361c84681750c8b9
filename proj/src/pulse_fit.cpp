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

#include "stalambda/pulse_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "stalambda/error.hpp"
#include "stalambda/protocol.hpp"

namespace stalambda {

GaussianPulse::GaussianPulse(std::vector<GaussianComponent> components)
    : components_(std::move(components)) {
  for (const auto& c : components_) {
    if (!(c.chi > 0.0) || !std::isfinite(c.zeta) || !std::isfinite(c.tau)) {
      throw InvalidParameters("Gaussian component needs chi > 0 and finite values");
    }
  }
}

double GaussianPulse::operator()(double t) const {
  double sum = 0.0;
  for (const auto& c : components_) {
    const double x = (t - c.tau) / c.chi;
    sum += c.zeta * std::exp(-x * x);
  }
  return sum;
}

GaussianPulse GaussianPulse::scaled(double factor) const {
  GaussianPulse out = *this;
  for (auto& c : out.components_) c.zeta *= factor;
  return out;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

VectorXd pack(const GaussianPulse& pulse) {
  VectorXd p(3 * pulse.size());
  for (std::size_t i = 0; i < pulse.size(); ++i) {
    const auto& c = pulse.components()[i];
    p.segment<3>(3 * i) << c.zeta, c.tau, c.chi;
  }
  return p;
}

GaussianPulse unpack(const VectorXd& p) {
  std::vector<GaussianComponent> comps(p.size() / 3);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    comps[i] = {p(3 * i), p(3 * i + 1), p(3 * i + 2)};
  }
  return GaussianPulse(std::move(comps));
}

bool widths_positive(const VectorXd& p) {
  for (Eigen::Index i = 2; i < p.size(); i += 3) {
    if (!(p(i) > 0.0)) return false;
  }
  return true;
}

VectorXd residuals(std::span<const Sample> samples, const VectorXd& p) {
  VectorXd r(samples.size());
  const Eigen::Index n = p.size() / 3;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    double model = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double x = (samples[k].t - p(3 * i + 1)) / p(3 * i + 2);
      model += p(3 * i) * std::exp(-x * x);
    }
    r(k) = model - samples[k].value;
  }
  return r;
}

MatrixXd jacobian(std::span<const Sample> samples, const VectorXd& p) {
  const Eigen::Index n = p.size() / 3;
  MatrixXd j(samples.size(), p.size());
  for (std::size_t k = 0; k < samples.size(); ++k) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double zeta = p(3 * i);
      const double chi = p(3 * i + 2);
      const double d = samples[k].t - p(3 * i + 1);
      const double e = std::exp(-(d * d) / (chi * chi));
      j(k, 3 * i) = e;
      j(k, 3 * i + 1) = zeta * e * 2.0 * d / (chi * chi);
      j(k, 3 * i + 2) = zeta * e * 2.0 * d * d / (chi * chi * chi);
    }
  }
  return j;
}

double rms(const VectorXd& r) {
  return r.size() == 0 ? 0.0 : std::sqrt(r.squaredNorm() / r.size());
}

std::size_t argmax_abs(std::span<const double> v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  return best;
}

// Index where |v| first drops below half of |v[peak]| walking from the peak
// in direction `step`; clamps at the ends.
std::size_t half_max_index(std::span<const double> v, std::size_t peak,
                           int step) {
  const double half = 0.5 * std::abs(v[peak]);
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(peak);
  const auto last = static_cast<std::ptrdiff_t>(v.size()) - 1;
  while (i + step >= 0 && i + step <= last && std::abs(v[i]) > half) i += step;
  return static_cast<std::size_t>(i);
}

void validate_samples(std::span<const Sample> samples, int n_components) {
  if (n_components < 1) {
    throw InvalidParameters("need at least one Gaussian component");
  }
  if (samples.size() < static_cast<std::size_t>(30 * n_components)) {
    throw InvalidParameters("need at least 30 samples per component");
  }
  const bool all_zero = std::all_of(samples.begin(), samples.end(),
                                    [](const Sample& s) { return s.value == 0.0; });
  if (all_zero) throw DegenerateSamples("all sample values are zero");
}

FitResult levenberg_marquardt(std::span<const Sample> samples,
                              const GaussianPulse& init,
                              const FitOptions& options) {
  VectorXd p = pack(init);
  VectorXd r = residuals(samples, p);
  double cost = r.squaredNorm();

  FitReport report;
  report.initial_rms_residual = rms(r);

  double scale = 0.0;
  for (const auto& s : samples) scale = std::max(scale, std::abs(s.value));

  double lambda = 1e-3;
  int iter = 0;
  bool converged = cost == 0.0;
  while (!converged && iter < options.max_iterations) {
    ++iter;
    const MatrixXd j = jacobian(samples, p);
    const MatrixXd jtj = j.transpose() * j;
    const VectorXd g = j.transpose() * r;
    const double diag_floor = 1e-12 * std::max(1.0, jtj.diagonal().maxCoeff());

    bool accepted = false;
    while (!accepted) {
      MatrixXd damped = jtj;
      for (Eigen::Index i = 0; i < damped.rows(); ++i) {
        damped(i, i) += lambda * std::max(jtj(i, i), diag_floor);
      }
      const VectorXd step = damped.ldlt().solve(-g);
      const VectorXd trial = p + step;
      double trial_cost = std::numeric_limits<double>::infinity();
      VectorXd trial_r;
      if (step.allFinite() && widths_positive(trial)) {
        trial_r = residuals(samples, trial);
        trial_cost = trial_r.squaredNorm();
      }
      if (std::isfinite(trial_cost) && trial_cost < cost) {
        const double relative_change = (cost - trial_cost) / cost;
        p = trial;
        r = std::move(trial_r);
        cost = trial_cost;
        lambda = std::max(lambda / 10.0, 1e-15);
        accepted = true;
        if (relative_change < options.relative_tolerance ||
            step.norm() <= options.relative_tolerance * (p.norm() + 1e-10) ||
            rms(r) <= 1e-12 * scale) {
          converged = true;
        }
      } else {
        lambda *= 10.0;
        if (lambda > 1e16) {
          // No descent direction left: a stationary point.
          converged = true;
          break;
        }
      }
    }
  }

  // Canonical order: largest |zeta| first.
  std::vector<GaussianComponent> comps = unpack(p).components();
  std::stable_sort(comps.begin(), comps.end(),
                   [](const GaussianComponent& a, const GaussianComponent& b) {
                     return std::abs(a.zeta) > std::abs(b.zeta);
                   });
  FitResult out{GaussianPulse(std::move(comps)), report};
  out.report.rms_residual = rms(r);
  out.report.max_residual = r.cwiseAbs().maxCoeff();
  out.report.iterations = iter;
  out.report.converged = converged;
  double peak = 0.0;
  for (const auto& s : samples) peak = std::max(peak, std::abs(out.pulse(s.t)));
  out.report.peak_amplitude = peak;
  return out;
}

}  // namespace

GaussianPulse initial_guess(std::span<const Sample> samples, int n_components) {
  validate_samples(samples, n_components);
  const double span = samples.back().t - samples.front().t;
  std::vector<double> values(samples.size());
  std::transform(samples.begin(), samples.end(), values.begin(),
                 [](const Sample& s) { return s.value; });

  std::vector<GaussianComponent> comps;
  const std::size_t peak = argmax_abs(values);
  comps.push_back({values[peak], samples[peak].t, 0.2 * span});
  if (n_components == 1) return GaussianPulse(std::move(comps));

  // Second component on the broader half-maximum shoulder.
  const std::size_t left = half_max_index(values, peak, -1);
  const std::size_t right = half_max_index(values, peak, +1);
  const std::size_t shoulder = (peak - left) >= (right - peak) ? left : right;
  comps.push_back({values[shoulder], samples[shoulder].t, 0.2 * span});
  GaussianPulse guess(comps);

  // Further components are added one at a time on the largest residual of
  // the fit so far, with widths from the residual's half-width.
  for (int k = 2; k < n_components; ++k) {
    const FitResult partial = levenberg_marquardt(samples, guess, FitOptions{});
    std::vector<double> residual(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      residual[i] = samples[i].value - partial.pulse(samples[i].t);
    }
    const std::size_t at = argmax_abs(residual);
    const std::size_t lo = half_max_index(residual, at, -1);
    const std::size_t hi = half_max_index(residual, at, +1);
    const double half_width =
        0.5 * (samples[hi].t - samples[lo].t) / std::sqrt(std::log(2.0));
    std::vector<GaussianComponent> next = partial.pulse.components();
    next.push_back({residual[at], samples[at].t,
                    std::max(half_width, 1e-3 * span)});
    guess = GaussianPulse(std::move(next));
  }
  return guess;
}

FitResult fit_gaussian_sum(std::span<const Sample> samples, int n_components,
                           std::optional<GaussianPulse> init,
                           const FitOptions& options) {
  validate_samples(samples, n_components);
  if (init && init->size() != static_cast<std::size_t>(n_components)) {
    throw InvalidParameters("init must carry exactly n_components components");
  }
  const GaussianPulse start = init ? *init : initial_guess(samples, n_components);
  return levenberg_marquardt(samples, start, options);
}

double pulse_amplitude(const GaussianPulse& p1, const GaussianPulse& p2,
                       double duration, int grid) {
  if (grid < 100) throw InvalidParameters("pulse_amplitude grid must be >= 100");
  double peak = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double t = duration * i / (grid - 1);
    peak = std::max({peak, std::abs(p1(t)), std::abs(p2(t))});
  }
  return peak;
}

FittedProtocol fit_protocol(const StaProtocol& protocol, int n_components,
                            int sample_count, const FitOptions& options) {
  const double T = protocol.duration();
  const auto s1 = sample_uniform([&](double t) { return protocol.omega1(t); },
                                 T, sample_count);
  const auto s2 = sample_uniform([&](double t) { return protocol.omega2(t); },
                                 T, sample_count);
  FittedProtocol out;
  out.pulse1 = fit_gaussian_sum(s1, n_components, std::nullopt, options);
  out.pulse2 = fit_gaussian_sum(s2, n_components, std::nullopt, options);
  out.omega_tilde_0 =
      pulse_amplitude(out.pulse1.pulse, out.pulse2.pulse, T, sample_count);
  return out;
}

}  // namespace stalambda
