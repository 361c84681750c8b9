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

#include "stalambda/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "stalambda/error.hpp"
#include "stalambda/protocol.hpp"

namespace stalambda {

std::string to_string(SweepQuantity q) {
  switch (q) {
    case SweepQuantity::timing_error:
      return "timing-error";
    case SweepQuantity::amp1_error:
      return "amp1-error";
    case SweepQuantity::amp2_error:
      return "amp2-error";
    case SweepQuantity::stirap_amplitude:
      return "stirap-amplitude";
    case SweepQuantity::relaxation_pair:
      return "relaxation-pair";
    case SweepQuantity::dephasing_pair:
      return "dephasing-pair";
  }
  return "unknown";
}

SweepQuantity parse_sweep_quantity(const std::string& tag) {
  for (auto q : {SweepQuantity::timing_error, SweepQuantity::amp1_error,
                 SweepQuantity::amp2_error, SweepQuantity::stirap_amplitude,
                 SweepQuantity::relaxation_pair, SweepQuantity::dephasing_pair}) {
    if (to_string(q) == tag) return q;
  }
  throw ConfigError("unknown sweep quantity '" + tag + "'");
}

std::string to_string(DecoherenceMode mode) {
  return mode == DecoherenceMode::relaxation ? "relaxation" : "dephasing";
}

void SweepSpec::validate() const {
  if (points < 2) throw InvalidParameters("sweep needs at least 2 points");
  if (!(min < max)) throw InvalidParameters("sweep needs min < max");
}

std::vector<double> SweepSpec::grid() const {
  validate();
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    // Pin the end points so symmetric grids contain exact +-range.
    out[i] = i == points - 1 ? max : min + (max - min) * i / (points - 1);
  }
  return out;
}

void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

double peak_amplitude(const PulsePair& pulses, double duration) {
  double peak = 0.0;
  constexpr int kGrid = 1001;
  for (int i = 0; i < kGrid; ++i) {
    const double t = duration * i / (kGrid - 1);
    peak = std::max({peak, std::abs(pulses.omega1(t)), std::abs(pulses.omega2(t))});
  }
  return peak;
}

PulsePair sta_fit_pulses(int m, int components, double duration) {
  const FittedProtocol fit = fit_protocol(design_sta(m, duration), components);
  return make_pulses(fit.pulse1.pulse, fit.pulse2.pulse);
}

namespace {

double final_p3(const PulsePair& pulses, double horizon, int steps) {
  PropagationOptions opts;
  opts.steps = steps;
  opts.stride = steps;
  return propagate_schrodinger(pulses, basis_state(1), horizon, opts)
      .final_population(3);
}

std::vector<double> symmetric_grid(double range, int points) {
  return SweepSpec{SweepQuantity::timing_error, -range, range, points}.grid();
}

template <typename F>
std::vector<SweepPoint> sweep(std::span<const double> xs, int jobs, F&& eval) {
  std::vector<SweepPoint> out(xs.size());
  parallel_for(xs.size(), jobs, [&](std::size_t i) { out[i] = {xs[i], eval(xs[i])}; });
  return out;
}

}  // namespace

double timing_error_point(const PulsePair& pulses, double delta,
                          const AnalysisOptions& options) {
  const double horizon = options.duration * (1.0 + delta);
  if (horizon <= 0.0) return 0.0;
  return final_p3(pulses, horizon, options.steps);
}

std::vector<SweepPoint> timing_error_sweep(const PulsePair& pulses,
                                           double range, int points,
                                           const AnalysisOptions& options) {
  if (!(range > 0.0 && range <= 0.2)) {
    throw InvalidParameters("timing error range must lie in (0, 0.2]");
  }
  const auto xs = symmetric_grid(range, points);
  return sweep(xs, options.jobs,
               [&](double d) { return timing_error_point(pulses, d, options); });
}

double amplitude_error_point(const PulsePair& pulses, int which, double delta,
                             const AnalysisOptions& options) {
  if (which != 1 && which != 2) {
    throw InvalidParameters("pulse index must be 1 or 2");
  }
  PulsePair scaled = pulses;
  const double factor = 1.0 + delta;
  auto& target = which == 1 ? scaled.omega1 : scaled.omega2;
  target = [inner = target, factor](double t) { return factor * inner(t); };
  return final_p3(scaled, options.duration, options.steps);
}

std::vector<SweepPoint> amplitude_error_sweep(const PulsePair& pulses,
                                              int which, double range,
                                              int points,
                                              const AnalysisOptions& options) {
  if (!(range > 0.0)) throw InvalidParameters("range must be positive");
  const auto xs = symmetric_grid(range, points);
  return sweep(xs, options.jobs, [&](double d) {
    return amplitude_error_point(pulses, which, d, options);
  });
}

std::vector<SweepPoint> stirap_infidelity_curve(
    double t0, double tc, double duration, std::span<const double> amplitudes,
    const AnalysisOptions& options) {
  for (double a : amplitudes) {
    if (!(a > 0.0)) throw InvalidParameters("STIRAP amplitudes must be > 0");
  }
  return sweep(amplitudes, options.jobs, [&](double omega0) {
    const PulsePair pulses = make_pulses(design_stirap(omega0, t0, tc, duration));
    return 1.0 - final_p3(pulses, duration, options.steps);
  });
}

double DecoherenceMap::min() const {
  return *std::min_element(p3.begin(), p3.end());
}

DecoherenceMap decoherence_map(const PulsePair& pulses, DecoherenceMode mode,
                               double max_ratio, int grid,
                               const AnalysisOptions& options) {
  if (!(max_ratio > 0.0 && max_ratio <= 0.05)) {
    throw InvalidParameters("max_ratio must lie in (0, 0.05]");
  }
  if (grid < 2) throw InvalidParameters("grid must be >= 2");

  DecoherenceMap out;
  out.mode = mode;
  out.omega_tilde_0 = peak_amplitude(pulses, options.duration);
  out.ratios.resize(grid);
  for (int i = 0; i < grid; ++i) {
    out.ratios[i] = i == grid - 1 ? max_ratio : max_ratio * i / (grid - 1);
  }
  const std::size_t cells = static_cast<std::size_t>(grid) * grid;
  out.p3.assign(cells, 0.0);
  std::vector<double> trace_drift(cells), herm_error(cells);

  PropagationOptions opts;
  opts.steps = options.steps;
  opts.stride = std::max(1, options.steps / 100);
  const Complex3x3Matrix rho0 = projector(1);

  parallel_for(cells, options.jobs, [&](std::size_t cell) {
    const double r1 = out.ratios[cell / grid] * out.omega_tilde_0;
    const double r2 = out.ratios[cell % grid] * out.omega_tilde_0;
    LindbladRates rates;
    if (mode == DecoherenceMode::relaxation) {
      rates.gamma1 = r1;
      rates.gamma2 = r2;
    } else {
      rates.gamma_phi1 = r1;
      rates.gamma_phi2 = r2;
    }
    const Trajectory tr =
        propagate_lindblad(pulses, rho0, rates, options.duration, opts);
    out.p3[cell] = tr.final_population(3);
    trace_drift[cell] = tr.max_trace_drift;
    herm_error[cell] = tr.max_hermiticity_error;
  });
  out.max_trace_drift = *std::max_element(trace_drift.begin(), trace_drift.end());
  out.max_hermiticity_error =
      *std::max_element(herm_error.begin(), herm_error.end());
  return out;
}

std::vector<TableRow> table_one(int max_m, int fit_budget,
                                const AnalysisOptions& options) {
  if (max_m < 1 || max_m > 10) throw InvalidParameters("max_m must lie in [1, 10]");
  if (fit_budget < 1) throw InvalidParameters("fit budget must be >= 1");

  std::vector<TableRow> rows(max_m);
  parallel_for(rows.size(), options.jobs, [&](std::size_t i) {
    const int m = static_cast<int>(i) + 1;
    const StaProtocol protocol = design_sta(m, options.duration);
    TableRow row;
    row.m = m;
    row.components = fit_budget * m;
    row.p2_max = protocol.p2_max();
    const FittedProtocol fit = fit_protocol(protocol, row.components);
    row.omega_tilde_0 = fit.omega_tilde_0;
    row.fit_converged = fit.pulse1.report.converged && fit.pulse2.report.converged;
    row.infidelity =
        1.0 - final_p3(make_pulses(fit.pulse1.pulse, fit.pulse2.pulse),
                       options.duration, options.steps);
    row.flagged = !row.fit_converged || row.infidelity > 1e-3;
    rows[i] = row;
  });
  return rows;
}

double stirap_dephasing_check(double omega0, double ratio,
                              const AnalysisOptions& options) {
  const double T = options.duration;
  const PulsePair pulses = make_pulses(design_stirap(omega0, 0.15 * T, 0.2 * T, T));
  LindbladRates rates;
  rates.gamma_phi1 = ratio * omega0;
  rates.gamma_phi2 = ratio * omega0;
  PropagationOptions opts;
  opts.steps = options.steps;
  opts.stride = options.steps;
  return propagate_lindblad(pulses, projector(1), rates, T, opts)
      .final_population(3);
}

}  // namespace stalambda
