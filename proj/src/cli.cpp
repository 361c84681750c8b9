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

#include "stalambda/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>

#include <CLI11.hpp>

#include "stalambda/analysis.hpp"
#include "stalambda/error.hpp"
#include "stalambda/io.hpp"

namespace stalambda::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Visits every config field as (json key, flag spec, help, field).
template <typename Config, typename F>
void for_each_field(Config& c, F&& f) {
  f("protocol", "--protocol", "pulse family: sta | sta-fit | stirap", c.protocol);
  f("m", "--m", "winding: phi(T) = m pi", c.m);
  f("kappa", "--kappa", "override kappa = 1 - cos(mu); 0 means 1/(2m)", c.kappa);
  f("T", "-T,--duration", "total interaction time", c.duration);
  f("omega0", "--omega0", "STIRAP amplitude (1/T)", c.omega0);
  f("t0", "--t0", "STIRAP delay (T)", c.t0);
  f("tc", "--tc", "STIRAP width (T)", c.tc);
  f("steps", "--steps", "solver steps per run", c.steps);
  f("stride", "--stride", "trajectory sampling stride", c.stride);
  f("components", "--components", "Gaussian components per pulse per unit winding", c.components);
  f("gamma1", "--gamma1", "relaxation rate 2->1 (1/T)", c.gamma1);
  f("gamma2", "--gamma2", "relaxation rate 2->3 (1/T)", c.gamma2);
  f("gamma_phi1", "--gamma-phi1", "dephasing rate 2-1 (1/T)", c.gamma_phi1);
  f("gamma_phi2", "--gamma-phi2", "dephasing rate 2-3 (1/T)", c.gamma_phi2);
  f("quantity", "--quantity", "swept quantity", c.quantity);
  f("range", "--range", "relative error range for 1-D sweeps", c.range);
  f("points", "--points", "sweep point count (0: command default)", c.points);
  f("omega_min", "--omega-min", "smallest STIRAP amplitude (1/T)", c.omega_min);
  f("omega_max", "--omega-max", "largest STIRAP amplitude (1/T)", c.omega_max);
  f("max_ratio", "--max-ratio", "largest rate / Omega~_0 in decoherence maps", c.max_ratio);
  f("grid", "--grid", "decoherence map grid size per axis", c.grid);
  f("max_m", "--max-m", "last winding in table1", c.max_m);
  f("jobs", "--jobs", "worker threads for sweeps", c.jobs);
  f("output_dir", "-o,--out", "output directory", c.output_dir);
  f("format", "--format", "data file format: csv | json", c.format);
}

const std::vector<std::pair<std::string, std::string>> kCommands = {
    {"design", "pulse schedules and protocol parameters"},
    {"fit", "Gaussian-sum fit of the STA pulses"},
    {"simulate", "closed-system trajectory"},
    {"lindblad", "open-system trajectory"},
    {"sweep", "one sweep of a single quantity"},
    {"stirap-curve", "STIRAP infidelity versus amplitude"},
    {"table1", "pulse amplitude and P2max per winding"},
    {"fig1", "exact versus fitted pulses"},
    {"fig2", "populations for windings 1, 2, 3"},
    {"fig3", "STIRAP infidelity curve"},
    {"fig4", "parameter-error robustness"},
    {"fig5", "decoherence robustness maps"},
};

double kappa_of(const RunConfig& c) {
  return c.kappa > 0.0 ? c.kappa : 1.0 / (2.0 * c.m);
}

StaProtocol sta_protocol(const RunConfig& c) {
  return StaProtocol(c.m, kappa_of(c), c.duration);
}

StirapProtocol stirap_protocol(const RunConfig& c) {
  const double T = c.duration;
  return design_stirap(c.omega0 / T, c.t0 * T, c.tc * T, T);
}

PulsePair pulses_for(const RunConfig& c, int m) {
  if (c.protocol == "stirap") return make_pulses(stirap_protocol(c));
  RunConfig at = c;
  at.m = m;
  const StaProtocol p = sta_protocol(at);
  if (c.protocol == "sta") return make_pulses(p);
  const FittedProtocol fit = fit_protocol(p, c.components * m);
  return make_pulses(fit.pulse1.pulse, fit.pulse2.pulse);
}

AnalysisOptions analysis_options(const RunConfig& c) {
  return {c.steps, c.jobs, c.duration};
}

class Writer {
 public:
  Writer(const RunConfig& config, std::ostream& log)
      : config_(config), log_(log) {
    fs::create_directories(config.output_dir);
  }

  void table(const std::string& stem, const DataTable& t) {
    if (config_.format == "json") {
      text(stem + ".json", t.to_json().dump(2) + "\n");
    } else {
      std::ostringstream os;
      t.write_csv(os);
      text(stem + ".csv", os.str());
    }
  }

  void document(const std::string& name, const json& doc) {
    text(name, doc.dump(2) + "\n");
  }

  void text(const std::string& name, const std::string& body) {
    const fs::path path = fs::path(config_.output_dir) / name;
    std::ofstream os(path, std::ios::binary);
    os << body;
    if (!os) throw ComputationError("failed to write " + path.string());
    written_.push_back(name);
    log_ << "wrote " << path.string() << '\n';
  }

  std::vector<std::string> finish() {
    json manifest{{"tool", kToolName},
                  {"version", kToolVersion},
                  {"command", config_.command},
                  {"config", to_json(config_)},
                  {"steps", config_.steps},
                  {"outputs", written_}};
    text("manifest.json", manifest.dump(2) + "\n");
    return written_;
  }

 private:
  const RunConfig& config_;
  std::ostream& log_;
  std::vector<std::string> written_;
};

PropagationOptions propagation(const RunConfig& c) {
  PropagationOptions o;
  o.steps = c.steps;
  o.stride = c.stride;
  o.time_unit = c.duration;
  return o;
}

json trajectory_summary(const Trajectory& tr) {
  const auto& last = tr.final_sample();
  return {{"P1", last.populations[0]},
          {"P2", last.populations[1]},
          {"P3", last.populations[2]},
          {"infidelity", 1.0 - last.populations[2]},
          {"steps", tr.steps},
          {"max_norm_drift", tr.max_norm_drift},
          {"max_trace_drift", tr.max_trace_drift},
          {"max_hermiticity_error", tr.max_hermiticity_error},
          {"min_eigenvalue", tr.min_eigenvalue}};
}

void cmd_design(const RunConfig& c, Writer& w) {
  const double T = c.duration;
  constexpr int kGrid = 1001;
  DataTable t;
  json doc;
  if (c.protocol == "stirap") {
    const StirapProtocol p = stirap_protocol(c);
    t.columns = {"t_over_T", "Omega1_T", "Omega2_T"};
    for (int i = 0; i < kGrid; ++i) {
      const double t_ = T * i / (kGrid - 1);
      t.rows.push_back({t_ / T, p.omega1(t_) * T, p.omega2(t_) * T});
    }
    doc = {{"type", "stirap"}, {"T", T}, {"omega0", c.omega0}, {"t0", c.t0}, {"tc", c.tc}};
  } else {
    const StaProtocol p = sta_protocol(c);
    t.columns = {"t_over_T", "phi", "theta", "Omega_T", "Omega1_T", "Omega2_T"};
    double peak = 0.0;
    for (int i = 0; i < kGrid; ++i) {
      const double t_ = T * i / (kGrid - 1);
      t.rows.push_back({t_ / T, p.phi(t_), p.theta(t_), p.omega(t_) * T,
                        p.omega1(t_) * T, p.omega2(t_) * T});
      peak = std::max(peak, p.omega(t_) * T);
    }
    doc = {{"type", "sta"},      {"T", T},
           {"m", p.winding()},   {"kappa", p.kappa()},
           {"mu", p.mu()},       {"P2max", p.p2_max()},
           {"max_Omega_T", peak}};
  }
  w.table("pulses", t);
  w.document("protocol.json", doc);
}

void cmd_fit(const RunConfig& c, Writer& w, std::ostream& log) {
  const StaProtocol p = sta_protocol(c);
  const FittedProtocol fit = fit_protocol(p, c.components * c.m);
  const double T = c.duration;
  w.document("pulse1.json", pulse_to_json(fit.pulse1.pulse, T));
  w.document("pulse2.json", pulse_to_json(fit.pulse2.pulse, T));
  w.document("fit_report.json", {{"pulse1", report_to_json(fit.pulse1.report, T)},
                                 {"pulse2", report_to_json(fit.pulse2.report, T)},
                                 {"omega_tilde_0_T", fit.omega_tilde_0 * T}});
  log << "Omega~_0 = " << format_number(fit.omega_tilde_0 * T) << "/T\n";
}

void cmd_simulate(const RunConfig& c, Writer& w, std::ostream& log) {
  const Trajectory tr = propagate_schrodinger(pulses_for(c, c.m), basis_state(1),
                                              c.duration, propagation(c));
  w.table("trajectory", trajectory_table(tr));
  w.document("summary.json", trajectory_summary(tr));
  log << "P3(T) = " << format_number(tr.final_population(3)) << '\n';
}

void cmd_lindblad(const RunConfig& c, Writer& w, std::ostream& log) {
  const double T = c.duration;
  const LindbladRates rates{c.gamma1 / T, c.gamma2 / T, c.gamma_phi1 / T,
                            c.gamma_phi2 / T};
  const Trajectory tr = propagate_lindblad(pulses_for(c, c.m), projector(1), rates,
                                           T, propagation(c));
  if (tr.positivity_warning()) {
    log << "warning: density eigenvalue " << format_number(tr.min_eigenvalue)
        << " below -1e-7\n";
  }
  w.table("trajectory", trajectory_table(tr));
  w.document("summary.json", trajectory_summary(tr));
  log << "P3(T) = " << format_number(tr.final_population(3)) << '\n';
}

std::vector<double> amplitude_grid(const RunConfig& c, int points) {
  std::vector<double> out(points);
  for (int i = 0; i < points; ++i) {
    const double x = i == points - 1
                         ? c.omega_max
                         : c.omega_min + (c.omega_max - c.omega_min) * i / (points - 1);
    out[i] = x / c.duration;
  }
  return out;
}

DataTable stirap_curve_table(const RunConfig& c, int points) {
  const double T = c.duration;
  const auto amps = amplitude_grid(c, points);
  auto curve = stirap_infidelity_curve(c.t0 * T, c.tc * T, T, amps, analysis_options(c));
  for (auto& p : curve) p.x *= T;
  return sweep_table("omega0_T", "infidelity", curve);
}

DecoherenceMap map_for(const RunConfig& c, const PulsePair& pulses,
                       DecoherenceMode mode) {
  return decoherence_map(pulses, mode, c.max_ratio, c.grid, analysis_options(c));
}

void cmd_sweep(const RunConfig& c, Writer& w) {
  const SweepQuantity q = parse_sweep_quantity(c.quantity);
  const int points = c.points > 0 ? c.points : 21;
  const AnalysisOptions opts = analysis_options(c);
  switch (q) {
    case SweepQuantity::timing_error:
      w.table("sweep", sweep_table("dT_over_T", "P3",
                                   timing_error_sweep(pulses_for(c, c.m), c.range,
                                                      points, opts)));
      break;
    case SweepQuantity::amp1_error:
    case SweepQuantity::amp2_error: {
      const int which = q == SweepQuantity::amp1_error ? 1 : 2;
      const std::string name = which == 1 ? "dOmega1_over_Omega1" : "dOmega2_over_Omega2";
      w.table("sweep", sweep_table(name, "P3",
                                   amplitude_error_sweep(pulses_for(c, c.m), which,
                                                         c.range, points, opts)));
      break;
    }
    case SweepQuantity::stirap_amplitude: {
      DataTable t = stirap_curve_table(c, c.points > 0 ? c.points : 50);
      for (auto& row : t.rows) row[1] = 1.0 - row[1];
      t.columns = {"omega0_T", "P3"};
      w.table("sweep", t);
      break;
    }
    case SweepQuantity::relaxation_pair:
      w.table("sweep", map_table("Gamma1_over_Omega0", "Gamma2_over_Omega0",
                                 map_for(c, pulses_for(c, c.m),
                                         DecoherenceMode::relaxation)));
      break;
    case SweepQuantity::dephasing_pair:
      w.table("sweep", map_table("Gammaphi1_over_Omega0", "Gammaphi2_over_Omega0",
                                 map_for(c, pulses_for(c, c.m),
                                         DecoherenceMode::dephasing)));
      break;
  }
}

void cmd_table1(const RunConfig& c, Writer& w, std::ostream& log) {
  const auto rows = table_one(c.max_m, c.components, analysis_options(c));
  w.table("table1", table_one_table(rows, c.duration));
  const std::string text = table_one_text(rows, c.duration);
  w.text("table1.txt", text);
  log << text;
}

void cmd_fig1(const RunConfig& c, Writer& w) {
  const StaProtocol p = sta_protocol(c);
  const FittedProtocol fit = fit_protocol(p, c.components * c.m);
  const double T = c.duration;
  DataTable t{{"t_over_T", "abs_Omega1_T", "abs_Omega1_fit_T", "Omega2_T",
               "Omega2_fit_T"},
              {}};
  constexpr int kGrid = 1001;
  for (int i = 0; i < kGrid; ++i) {
    const double t_ = T * i / (kGrid - 1);
    t.rows.push_back({t_ / T, std::abs(p.omega1(t_)) * T,
                      std::abs(fit.pulse1.pulse(t_)) * T, p.omega2(t_) * T,
                      fit.pulse2.pulse(t_) * T});
  }
  w.table("fig1", t);
}

void cmd_fig2(const RunConfig& c, Writer& w) {
  PropagationOptions o = propagation(c);
  o.stride = std::max(1, c.steps / 100);
  DataTable t{{"t_over_T"}, {}};
  std::vector<Trajectory> runs;
  for (int m = 1; m <= 3; ++m) {
    for (int k = 1; k <= 3; ++k) {
      t.columns.push_back("P" + std::to_string(k) + "_m" + std::to_string(m));
    }
    RunConfig at = c;
    at.kappa = 0.0;
    runs.push_back(propagate_schrodinger(pulses_for(at, m), basis_state(1),
                                         c.duration, o));
  }
  for (std::size_t i = 0; i < runs[0].samples.size(); ++i) {
    std::vector<double> row{runs[0].samples[i].t / c.duration};
    for (const auto& r : runs) {
      for (double pop : r.samples[i].populations) row.push_back(pop);
    }
    t.rows.push_back(std::move(row));
  }
  w.table("fig2", t);
}

void cmd_fig4(const RunConfig& c, Writer& w) {
  const PulsePair pulses = pulses_for(c, c.m);
  const int points = c.points > 0 ? c.points : 21;
  const AnalysisOptions opts = analysis_options(c);
  const auto a1 = amplitude_error_sweep(pulses, 1, c.range, points, opts);
  const auto a2 = amplitude_error_sweep(pulses, 2, c.range, points, opts);
  const auto tt = timing_error_sweep(pulses, c.range, points, opts);
  DataTable t{{"relative_error", "P3_amp1", "P3_amp2", "P3_timing"}, {}};
  for (std::size_t i = 0; i < a1.size(); ++i) {
    t.rows.push_back({a1[i].x, a1[i].y, a2[i].y, tt[i].y});
  }
  w.table("fig4", t);
}

void cmd_fig5(const RunConfig& c, Writer& w) {
  const PulsePair pulses = pulses_for(c, c.m);
  w.table("fig5a", map_table("Gamma1_over_Omega0", "Gamma2_over_Omega0",
                             map_for(c, pulses, DecoherenceMode::relaxation)));
  w.table("fig5b", map_table("Gammaphi1_over_Omega0", "Gammaphi2_over_Omega0",
                             map_for(c, pulses, DecoherenceMode::dephasing)));
}

template <typename T>
void require(bool ok, const std::string& key, const T& value,
             const std::string& rule) {
  if (!ok) {
    std::ostringstream msg;
    msg << key << " = " << value << ": " << rule;
    throw ConfigError(msg.str());
  }
}

}  // namespace

json to_json(const RunConfig& config) {
  json doc = json::object();
  for_each_field(config, [&](const char* key, const char*, const char*,
                             const auto& field) { doc[key] = field; });
  return doc;
}

RunConfig overlay(RunConfig base, const json& doc_in) {
  const json& doc = doc_in.contains("config") ? doc_in.at("config") : doc_in;
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  for (const auto& item : doc.items()) {
    bool known = false;
    for_each_field(base, [&](const char* key, const char*, const char*, auto& field) {
      if (item.key() != key) return;
      known = true;
      try {
        field = item.value().get<std::decay_t<decltype(field)>>();
      } catch (const json::exception& e) {
        throw ConfigError("config key '" + item.key() + "': " + e.what());
      }
    });
    if (!known) throw ConfigError("unknown config key '" + item.key() + "'");
  }
  return base;
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, help] : kCommands) out.push_back(name);
    return out;
  }();
  return names;
}

void validate(const RunConfig& c) {
  const auto& names = commands();
  require(std::find(names.begin(), names.end(), c.command) != names.end(),
          "command", c.command, "unknown command");
  require(c.protocol == "sta" || c.protocol == "sta-fit" || c.protocol == "stirap",
          "protocol", c.protocol, "must be sta, sta-fit or stirap");
  require(c.m >= 1 && c.m <= 10, "m", c.m, "must lie in [1, 10]");
  require(c.kappa == 0.0 || (c.kappa > 0.0 && c.kappa < 2.0), "kappa", c.kappa,
          "must be 0 or lie in (0, 2)");
  require(c.duration > 0.0 && std::isfinite(c.duration), "T", c.duration,
          "must be positive");
  require(c.omega0 > 0.0, "omega0", c.omega0, "must be positive");
  require(c.t0 > 0.0 && c.t0 < 0.5, "t0", c.t0, "must lie in (0, 0.5)");
  require(c.tc > 0.0, "tc", c.tc, "must be positive");
  const int min_steps = c.command == "lindblad" || c.command == "fig5" ||
                                (c.command == "sweep" &&
                                 (c.quantity == "relaxation-pair" ||
                                  c.quantity == "dephasing-pair"))
                            ? 1000
                            : 100;
  require(c.steps >= min_steps, "steps", c.steps,
          "must be >= " + std::to_string(min_steps));
  require(c.stride >= 1, "stride", c.stride, "must be >= 1");
  require(c.components >= 1, "components", c.components, "must be >= 1");
  for (auto [key, rate] : {std::pair{"gamma1", c.gamma1}, {"gamma2", c.gamma2},
                           {"gamma_phi1", c.gamma_phi1}, {"gamma_phi2", c.gamma_phi2}}) {
    require(rate >= 0.0 && std::isfinite(rate), key, rate, "must be >= 0");
  }
  parse_sweep_quantity(c.quantity);
  require(c.range > 0.0 && c.range <= 0.2, "range", c.range, "must lie in (0, 0.2]");
  require(c.points == 0 || c.points >= 2, "points", c.points, "must be 0 or >= 2");
  require(c.omega_min > 0.0 && c.omega_min < c.omega_max, "omega_min", c.omega_min,
          "must satisfy 0 < omega_min < omega_max");
  require(c.max_ratio > 0.0 && c.max_ratio <= 0.05, "max_ratio", c.max_ratio,
          "must lie in (0, 0.05]");
  require(c.grid >= 2, "grid", c.grid, "must be >= 2");
  require(c.max_m >= 1 && c.max_m <= 10, "max_m", c.max_m, "must lie in [1, 10]");
  require(c.jobs >= 1, "jobs", c.jobs, "must be >= 1");
  require(c.format == "csv" || c.format == "json", "format", c.format,
          "must be csv or json");
  require(!c.output_dir.empty(), "output_dir", c.output_dir, "must not be empty");
  if (c.command == "fit" || c.command == "fig1") {
    require(c.protocol != "stirap", "protocol", c.protocol,
            "fitting applies to STA protocols only");
  }
}

std::vector<std::string> run(const RunConfig& c, std::ostream& log) {
  validate(c);
  Writer w(c, log);
  const std::string& cmd = c.command;
  if (cmd == "design") {
    cmd_design(c, w);
  } else if (cmd == "fit") {
    cmd_fit(c, w, log);
  } else if (cmd == "simulate") {
    cmd_simulate(c, w, log);
  } else if (cmd == "lindblad") {
    cmd_lindblad(c, w, log);
  } else if (cmd == "sweep") {
    cmd_sweep(c, w);
  } else if (cmd == "stirap-curve" || cmd == "fig3") {
    w.table(cmd == "fig3" ? "fig3" : "stirap_curve",
            stirap_curve_table(c, c.points > 0 ? c.points : 50));
  } else if (cmd == "table1") {
    cmd_table1(c, w, log);
  } else if (cmd == "fig1") {
    cmd_fig1(c, w);
  } else if (cmd == "fig2") {
    cmd_fig2(c, w);
  } else if (cmd == "fig4") {
    cmd_fig4(c, w);
  } else if (cmd == "fig5") {
    cmd_fig5(c, w);
  }
  return w.finish();
}

int main_entry(int argc, const char* const* argv, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Shortcut-to-adiabaticity pulse design and simulation for "
               "three-level Lambda systems"};
  app.require_subcommand(1);

  RunConfig flags;
  std::string config_path;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : kCommands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config or manifest file");
    for_each_field(flags, [&](const char*, const char* spec, const char* desc,
                              auto& field) { sub->add_option(spec, field, desc); });
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config;
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) {
      config.output_dir = dir;
    }
    CLI::App* sub = nullptr;
    for (auto& [name, s] : subs) {
      if (s->parsed()) {
        sub = s;
        config.command = name;
      }
    }
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw ConfigError("cannot open config file " + config_path);
      json doc;
      try {
        doc = json::parse(is);
      } catch (const json::exception& e) {
        throw ConfigError("config file " + config_path + ": " + e.what());
      }
      config = overlay(config, doc);
    }
    json explicit_flags = json::object();
    for_each_field(flags, [&](const char* key, const char* spec, const char*,
                              const auto& field) {
      std::string long_name = spec;
      long_name = long_name.substr(long_name.find("--"));
      if (sub->count(long_name) > 0) explicit_flags[key] = field;
    });
    config = overlay(config, explicit_flags);
    validate(config);
    run(config, out);
    return 0;
  } catch (const ConfigError& e) {
    err << "ConfigError: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "ComputationError: " << e.what() << '\n';
    return 3;
  }
}

}  // namespace stalambda::cli
