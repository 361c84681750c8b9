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

#include "stalambda/io.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "stalambda/error.hpp"

namespace stalambda {

std::string format_number(double value) {
  if (value == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void DataTable::write_csv(std::ostream& os) const {
  for (std::size_t c = 0; c < columns.size(); ++c) {
    os << (c ? "," : "") << columns[c];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "") << format_number(row[c]);
    }
    os << '\n';
  }
}

nlohmann::json DataTable::to_json() const {
  nlohmann::json rows_json = nlohmann::json::array();
  for (const auto& row : rows) rows_json.push_back(row);
  return {{"columns", columns}, {"rows", rows_json}};
}

DataTable trajectory_table(const Trajectory& trajectory) {
  DataTable table{{"t_over_T", "P1", "P2", "P3"}, {}};
  table.rows.reserve(trajectory.samples.size());
  for (const auto& s : trajectory.samples) {
    table.rows.push_back({s.t / trajectory.time_unit, s.populations[0],
                          s.populations[1], s.populations[2]});
  }
  return table;
}

DataTable sweep_table(const std::string& x_name, const std::string& y_name,
                      const std::vector<SweepPoint>& points) {
  DataTable table{{x_name, y_name}, {}};
  for (const auto& p : points) table.rows.push_back({p.x, p.y});
  return table;
}

DataTable map_table(const std::string& name1, const std::string& name2,
                    const DecoherenceMap& map) {
  DataTable table{{name1, name2, "P3"}, {}};
  const std::size_t n = map.ratios.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table.rows.push_back({map.ratios[i], map.ratios[j], map.value(i, j)});
    }
  }
  return table;
}

DataTable table_one_table(const std::vector<TableRow>& rows, double duration) {
  DataTable table{{"phiT_over_pi", "omega_tilde_0_T", "P2max"}, {}};
  for (const auto& r : rows) {
    table.rows.push_back({static_cast<double>(r.m), r.omega_tilde_0 * duration,
                          r.p2_max});
  }
  return table;
}

std::string table_one_text(const std::vector<TableRow>& rows, double duration) {
  std::ostringstream os;
  os << std::left << std::setw(12) << "|phi(T)|" << std::setw(16)
     << "Omega~_0" << "P2max\n";
  os << std::string(36, '-') << '\n';
  for (const auto& r : rows) {
    std::ostringstream phase, amp, p2;
    phase << (r.m == 1 ? "" : std::to_string(r.m)) << "pi";
    amp << std::fixed << std::setprecision(1) << r.omega_tilde_0 * duration
        << "/T";
    p2 << std::fixed << std::setprecision(4) << r.p2_max;
    os << std::setw(12) << phase.str() << std::setw(16) << amp.str()
       << p2.str() << (r.flagged ? "  *" : "") << '\n';
  }
  return os.str();
}

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory) {
  trajectory_table(trajectory).write_csv(os);
}

nlohmann::json protocol_to_json(const ProtocolParams& p) {
  nlohmann::json doc{{"type", p.type}, {"T", p.duration}};
  if (p.type == "sta") {
    const double kappa = p.resolved_kappa();
    doc["m"] = p.m;
    doc["kappa"] = kappa;
    doc["mu"] = std::acos(1.0 - kappa);
  } else {
    doc["omega0"] = p.omega0;
    doc["t0"] = p.t0;
    doc["tc"] = p.tc;
  }
  return doc;
}

ProtocolParams protocol_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("protocol document must be an object");
  ProtocolParams p;
  try {
    p.type = doc.value("type", std::string("sta"));
    if (p.type != "sta" && p.type != "stirap") {
      throw ConfigError("protocol type must be 'sta' or 'stirap'");
    }
    p.duration = doc.value("T", 1.0);
    p.m = doc.value("m", 1);
    p.kappa = doc.value("kappa", 0.0);
    p.mu = doc.value("mu", 0.0);
    p.omega0 = doc.value("omega0", 45.0 / p.duration);
    p.t0 = doc.value("t0", 0.15 * p.duration);
    p.tc = doc.value("tc", 0.20 * p.duration);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed protocol document: ") + e.what());
  }
  return p;
}

nlohmann::json pulse_to_json(const GaussianPulse& pulse, double duration) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : pulse.components()) {
    comps.push_back({{"zeta", c.zeta * duration},
                     {"tau", c.tau / duration},
                     {"chi", c.chi / duration}});
  }
  return {{"components", comps}};
}

GaussianPulse pulse_from_json(const nlohmann::json& doc, double duration) {
  try {
    std::vector<GaussianComponent> comps;
    for (const auto& c : doc.at("components")) {
      comps.push_back({c.at("zeta").get<double>() / duration,
                       c.at("tau").get<double>() * duration,
                       c.at("chi").get<double>() * duration});
    }
    return GaussianPulse(std::move(comps));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed pulse document: ") + e.what());
  }
}

nlohmann::json report_to_json(const FitReport& r, double duration) {
  return {{"rms_residual", r.rms_residual * duration},
          {"max_residual", r.max_residual * duration},
          {"initial_rms_residual", r.initial_rms_residual * duration},
          {"peak_amplitude", r.peak_amplitude * duration},
          {"iterations", r.iterations},
          {"converged", r.converged}};
}

}  // namespace stalambda
