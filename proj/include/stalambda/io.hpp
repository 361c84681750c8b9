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

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "stalambda/analysis.hpp"
#include "stalambda/dynamics.hpp"
#include "stalambda/protocol.hpp"
#include "stalambda/pulse_fit.hpp"

namespace stalambda {

/// 12 significant digits, locale-independent.
std::string format_number(double value);

/// Rectangular numeric table with named columns; the common shape of every
/// data file the CLI writes.
struct DataTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void write_csv(std::ostream& os) const;
  nlohmann::json to_json() const;
};

/// Columns t_over_T,P1,P2,P3.
DataTable trajectory_table(const Trajectory& trajectory);

/// Columns <x_name>,<y_name>.
DataTable sweep_table(const std::string& x_name, const std::string& y_name,
                      const std::vector<SweepPoint>& points);

/// Columns <name1>,<name2>,P3 in row-major grid order.
DataTable map_table(const std::string& name1, const std::string& name2,
                    const DecoherenceMap& map);

/// Columns phiT_over_pi,omega_tilde_0_T,P2max.
DataTable table_one_table(const std::vector<TableRow>& rows, double duration = 1.0);

/// Aligned plain-text rendering with the same three columns.
std::string table_one_text(const std::vector<TableRow>& rows, double duration = 1.0);

void write_trajectory_csv(std::ostream& os, const Trajectory& trajectory);

nlohmann::json protocol_to_json(const ProtocolParams& params);
/// Missing fields take the design defaults; t0 and tc default to 0.15 T and
/// 0.2 T of the document's own T. Throws ConfigError on malformed input.
ProtocolParams protocol_from_json(const nlohmann::json& doc);

/// Values in units of 1/T (zeta) and T (tau, chi).
nlohmann::json pulse_to_json(const GaussianPulse& pulse, double duration = 1.0);
GaussianPulse pulse_from_json(const nlohmann::json& doc, double duration = 1.0);

nlohmann::json report_to_json(const FitReport& report, double duration = 1.0);

}  // namespace stalambda
