// beamscan - phased-array channel sounding simulator and tensor analysis tools
// Copyright (C) 2026 beamscan contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef BEAMSCAN_IO_HPP
#define BEAMSCAN_IO_HPP

#include "beamscan/channel.hpp"
#include "beamscan/segment.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace beamscan {

inline constexpr const char *kVersion = "0.1.0";

/// Shortest round-trip decimal form, '.' decimal point, no locale.
std::string format_double(double v);

/// Factor table CSV: header names the component, complex values are two
/// adjacent columns (re, im); one row per mode index.
void write_factor_csv(const std::string &path, const Eigen::MatrixXcd &m);
Eigen::MatrixXcd read_factor_csv(const std::string &path);

/// Plain real matrix, one CSV row per matrix row, no header.
void write_real_csv(const std::string &path, const Eigen::MatrixXd &m);

void write_segments_csv(const std::string &path,
                        const std::vector<TrajectorySegment> &segs,
                        double scan_period_s);

nlohmann::json scenario_to_json(const Scenario &sc);
Scenario scenario_from_json(const nlohmann::json &j);

Scenario load_scenario(const std::string &path);
void save_scenario(const std::string &path, const Scenario &sc);

/// Writes j with sorted keys, two-space indent and a trailing newline,
/// so identical content is byte-identical on disk.
void write_json(const std::string &path, const nlohmann::json &j);

} // namespace beamscan

#endif // BEAMSCAN_IO_HPP
