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

#include "beamscan/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace beamscan {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string &path) {
  std::ofstream os(path);
  if (!os)
    throw std::runtime_error("cannot open for writing: " + path);
  return os;
}

std::vector<double> split_csv_row(const std::string &line) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ','))
    out.push_back(std::stod(cell));
  return out;
}

} // namespace

void write_factor_csv(const std::string &path, const Eigen::MatrixXcd &m) {
  std::ofstream os = open_out(path);
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    os << (c ? "," : "") << "c" << (c + 1) << "_re,c" << (c + 1) << "_im";
  os << "\n";
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      os << (c ? "," : "") << format_double(m(r, c).real()) << ","
         << format_double(m(r, c).imag());
    os << "\n";
  }
}

Eigen::MatrixXcd read_factor_csv(const std::string &path) {
  std::ifstream is(path);
  if (!is)
    throw std::runtime_error("cannot open: " + path);
  std::string line;
  if (!std::getline(is, line))
    throw std::runtime_error("empty factor CSV: " + path);
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    if (line.empty())
      continue;
    rows.push_back(split_csv_row(line));
  }
  if (rows.empty())
    throw std::runtime_error("factor CSV has no data rows: " + path);
  const std::size_t w = rows.front().size();
  if (w % 2 != 0)
    throw std::runtime_error("factor CSV needs re,im column pairs: " + path);
  Eigen::MatrixXcd m(Eigen::Index(rows.size()), Eigen::Index(w / 2));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != w)
      throw std::runtime_error("ragged factor CSV: " + path);
    for (std::size_t c = 0; c < w / 2; ++c)
      m(Eigen::Index(r), Eigen::Index(c)) = {rows[r][2 * c], rows[r][2 * c + 1]};
  }
  return m;
}

void write_real_csv(const std::string &path, const Eigen::MatrixXd &m) {
  std::ofstream os = open_out(path);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      os << (c ? "," : "") << format_double(m(r, c));
    os << "\n";
  }
}

void write_segments_csv(const std::string &path,
                        const std::vector<TrajectorySegment> &segs,
                        double scan_period_s) {
  std::ofstream os = open_out(path);
  os << "begin_scan,end_scan,begin_s,end_s,state,slope_db_per_s,mean_level_db\n";
  for (const TrajectorySegment &s : segs)
    os << s.begin << "," << s.end << ","
       << format_double(double(s.begin) * scan_period_s) << ","
       << format_double(double(s.end) * scan_period_s) << "," << to_string(s.state)
       << "," << format_double(s.slope_db_per_s) << ","
       << format_double(s.mean_level_db) << "\n";
}

namespace {

nlohmann::json array_to_json(const ArrayConfig &a) {
  return {{"n_elements", a.n_elements},
          {"azimuth_range_deg", a.azimuth_range_deg},
          {"element_spacing", a.element_spacing},
          {"boresight_gain_db", a.boresight_gain_db},
          {"codebook_size", a.codebook_size}};
}

ArrayConfig array_from_json(const nlohmann::json &j) {
  ArrayConfig a;
  a.n_elements = j.value("n_elements", a.n_elements);
  a.azimuth_range_deg = j.value("azimuth_range_deg", a.azimuth_range_deg);
  a.element_spacing = j.value("element_spacing", a.element_spacing);
  a.boresight_gain_db = j.value("boresight_gain_db", a.boresight_gain_db);
  a.codebook_size = j.value("codebook_size", a.codebook_size);
  return a;
}

} // namespace

nlohmann::json scenario_to_json(const Scenario &sc) {
  nlohmann::json paths = nlohmann::json::array();
  for (const PathSpec &p : sc.paths) {
    nlohmann::json events = nlohmann::json::array();
    for (const BlockageEvent &e : p.trajectory.events)
      events.push_back({{"start_s", e.start_s},
                        {"ramp_down_s", e.ramp_down_s},
                        {"hold_s", e.hold_s},
                        {"ramp_up_s", e.ramp_up_s},
                        {"depth_db", e.depth_db}});
    paths.push_back({{"delay_ns", p.delay_ns},
                     {"aod_deg", p.aod_deg},
                     {"aoa_deg", p.aoa_deg},
                     {"gain_db", p.gain_db},
                     {"events", events}});
  }
  return {{"id", sc.id},
          {"n_blockers", sc.n_blockers},
          {"tx_rotation", sc.tx_rotation},
          {"rotation_sweep_deg", sc.rotation_sweep_deg},
          {"paths", paths},
          {"n_scan", sc.n_scan},
          {"scan_period_s", sc.scan_period_s},
          {"n_dly", sc.n_dly},
          {"dwell_s", sc.dwell_s},
          {"noise_floor_db", sc.noise_floor_db},
          {"noise", sc.noise},
          {"pulse_spread", sc.pulse_spread},
          {"seed", sc.seed},
          {"tx_array", array_to_json(sc.tx_array)},
          {"rx_array", array_to_json(sc.rx_array)}};
}

Scenario scenario_from_json(const nlohmann::json &j) {
  Scenario sc;
  sc.id = j.value("id", -1);
  sc.n_blockers = j.value("n_blockers", 0);
  sc.tx_rotation = j.value("tx_rotation", false);
  sc.rotation_sweep_deg = j.value("rotation_sweep_deg", sc.rotation_sweep_deg);
  sc.n_scan = j.value("n_scan", sc.n_scan);
  sc.scan_period_s = j.value("scan_period_s", sc.scan_period_s);
  sc.n_dly = j.value("n_dly", sc.n_dly);
  sc.dwell_s = j.value("dwell_s", sc.dwell_s);
  sc.noise_floor_db = j.value("noise_floor_db", sc.noise_floor_db);
  sc.noise = j.value("noise", true);
  sc.pulse_spread = j.value("pulse_spread", false);
  sc.seed = j.value("seed", std::uint64_t(0));
  if (j.contains("tx_array"))
    sc.tx_array = array_from_json(j.at("tx_array"));
  if (j.contains("rx_array"))
    sc.rx_array = array_from_json(j.at("rx_array"));
  sc.paths.clear();
  for (const auto &pj : j.value("paths", nlohmann::json::array())) {
    PathSpec p;
    p.delay_ns = pj.value("delay_ns", 1);
    p.aod_deg = pj.value("aod_deg", 0.0);
    p.aoa_deg = pj.value("aoa_deg", 0.0);
    p.gain_db = pj.value("gain_db", 0.0);
    for (const auto &ej : pj.value("events", nlohmann::json::array())) {
      BlockageEvent e;
      e.start_s = ej.value("start_s", 0.0);
      e.ramp_down_s = ej.value("ramp_down_s", e.ramp_down_s);
      e.hold_s = ej.value("hold_s", e.hold_s);
      e.ramp_up_s = ej.value("ramp_up_s", e.ramp_up_s);
      e.depth_db = ej.value("depth_db", e.depth_db);
      p.trajectory.events.push_back(e);
    }
    sc.paths.push_back(std::move(p));
  }
  sc.validate();
  return sc;
}

Scenario load_scenario(const std::string &path) {
  std::ifstream is(path);
  if (!is)
    throw std::runtime_error("cannot open scenario config: " + path);
  nlohmann::json j;
  is >> j;
  return scenario_from_json(j);
}

void save_scenario(const std::string &path, const Scenario &sc) {
  write_json(path, scenario_to_json(sc));
}

void write_json(const std::string &path, const nlohmann::json &j) {
  std::ofstream os = open_out(path);
  os << j.dump(2) << "\n";
}

} // namespace beamscan
