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

#ifndef BEAMSCAN_CHANNEL_HPP
#define BEAMSCAN_CHANNEL_HPP

#include "beamscan/tensor.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace beamscan {

/// Uniform linear phased array, azimuth steering only. The sounder's
/// fixed narrow vertical beam is not modeled.
struct ArrayConfig {
  int n_elements = 12;
  double azimuth_range_deg = 45.0; // steerable over +/- this
  double element_spacing = 0.5;    // in wavelengths
  double boresight_gain_db = 23.0;
  int codebook_size = 12;
};

/// Normalized ULA factor for a beam steered to steer_deg observing a
/// plane wave from arrival_deg. Magnitude is 1 when aligned; the dB
/// boresight gain is applied separately by the simulator.
cplx array_response(const ArrayConfig &cfg, double steer_deg,
                    double arrival_deg);

/// Codebook steering angles: uniformly spaced across the azimuth range,
/// endpoints included. A single-entry codebook steers to the midpoint.
std::vector<double> make_codebook(const ArrayConfig &cfg);

/// One attenuation event: linear-in-dB ramp down, hold at -depth_db,
/// ramp back up.
struct BlockageEvent {
  double start_s = 0.0;
  double ramp_down_s = 0.1;
  double hold_s = 0.3;
  double ramp_up_s = 0.1;
  double depth_db = 20.0;

  double end_s() const { return start_s + ramp_down_s + hold_s + ramp_up_s; }
};

/// Piecewise-trapezoidal (in dB) gain-over-time of one path. Value is 1
/// outside events.
struct BlockageTrajectory {
  std::vector<BlockageEvent> events;

  /// Attenuation in dB at time t; 0 outside events, continuous.
  double gain_db(double t) const;
  /// Linear amplitude factor 10^(gain_db/20), in (0, 1].
  double amplitude(double t) const { return std::pow(10.0, gain_db(t) / 20.0); }

  void validate() const; // non-overlap, depth >= 0
};

struct PathSpec {
  int delay_ns = 1; // delay sample, 1-based, 1 ns resolution
  double aod_deg = 0.0;
  double aoa_deg = 0.0;
  double gain_db = 0.0;
  BlockageTrajectory trajectory;
};

struct Scenario {
  int id = -1; // 0..4 for presets, -1 for custom configs
  int n_blockers = 0;
  bool tx_rotation = false;
  double rotation_sweep_deg = 90.0; // total sweep over the measurement
  std::vector<PathSpec> paths;
  Eigen::Index n_scan = 1750;
  double scan_period_s = 0.003;
  Eigen::Index n_dly = 192;
  double dwell_s = 6e-6; // per-CIR dwell inside one scan
  double noise_floor_db = 40.0; // below the strongest path peak
  bool noise = true;
  bool pulse_spread = false; // 3-tap raised-cosine delay pulse
  std::uint64_t seed = 0;
  ArrayConfig tx_array;
  ArrayConfig rx_array;

  Eigen::Index n_dir() const {
    return Eigen::Index(tx_array.codebook_size) * rx_array.codebook_size;
  }
  double duration_s() const { return double(n_scan) * scan_period_s; }
  void validate() const;
};

/// Table-of-scenarios presets (id, blocker count, rotation):
///   0: 0 blockers, no rotation     3: 0 blockers, rotation
///   1: 1 blocker,  no rotation     4: 2 blockers, rotation
///   2: 3 blockers, no rotation
/// Desk scale (default) uses 64 x 36 x 1400 so the full analysis chain
/// runs in CI time; full_size restores the hardware's 192 x 144 x 1750.
Scenario preset_scenario(int id, bool full_size = false,
                         std::uint64_t seed = 0);

/// Planted per-path factors in the decomposition's normalization
/// (unit-norm d and s columns, scale and phase absorbed into g).
struct GroundTruth {
  FactorMatrix d; // n_dly x L
  FactorMatrix s; // n_dir x L
  FactorMatrix g; // n_scan x L
};

struct SimulationResult {
  ChannelTensor tensor;
  GroundTruth truth;
};

/// Synthesize one measurement. Without rotation the noiseless tensor is
/// exactly cp_reconstruct(truth); noise and rotation are added on top.
/// Deterministic per seed; scans use independent RNG substreams so the
/// result does not depend on fill order.
SimulationResult simulate(const Scenario &sc);

struct ScanEntry {
  Eigen::Index scan;  // 0-based
  Eigen::Index combo; // 0-based, rx fastest: combo = rx + tx*codebook_rx
  double timestamp_s;
};

/// Deterministic acquisition order: for each scan, TX holds a steering
/// vector while RX cycles its codebook, then TX advances.
std::vector<ScanEntry> scan_schedule(const Scenario &sc);

} // namespace beamscan

#endif // BEAMSCAN_CHANNEL_HPP
