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

#include "beamscan/channel.hpp"
#include "beamscan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace beamscan {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

int worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0)
    n = 1;
  if (const char *env = std::getenv("BEAMSCAN_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n)
      n = static_cast<unsigned>(cap);
  }
  return static_cast<int>(n);
}

/// Run fn(k) for k in [0, n) across workers. Work is independent per k,
/// so ordering does not matter.
template <typename Fn> void parallel_for(Eigen::Index n, Fn fn) {
  const int workers = std::min<Eigen::Index>(worker_count(), n);
  if (workers <= 1) {
    for (Eigen::Index k = 0; k < n; ++k)
      fn(k);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (Eigen::Index k = w; k < n; k += workers)
        fn(k);
    });
  for (auto &t : pool)
    t.join();
}

} // namespace

cplx array_response(const ArrayConfig &cfg, double steer_deg,
                    double arrival_deg) {
  // Phase increment between adjacent elements, steering phase removed.
  const double psi = 2.0 * std::numbers::pi * cfg.element_spacing *
                     (std::sin(arrival_deg * kDegToRad) -
                      std::sin(steer_deg * kDegToRad));
  cplx acc = 0.0;
  for (int n = 0; n < cfg.n_elements; ++n)
    acc += std::polar(1.0, psi * n);
  return acc / double(cfg.n_elements);
}

std::vector<double> make_codebook(const ArrayConfig &cfg) {
  if (cfg.codebook_size < 1)
    throw std::invalid_argument("make_codebook: codebook_size must be >= 1");
  const double r = cfg.azimuth_range_deg;
  if (cfg.codebook_size == 1)
    return {0.0};
  std::vector<double> angles(cfg.codebook_size);
  for (int i = 0; i < cfg.codebook_size; ++i)
    angles[i] = -r + 2.0 * r * double(i) / double(cfg.codebook_size - 1);
  return angles;
}

double BlockageTrajectory::gain_db(double t) const {
  for (const BlockageEvent &e : events) {
    if (t < e.start_s || t > e.end_s())
      continue;
    const double dt = t - e.start_s;
    if (dt < e.ramp_down_s)
      return -e.depth_db * dt / e.ramp_down_s;
    if (dt < e.ramp_down_s + e.hold_s)
      return -e.depth_db;
    return -e.depth_db * (e.end_s() - t) / e.ramp_up_s;
  }
  return 0.0;
}

void BlockageTrajectory::validate() const {
  for (std::size_t i = 0; i < events.size(); ++i) {
    const BlockageEvent &e = events[i];
    if (e.depth_db < 0.0 || e.ramp_down_s <= 0.0 || e.ramp_up_s <= 0.0 ||
        e.hold_s < 0.0)
      throw std::invalid_argument("BlockageEvent: bad durations or depth");
    if (i > 0 && e.start_s < events[i - 1].end_s())
      throw std::invalid_argument("BlockageTrajectory: overlapping events");
  }
}

void Scenario::validate() const {
  if (n_dly < 1 || n_scan < 1)
    throw std::invalid_argument("Scenario: dims must be >= 1");
  if (scan_period_s <= 0.0 || dwell_s <= 0.0)
    throw std::invalid_argument("Scenario: timing fields must be positive");
  if (tx_array.codebook_size < 1 || rx_array.codebook_size < 1)
    throw std::invalid_argument("Scenario: empty codebook");
  for (const PathSpec &p : paths) {
    if (p.delay_ns < 1 || p.delay_ns > n_dly)
      throw std::invalid_argument("PathSpec: delay outside [1, n_dly]");
    if (!std::isfinite(p.gain_db) || !std::isfinite(p.aod_deg) ||
        !std::isfinite(p.aoa_deg))
      throw std::invalid_argument("PathSpec: non-finite field");
    p.trajectory.validate();
  }
  if (id >= 0) {
    static const int blockers[5] = {0, 1, 3, 0, 2};
    static const bool rotation[5] = {false, false, false, true, true};
    if (id > 4)
      throw std::invalid_argument("Scenario: unknown scenario id");
    if (n_blockers != blockers[id] || tx_rotation != rotation[id])
      throw std::invalid_argument(
          "Scenario: blocker count / rotation flag inconsistent with id");
  }
}

Scenario preset_scenario(int id, bool full_size, std::uint64_t seed) {
  if (id < 0 || id > 4)
    throw std::invalid_argument("unknown scenario id " + std::to_string(id));

  Scenario sc;
  sc.id = id;
  sc.seed = seed;
  if (full_size) {
    sc.n_dly = 192;
    sc.n_scan = 1750;
    sc.tx_array.codebook_size = 12;
    sc.rx_array.codebook_size = 12;
  } else {
    // Desk scale: small enough for CI yet long enough (4.2 s) to hold
    // the blocking events around t = 3 s.
    sc.n_dly = 64;
    sc.n_scan = 1400;
    sc.tx_array.codebook_size = 6;
    sc.rx_array.codebook_size = 6;
  }

  PathSpec los;
  los.delay_ns = 20;
  los.aod_deg = 9.0;
  los.aoa_deg = -9.0;
  los.gain_db = 0.0;

  PathSpec refl;
  refl.delay_ns = 45;
  refl.aod_deg = -27.0;
  refl.aoa_deg = 27.0;
  refl.gain_db = -3.0;

  // Event placement mirrors the observed single-walker measurement:
  // first event at 3.0 s for ~500 ms, second shortly after for ~350 ms.
  const BlockageEvent ev_los{3.0, 0.1, 0.3, 0.1, 20.0};
  const BlockageEvent ev_refl{3.3, 0.1, 0.15, 0.1, 20.0};

  switch (id) {
  case 0:
    sc.n_blockers = 0;
    break;
  case 1:
    sc.n_blockers = 1;
    los.trajectory.events = {ev_los};
    refl.trajectory.events = {ev_refl};
    break;
  case 2:
    sc.n_blockers = 3;
    los.trajectory.events = {{1.0, 0.1, 0.2, 0.1, 20.0}, ev_los};
    refl.trajectory.events = {{1.8, 0.1, 0.15, 0.1, 15.0}, ev_refl};
    break;
  case 3:
    sc.n_blockers = 0;
    sc.tx_rotation = true;
    break;
  case 4:
    sc.n_blockers = 2;
    sc.tx_rotation = true;
    los.trajectory.events = {ev_los};
    refl.trajectory.events = {ev_refl};
    break;
  }
  sc.paths = {los, refl};
  sc.validate();
  return sc;
}

SimulationResult simulate(const Scenario &sc) {
  sc.validate();

  const Eigen::Index nd = sc.n_dly, nj = sc.n_dir(), nk = sc.n_scan;
  const Eigen::Index L = static_cast<Eigen::Index>(sc.paths.size());
  const std::vector<double> tx_cb = make_codebook(sc.tx_array);
  const std::vector<double> rx_cb = make_codebook(sc.rx_array);
  const Eigen::Index n_rx = static_cast<Eigen::Index>(rx_cb.size());

  const double array_gain_db =
      sc.tx_array.boresight_gain_db + sc.rx_array.boresight_gain_db;

  // Planted factors in the decomposition normalization.
  GroundTruth truth;
  truth.d = FactorMatrix::Zero(nd, L);
  truth.s = FactorMatrix::Zero(nj, L);
  truth.g = FactorMatrix::Zero(nk, L);

  Eigen::VectorXcd path_coef(L); // amp * e^{i phase} * ||s_raw|| * conj(rot)
  double peak_amp = 0.0;

  for (Eigen::Index l = 0; l < L; ++l) {
    const PathSpec &p = sc.paths[l];
    const double amp = std::pow(10.0, (p.gain_db + array_gain_db) / 20.0);
    peak_amp = std::max(peak_amp, amp);

    // Delay signature: unit delta, or normalized 3-tap raised cosine.
    const Eigen::Index tau0 = p.delay_ns - 1;
    if (sc.pulse_spread) {
      if (tau0 - 1 >= 0)
        truth.d(tau0 - 1, l) = 0.5;
      truth.d(tau0, l) = 1.0;
      if (tau0 + 1 < nd)
        truth.d(tau0 + 1, l) = 0.5;
      truth.d.col(l) /= truth.d.col(l).norm();
    } else {
      truth.d(tau0, l) = 1.0;
    }

    // Spatial signature over the 144 (or preset-scale) combos, rx
    // fastest within a tx steering vector.
    Eigen::VectorXcd s_raw(nj);
    for (std::size_t ti = 0; ti < tx_cb.size(); ++ti)
      for (Eigen::Index ri = 0; ri < n_rx; ++ri)
        s_raw(ri + Eigen::Index(ti) * n_rx) =
            array_response(sc.tx_array, tx_cb[ti], p.aod_deg) *
            array_response(sc.rx_array, rx_cb[ri], p.aoa_deg);
    const double s_norm = s_raw.norm();
    Eigen::VectorXcd s_unit = s_raw / s_norm;
    Eigen::Index imax = 0;
    s_unit.cwiseAbs().maxCoeff(&imax);
    const cplx rot = std::conj(s_unit(imax)) / std::abs(s_unit(imax));
    s_unit *= rot;
    truth.s.col(l) = s_unit;

    const double phase =
        SplitMix64::substream(sc.seed, 0x70617468ULL + std::uint64_t(l))
            .next_double() *
        2.0 * std::numbers::pi;
    path_coef(l) = amp * std::polar(1.0, phase) * s_norm * std::conj(rot);

    for (Eigen::Index k = 0; k < nk; ++k)
      truth.g(k, l) =
          path_coef(l) * p.trajectory.amplitude(double(k) * sc.scan_period_s);
  }

  // With no paths planted the floor is taken relative to unit amplitude.
  const double ref_amp = (L > 0) ? peak_amp : 1.0;
  const double noise_sd =
      sc.noise
          ? ref_amp * std::pow(10.0, -sc.noise_floor_db / 20.0) / std::sqrt(2.0)
          : 0.0;

  ChannelTensor tensor(nd, nj, nk);
  parallel_for(nk, [&](Eigen::Index k) {
    auto slice = tensor.scan_slice(k);
    const double t = double(k) * sc.scan_period_s;
    if (!sc.tx_rotation) {
      if (L > 0)
        slice.noalias() =
            truth.d * truth.g.row(k).asDiagonal() * truth.s.transpose();
    } else {
      // Constant-rate sweep centered on the nominal departure angles.
      const double frac = (nk > 1) ? double(k) / double(nk - 1) : 0.5;
      const double offset = sc.rotation_sweep_deg * (frac - 0.5);
      for (Eigen::Index l = 0; l < L; ++l) {
        const PathSpec &p = sc.paths[l];
        const double amp = std::pow(10.0, (p.gain_db + array_gain_db) / 20.0);
        const double phase =
            SplitMix64::substream(sc.seed, 0x70617468ULL + std::uint64_t(l))
                .next_double() *
            2.0 * std::numbers::pi;
        const cplx coef =
            amp * std::polar(1.0, phase) * p.trajectory.amplitude(t);
        Eigen::RowVectorXcd s_row(nj);
        for (std::size_t ti = 0; ti < tx_cb.size(); ++ti)
          for (Eigen::Index ri = 0; ri < n_rx; ++ri)
            s_row(ri + Eigen::Index(ti) * n_rx) =
                array_response(sc.tx_array, tx_cb[ti], p.aod_deg + offset) *
                array_response(sc.rx_array, rx_cb[ri], p.aoa_deg);
        slice.noalias() += coef * truth.d.col(l) * s_row;
      }
    }
    if (noise_sd > 0.0) {
      SplitMix64 rng = SplitMix64::substream(sc.seed, std::uint64_t(k));
      for (Eigen::Index j = 0; j < nj; ++j)
        for (Eigen::Index tau = 0; tau < nd; ++tau)
          slice(tau, j) += rng.next_cgaussian(noise_sd);
    }
  });

  return {std::move(tensor), std::move(truth)};
}

std::vector<ScanEntry> scan_schedule(const Scenario &sc) {
  sc.validate();
  const Eigen::Index nj = sc.n_dir();
  std::vector<ScanEntry> rows;
  rows.reserve(static_cast<std::size_t>(nj * sc.n_scan));
  for (Eigen::Index k = 0; k < sc.n_scan; ++k)
    for (Eigen::Index j = 0; j < nj; ++j)
      rows.push_back(
          {k, j, double(k) * sc.scan_period_s + double(j) * sc.dwell_s});
  return rows;
}

} // namespace beamscan
