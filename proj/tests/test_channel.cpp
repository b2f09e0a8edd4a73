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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "beamscan/channel.hpp"
#include "beamscan/tensor.hpp"

#include <cmath>
#include <numbers>

using namespace beamscan;

namespace {

/// Closed-form Dirichlet-kernel magnitude of an N-element ULA at
/// sine-space offset u (in units of sin(arrival) - sin(steer)).
double dirichlet_magnitude(int n, double spacing, double u) {
  const double psi = 2.0 * std::numbers::pi * spacing * u;
  if (std::abs(std::sin(psi / 2.0)) < 1e-12)
    return 1.0;
  return std::abs(std::sin(n * psi / 2.0) / (n * std::sin(psi / 2.0)));
}

/// Small noiseless scenario with one or two planted paths.
Scenario tiny_scenario(int n_paths, bool with_noise) {
  Scenario sc;
  sc.n_dly = 16;
  sc.n_scan = 40;
  sc.scan_period_s = 0.003;
  sc.tx_array.codebook_size = 4;
  sc.rx_array.codebook_size = 4;
  sc.noise = with_noise;
  PathSpec p1;
  p1.delay_ns = 5;
  p1.aod_deg = 0.0;
  p1.aoa_deg = 0.0;
  sc.paths.push_back(p1);
  if (n_paths > 1) {
    PathSpec p2;
    p2.delay_ns = 9;
    p2.aod_deg = -30.0;
    p2.aoa_deg = 30.0;
    p2.gain_db = -3.0;
    p2.trajectory.events = {{0.03, 0.015, 0.03, 0.015, 20.0}};
    sc.paths.push_back(p2);
  }
  return sc;
}

} // namespace

TEST_CASE("aligned beam has unit response") {
  ArrayConfig cfg;
  const cplx r = array_response(cfg, 0.0, 0.0);
  CHECK(std::abs(r) == doctest::Approx(1.0));
  CHECK(std::abs(array_response(cfg, -30.0, -30.0)) == doctest::Approx(1.0));
}

TEST_CASE("response magnitude matches the Dirichlet kernel") {
  ArrayConfig cfg;
  for (double arrival : {3.0, 7.5, 14.5, 25.0, 40.0}) {
    const double u = std::sin(arrival * std::numbers::pi / 180.0);
    CHECK(std::abs(array_response(cfg, 0.0, arrival)) ==
          doctest::Approx(dirichlet_magnitude(cfg.n_elements,
                                              cfg.element_spacing, u))
              .epsilon(1e-12));
  }
}

TEST_CASE("off-beam response stays below the first sidelobe (~0.22)") {
  ArrayConfig cfg; // 12 elements, half-wavelength
  // Everything beyond the first null (u = 2/N in sine space) is bounded
  // by the first sidelobe of the 12-element Dirichlet kernel.
  double worst = 0.0;
  for (double u = 2.0 / 12.0; u <= 0.9; u += 0.001) {
    const double arrival = std::asin(u) * 180.0 / std::numbers::pi;
    worst = std::max(worst, std::abs(array_response(cfg, 0.0, arrival)));
  }
  CHECK(worst <= 0.23);
  CHECK(worst >= 0.20); // the sidelobe peak itself is in the sweep
}

TEST_CASE("negating both angles conjugates the response") {
  ArrayConfig cfg;
  for (double steer : {-20.0, 0.0, 35.0})
    for (double arrival : {-40.0, 5.0, 25.0}) {
      const cplx a = array_response(cfg, steer, arrival);
      const cplx b = array_response(cfg, -steer, -arrival);
      CHECK(std::abs(a - std::conj(b)) < 1e-13);
    }
}

TEST_CASE("codebook is an inclusive linspace over the steering range") {
  ArrayConfig cfg;
  const std::vector<double> cb = make_codebook(cfg);
  REQUIRE(cb.size() == 12);
  CHECK(cb.front() == doctest::Approx(-45.0));
  CHECK(cb.back() == doctest::Approx(45.0));
  for (std::size_t i = 1; i < cb.size(); ++i)
    CHECK(cb[i] - cb[i - 1] == doctest::Approx(90.0 / 11.0));

  cfg.codebook_size = 1;
  CHECK(make_codebook(cfg) == std::vector<double>{0.0});

  cfg.codebook_size = 3;
  const std::vector<double> cb3 = make_codebook(cfg);
  CHECK(cb3[0] == doctest::Approx(-45.0));
  CHECK(cb3[1] == doctest::Approx(0.0));
  CHECK(cb3[2] == doctest::Approx(45.0));
}

TEST_CASE("blockage trapezoid: unity outside, 10^(-depth/20) at the bottom") {
  BlockageTrajectory tr;
  tr.events = {{1.0, 0.1, 0.3, 0.1, 20.0}};
  tr.validate();
  CHECK(tr.amplitude(0.5) == doctest::Approx(1.0));
  CHECK(tr.amplitude(2.0) == doctest::Approx(1.0));
  CHECK(tr.amplitude(1.25) == doctest::Approx(0.1)); // -20 dB
  // Continuous and piecewise linear in dB: no jumps on a fine grid.
  double prev = tr.gain_db(0.9);
  double min_db = 0.0;
  for (double t = 0.9; t <= 1.6; t += 1e-4) {
    const double v = tr.gain_db(t);
    CHECK(std::abs(v - prev) < 0.03);
    min_db = std::min(min_db, v);
    prev = v;
  }
  CHECK(min_db == doctest::Approx(-20.0));
}

TEST_CASE("overlapping blockage events are rejected") {
  BlockageTrajectory tr;
  tr.events = {{1.0, 0.1, 0.3, 0.1, 20.0}, {1.2, 0.1, 0.1, 0.1, 10.0}};
  CHECK_THROWS_AS(tr.validate(), std::invalid_argument);
}

TEST_CASE("scenario presets follow the blocker/rotation table") {
  const int expected_blockers[5] = {0, 1, 3, 0, 2};
  const bool expected_rotation[5] = {false, false, false, true, true};
  for (int id = 0; id < 5; ++id) {
    const Scenario sc = preset_scenario(id);
    CHECK(sc.id == id);
    CHECK(sc.n_blockers == expected_blockers[id]);
    CHECK(sc.tx_rotation == expected_rotation[id]);
    sc.validate();
  }
  CHECK_THROWS_AS(preset_scenario(9), std::invalid_argument);
  CHECK_THROWS_AS(preset_scenario(-1), std::invalid_argument);
}

TEST_CASE("full-size preset restores the hardware dimensions") {
  const Scenario sc = preset_scenario(1, /*full_size=*/true);
  CHECK(sc.n_dly == 192);
  CHECK(sc.n_dir() == 144);
  CHECK(sc.n_scan == 1750);
}

TEST_CASE("scenario validation catches inconsistent fields") {
  Scenario sc = preset_scenario(1);
  sc.n_blockers = 5;
  CHECK_THROWS_AS(sc.validate(), std::invalid_argument);

  Scenario bad_delay = tiny_scenario(1, false);
  bad_delay.paths[0].delay_ns = 100; // > n_dly
  CHECK_THROWS_AS(simulate(bad_delay), std::invalid_argument);
}

TEST_CASE("noiseless single-tap simulation is exactly trilinear") {
  const Scenario sc = tiny_scenario(2, false);
  const SimulationResult res = simulate(sc);
  const ChannelTensor recon =
      cp_reconstruct(res.truth.d, res.truth.s, res.truth.g);
  double err = 0.0;
  for (Eigen::Index i = 0; i < recon.size(); ++i)
    err = std::max(err,
                   std::abs(recon.data()[size_t(i)] - res.tensor.data()[size_t(i)]));
  CHECK(err <= 1e-9 * res.tensor.frobenius_norm());
}

TEST_CASE("planted factors follow the decomposition normalization") {
  const SimulationResult res = simulate(tiny_scenario(2, false));
  for (Eigen::Index l = 0; l < res.truth.d.cols(); ++l) {
    CHECK(res.truth.d.col(l).norm() == doctest::Approx(1.0));
    CHECK(res.truth.s.col(l).norm() == doctest::Approx(1.0));
    Eigen::Index imax = 0;
    res.truth.s.col(l).cwiseAbs().maxCoeff(&imax);
    CHECK(std::abs(res.truth.s(imax, l).imag()) < 1e-12);
    CHECK(res.truth.s(imax, l).real() > 0.0);
  }
}

TEST_CASE("planted trajectory dips to 10^(-depth/20) of its open level") {
  const SimulationResult res = simulate(tiny_scenario(2, false));
  const Eigen::VectorXd mags = res.truth.g.col(1).cwiseAbs();
  CHECK(mags.minCoeff() / mags.maxCoeff() == doctest::Approx(0.1).epsilon(1e-6));
}

TEST_CASE("without rotation the strongest combo is constant over scans") {
  // Noiseless: near-ties between symmetric beams make the argmax
  // noise-sensitive, which is not what this test is about.
  Scenario sc = tiny_scenario(1, false);
  const SimulationResult res = simulate(sc);
  Eigen::Index ref = -1;
  for (Eigen::Index k = 0; k < sc.n_scan; ++k) {
    Eigen::Index best = 0;
    res.tensor.scan_slice(k).colwise().norm().maxCoeff(&best);
    if (ref < 0)
      ref = best;
    CHECK(best == ref);
  }
}

TEST_CASE("with rotation the strongest TX beam drifts") {
  Scenario sc = tiny_scenario(1, false);
  sc.tx_rotation = true;
  sc.rotation_sweep_deg = 90.0;
  const SimulationResult res = simulate(sc);
  auto best_tx = [&](Eigen::Index k) {
    Eigen::Index best = 0;
    res.tensor.scan_slice(k).colwise().norm().maxCoeff(&best);
    return best / sc.rx_array.codebook_size; // tx part of the combo
  };
  CHECK(best_tx(0) != best_tx(sc.n_scan - 1));
}

TEST_CASE("zero paths gives a statistically flat noise floor") {
  Scenario sc = tiny_scenario(1, true);
  sc.paths.clear();
  sc.noise_floor_db = 20.0;
  const SimulationResult res = simulate(sc);
  CHECK(res.truth.g.cols() == 0);
  // Total power / cells ~ noise power 10^(-20/10); the chi-squared
  // relative deviation over n cells is ~ 1/sqrt(n).
  const Eigen::Index cells = res.tensor.size();
  const double mean_power =
      res.tensor.frobenius_norm() * res.tensor.frobenius_norm() / double(cells);
  const double expected = 1e-2;
  CHECK(std::abs(mean_power - expected) / expected <
        6.0 / std::sqrt(double(cells)));
}

TEST_CASE("simulation is deterministic per seed") {
  Scenario sc = tiny_scenario(2, true);
  sc.seed = 77;
  const SimulationResult a = simulate(sc);
  const SimulationResult b = simulate(sc);
  for (Eigen::Index i = 0; i < a.tensor.size(); ++i)
    REQUIRE(a.tensor.data()[size_t(i)] == b.tensor.data()[size_t(i)]);

  sc.seed = 78;
  const SimulationResult c = simulate(sc);
  CHECK(a.tensor.data()[0] != c.tensor.data()[0]);
}

TEST_CASE("scan schedule enumerates combos TX-major with 3 ms periods") {
  Scenario sc; // hardware defaults: 144 combos, 1750 scans
  const auto rows = scan_schedule(sc);
  REQUIRE(rows.size() == 252000);

  Scenario one = sc;
  one.n_scan = 1;
  const auto single = scan_schedule(one);
  REQUIRE(single.size() == 144);
  for (Eigen::Index j = 0; j < 144; ++j) {
    CHECK(single[size_t(j)].combo == j);
    CHECK(single[size_t(j)].timestamp_s ==
          doctest::Approx(double(j) * sc.dwell_s));
  }

  // Scan k starts at k * 3 ms; a whole scan fits in under 1 ms.
  for (Eigen::Index k : {0, 1, 700, 1749}) {
    const ScanEntry &first = rows[size_t(k * 144)];
    const ScanEntry &last = rows[size_t(k * 144 + 143)];
    CHECK(first.timestamp_s == doctest::Approx(double(k) * 0.003));
    CHECK(last.timestamp_s + sc.dwell_s - first.timestamp_s < 1e-3);
  }
}
