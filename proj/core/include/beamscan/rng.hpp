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

#ifndef BEAMSCAN_RNG_HPP
#define BEAMSCAN_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace beamscan {

/// splitmix64 (Steele, Lea, Flood 2014). Fully specified, so streams are
/// bit-identical across platforms; independent substreams are derived by
/// mixing a stream id into the seed.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  /// Substream `id` of a base seed; used to give every scan (and every
  /// ALS initialization) its own stream so parallel fills stay
  /// deterministic.
  static SplitMix64 substream(std::uint64_t seed, std::uint64_t id) {
    SplitMix64 s(seed + 0x9e3779b97f4a7c15ULL * (id + 1));
    s.next(); // decorrelate nearby ids
    return s;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() { return double(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double next_gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = next_double();
    while (u1 <= 0.0)
      u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  /// Circular complex gaussian with per-component standard deviation sd.
  std::complex<double> next_cgaussian(double sd) {
    const double re = next_gaussian();
    const double im = next_gaussian();
    return {sd * re, sd * im};
  }

private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

} // namespace beamscan

#endif // BEAMSCAN_RNG_HPP
