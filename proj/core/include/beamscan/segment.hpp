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

#ifndef BEAMSCAN_SEGMENT_HPP
#define BEAMSCAN_SEGMENT_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace beamscan {

enum class BlockState { Unblocked, Entering, Blocked, Exiting };

std::string to_string(BlockState s);

/// One labeled interval of a gain trajectory; [begin, end) in scans.
struct TrajectorySegment {
  Eigen::Index begin = 0;
  Eigen::Index end = 0;
  BlockState state = BlockState::Unblocked;
  double slope_db_per_s = 0.0;
  double mean_level_db = 0.0;
};

struct SegmentOptions {
  int window = 33; // moving-average width in scans (~100 ms at 3 ms/scan)
  double slope_threshold_db_per_s = 20.0;
  double level_threshold_db = 3.0; // distance from plateau to count as blocked
  double scan_period_s = 0.003;
  double merge_penalty_db2 = 5.0; // SSE increase above which merging stops
};

/// Label a complex gain trajectory with blockage states.
///
/// The large-scale component is a centered moving average of
/// 20*log10|g|; a piecewise-linear model is fit to it by bottom-up
/// segment merging (cheapest SSE increase first), segments are labeled
/// by slope and level, and runs of equal labels are coalesced. The
/// returned intervals partition [0, n_scan).
std::vector<TrajectorySegment> segment_blockage(const Eigen::VectorXcd &g,
                                                const SegmentOptions &opts = {});

/// Centered moving average with window shrinking near the edges.
Eigen::VectorXd moving_average(const Eigen::VectorXd &x, int window);

} // namespace beamscan

#endif // BEAMSCAN_SEGMENT_HPP
