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

#include "beamscan/segment.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace beamscan {

std::string to_string(BlockState s) {
  switch (s) {
  case BlockState::Unblocked:
    return "unblocked";
  case BlockState::Entering:
    return "entering";
  case BlockState::Blocked:
    return "blocked";
  case BlockState::Exiting:
    return "exiting";
  }
  return "?";
}

Eigen::VectorXd moving_average(const Eigen::VectorXd &x, int window) {
  if (window < 1)
    throw std::invalid_argument("moving_average: window must be >= 1");
  const Eigen::Index n = x.size();
  const int half = window / 2;
  Eigen::VectorXd out(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index lo = std::max<Eigen::Index>(0, i - half);
    const Eigen::Index hi = std::min<Eigen::Index>(n - 1, i + half);
    out(i) = x.segment(lo, hi - lo + 1).mean();
  }
  return out;
}

namespace {

/// Sufficient statistics of a contiguous run of (index, level) points;
/// closed under addition, which is what bottom-up merging needs.
struct LineStats {
  double n = 0, sx = 0, sxx = 0, sy = 0, sxy = 0, syy = 0;

  LineStats operator+(const LineStats &o) const {
    return {n + o.n, sx + o.sx, sxx + o.sxx, sy + o.sy, sxy + o.sxy,
            syy + o.syy};
  }
  void add(double x, double y) {
    n += 1;
    sx += x;
    sxx += x * x;
    sy += y;
    sxy += x * y;
    syy += y * y;
  }
  double slope() const {
    const double den = n * sxx - sx * sx;
    return std::abs(den) > 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  }
  double sse() const {
    const double a = slope();
    const double b = (sy - a * sx) / n;
    return syy - 2.0 * (a * sxy + b * sy) +
           (a * a * sxx + 2.0 * a * b * sx + b * b * n);
  }
  double mean() const { return sy / n; }
};

struct Piece {
  Eigen::Index begin, end; // [begin, end)
  LineStats stats;
};

} // namespace

std::vector<TrajectorySegment> segment_blockage(const Eigen::VectorXcd &g,
                                                const SegmentOptions &opts) {
  const Eigen::Index n = g.size();
  if (n < opts.window)
    throw std::invalid_argument("segment_blockage: trajectory shorter than window");

  Eigen::VectorXd level(n);
  for (Eigen::Index i = 0; i < n; ++i)
    level(i) = 20.0 * std::log10(std::max(std::abs(g(i)), 1e-300));
  const Eigen::VectorXd smooth = moving_average(level, opts.window);

  // Seed with short pieces, then merge the cheapest adjacent pair until
  // every remaining merge would raise the SSE past the penalty.
  const Eigen::Index init_len = std::max<Eigen::Index>(2, opts.window / 4);
  std::vector<Piece> pieces;
  for (Eigen::Index b = 0; b < n; b += init_len) {
    Piece p{b, std::min(b + init_len, n), {}};
    for (Eigen::Index i = p.begin; i < p.end; ++i)
      p.stats.add(double(i), smooth(i));
    pieces.push_back(p);
  }
  while (pieces.size() > 1) {
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      const LineStats merged = pieces[i].stats + pieces[i + 1].stats;
      const double cost =
          merged.sse() - pieces[i].stats.sse() - pieces[i + 1].stats.sse();
      if (cost < best_cost) {
        best_cost = cost;
        best_i = i;
      }
    }
    if (best_cost >= opts.merge_penalty_db2)
      break;
    pieces[best_i].stats = pieces[best_i].stats + pieces[best_i + 1].stats;
    pieces[best_i].end = pieces[best_i + 1].end;
    pieces.erase(pieces.begin() + std::ptrdiff_t(best_i) + 1);
  }

  // Unblocked plateau: 90th percentile of the smoothed level.
  Eigen::VectorXd sorted = smooth;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  const double plateau =
      sorted(Eigen::Index(std::ceil(0.9 * double(sorted.size() - 1))));

  std::vector<TrajectorySegment> segs;
  for (const Piece &p : pieces) {
    TrajectorySegment s;
    s.begin = p.begin;
    s.end = p.end;
    s.slope_db_per_s = p.stats.slope() / opts.scan_period_s;
    s.mean_level_db = p.stats.mean();
    if (s.slope_db_per_s <= -opts.slope_threshold_db_per_s)
      s.state = BlockState::Entering;
    else if (s.slope_db_per_s >= opts.slope_threshold_db_per_s)
      s.state = BlockState::Exiting;
    else if (plateau - s.mean_level_db <= opts.level_threshold_db)
      s.state = BlockState::Unblocked;
    else
      s.state = BlockState::Blocked;
    segs.push_back(s);
  }

  // Coalesce equal-state neighbors so the output is one segment per
  // dwell in a state.
  std::vector<TrajectorySegment> out;
  std::vector<LineStats> out_stats;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (!out.empty() && out.back().state == segs[i].state) {
      out.back().end = segs[i].end;
      out_stats.back() = out_stats.back() + pieces[i].stats;
    } else {
      out.push_back(segs[i]);
      out_stats.push_back(pieces[i].stats);
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i].slope_db_per_s = out_stats[i].slope() / opts.scan_period_s;
    out[i].mean_level_db = out_stats[i].mean();
  }
  return out;
}

} // namespace beamscan
