// Copyright 2026 The sharednav Authors
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

#include "sharednav/global_planner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <tuple>

#include "sharednav/angles.h"
#include "sharednav/error.h"

namespace sharednav {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// Path cost in cell units, kept as exact move counts.
struct MoveCost {
  int axis = 0;
  int diagonal = 0;

  double value() const { return axis + diagonal * kSqrt2; }
};

struct OpenEntry {
  double f;
  double h;
  int row;
  int col;

  // std::priority_queue pops the largest; invert so the smallest
  // (f, h, row, col) comes out first.
  bool operator<(const OpenEntry& other) const {
    return std::tie(f, h, row, col) >
           std::tie(other.f, other.h, other.row, other.col);
  }
};

CellIndex RequireCell(const OccupancyGrid& grid, Point2 p, const char* what) {
  const auto cell = WorldToCell(grid, p);
  if (!cell) {
    throw Error(ErrorCode::kOutOfBounds,
                std::string(what) + " lies outside the map");
  }
  return *cell;
}

}  // namespace

GlobalPath Plan(const OccupancyGrid& grid, Point2 start, Point2 goal) {
  const CellIndex s = RequireCell(grid, start, "start");
  const CellIndex g = RequireCell(grid, goal, "goal");
  if (grid.occupied(s.col, s.row)) {
    throw Error(ErrorCode::kStartOccupied,
                "start cell (" + std::to_string(s.col) + ", " +
                    std::to_string(s.row) + ") is occupied");
  }
  if (grid.occupied(g.col, g.row)) {
    throw Error(ErrorCode::kGoalOccupied,
                "goal cell (" + std::to_string(g.col) + ", " +
                    std::to_string(g.row) + ") is occupied");
  }

  const int width = grid.width();
  const size_t n = static_cast<size_t>(width) * grid.height();
  auto index = [width](int col, int row) {
    return static_cast<size_t>(row) * width + col;
  };
  auto heuristic = [&g](int col, int row) {
    return std::hypot(static_cast<double>(col - g.col),
                      static_cast<double>(row - g.row));
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<MoveCost> cost(n);
  std::vector<double> cost_value(n, kInf);
  std::vector<int> parent(n, -1);
  std::vector<bool> closed(n, false);

  std::priority_queue<OpenEntry> open;
  cost[index(s.col, s.row)] = {};
  cost_value[index(s.col, s.row)] = 0.0;
  open.push({heuristic(s.col, s.row), heuristic(s.col, s.row), s.row, s.col});

  bool found = false;
  while (!open.empty()) {
    const OpenEntry top = open.top();
    open.pop();
    const size_t cur = index(top.col, top.row);
    if (closed[cur]) continue;
    closed[cur] = true;
    if (top.col == g.col && top.row == g.row) {
      found = true;
      break;
    }
    for (int dr = -1; dr <= 1; ++dr) {
      for (int dc = -1; dc <= 1; ++dc) {
        if (dr == 0 && dc == 0) continue;
        const int nc = top.col + dc;
        const int nr = top.row + dr;
        if (!grid.InBounds(nc, nr) || grid.occupied(nc, nr)) continue;
        const bool diagonal = dr != 0 && dc != 0;
        if (diagonal && (grid.occupied(top.col + dc, top.row) ||
                         grid.occupied(top.col, top.row + dr))) {
          continue;  // no corner cutting
        }
        const size_t next = index(nc, nr);
        if (closed[next]) continue;
        MoveCost candidate = cost[cur];
        (diagonal ? candidate.diagonal : candidate.axis) += 1;
        const double value = candidate.value();
        if (value < cost_value[next]) {
          cost[next] = candidate;
          cost_value[next] = value;
          parent[next] = static_cast<int>(cur);
          const double h = heuristic(nc, nr);
          open.push({value + h, h, nr, nc});
        }
      }
    }
  }
  if (!found) {
    throw Error(ErrorCode::kNoPath, "goal is unreachable from start");
  }

  GlobalPath path;
  for (int cur = static_cast<int>(index(g.col, g.row)); cur >= 0;
       cur = parent[cur]) {
    path.waypoints.push_back(CellToWorld(grid, cur % width, cur / width));
  }
  std::reverse(path.waypoints.begin(), path.waypoints.end());
  const MoveCost& total = cost[index(g.col, g.row)];
  path.axis_moves = total.axis;
  path.diagonal_moves = total.diagonal;
  path.total_length = total.value() * grid.resolution();
  return path;
}

double PolylineLength(const std::vector<Point2>& points) {
  double length = 0.0;
  for (size_t i = 1; i < points.size(); ++i) {
    length += std::hypot(points[i].x - points[i - 1].x,
                         points[i].y - points[i - 1].y);
  }
  return length;
}

ReferenceTrajectory SampleReference(const GlobalPath& path,
                                    const RobotState& s0, int horizon,
                                    double dt, double v_ref) {
  const auto& pts = path.waypoints;
  if (pts.empty()) throw Error(ErrorCode::kEmptyPath, "path has no waypoints");
  if (horizon < 1) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  }
  if (!(dt > 0.0)) throw Error(ErrorCode::kNonPositiveDt, "dt must be > 0");
  if (!(v_ref > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "v_ref must be > 0");
  }

  ReferenceTrajectory ref;
  ref.dt = dt;
  ref.states.reserve(static_cast<size_t>(horizon) + 1);

  const size_t segments = pts.size() - 1;
  std::vector<double> seg_len(segments);
  std::vector<double> cum(pts.size(), 0.0);
  for (size_t i = 0; i < segments; ++i) {
    seg_len[i] =
        std::hypot(pts[i + 1].x - pts[i].x, pts[i + 1].y - pts[i].y);
    cum[i + 1] = cum[i] + seg_len[i];
  }
  const double total = cum.back();
  if (total == 0.0) {
    const RobotState goal{pts.back().x, pts.back().y, WrapAngle(s0.heading)};
    ref.states.assign(static_cast<size_t>(horizon) + 1, goal);
    return ref;
  }

  // Nearest point on the polyline; the earliest segment wins ties.
  double best_dist_sq = std::numeric_limits<double>::infinity();
  double proj = 0.0;
  for (size_t i = 0; i < segments; ++i) {
    if (seg_len[i] == 0.0) continue;
    const double dx = pts[i + 1].x - pts[i].x;
    const double dy = pts[i + 1].y - pts[i].y;
    double t = ((s0.x - pts[i].x) * dx + (s0.y - pts[i].y) * dy) /
               (seg_len[i] * seg_len[i]);
    t = std::clamp(t, 0.0, 1.0);
    const double px = pts[i].x + t * dx - s0.x;
    const double py = pts[i].y + t * dy - s0.y;
    const double d_sq = px * px + py * py;
    if (d_sq < best_dist_sq) {
      best_dist_sq = d_sq;
      proj = cum[i] + t * seg_len[i];
    }
  }

  double last_tangent = 0.0;
  for (size_t i = 0; i < segments; ++i) {
    if (seg_len[i] > 0.0) {
      last_tangent = std::atan2(pts[i + 1].y - pts[i].y,
                                pts[i + 1].x - pts[i].x);
    }
  }

  for (int t = 0; t <= horizon; ++t) {
    const double s = proj + t * v_ref * dt;
    if (s >= total) {
      ref.states.push_back({pts.back().x, pts.back().y, last_tangent});
      continue;
    }
    // Segment i with cum[i] <= s < cum[i + 1].
    const size_t i = static_cast<size_t>(
        std::upper_bound(cum.begin(), cum.end(), s) - cum.begin() - 1);
    const double frac = (s - cum[i]) / seg_len[i];
    const double dx = pts[i + 1].x - pts[i].x;
    const double dy = pts[i + 1].y - pts[i].y;
    ref.states.push_back(
        {pts[i].x + frac * dx, pts[i].y + frac * dy, std::atan2(dy, dx)});
  }
  return ref;
}

}  // namespace sharednav
