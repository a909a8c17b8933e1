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

#ifndef SHAREDNAV_GLOBAL_PLANNER_H_
#define SHAREDNAV_GLOBAL_PLANNER_H_

#include <vector>

#include "sharednav/dynamics.h"
#include "sharednav/world_model.h"

namespace sharednav {

// Grid path from the start cell center to the goal cell center.
struct GlobalPath {
  std::vector<Point2> waypoints;
  // Move counts of the 8-connected search; total_length is derived from them
  // as (axis_moves + sqrt(2) * diagonal_moves) * resolution so that equal
  // move counts always give bit-identical lengths.
  int axis_moves = 0;
  int diagonal_moves = 0;
  double total_length = 0.0;
};

// Timed state sequence of horizon + 1 states spaced dt apart.
struct ReferenceTrajectory {
  std::vector<RobotState> states;
  double dt = 0.1;

  int horizon() const { return static_cast<int>(states.size()) - 1; }
};

// 8-connected A* over free cells of an (already inflated) grid. Diagonal moves
// need both adjacent axis cells free. Edge costs are res and sqrt(2) * res;
// the heuristic is Euclidean. f-ties go to the lower h, then to the smaller
// (row, col). Throws kOutOfBounds, kStartOccupied, kGoalOccupied or kNoPath.
GlobalPath Plan(const OccupancyGrid& grid, Point2 start, Point2 goal);

// Sum of Euclidean gaps between consecutive waypoints.
double PolylineLength(const std::vector<Point2>& points);

// Projects s0 onto the path and walks forward at v_ref: state t sits at arc
// length projection + t * v_ref * dt (clamped to the path end) and faces the
// tangent of the segment it lies on. Throws kEmptyPath, kNonPositiveDt or
// kInvalidArgument.
ReferenceTrajectory SampleReference(const GlobalPath& path,
                                    const RobotState& s0, int horizon,
                                    double dt, double v_ref);

}  // namespace sharednav

#endif  // SHAREDNAV_GLOBAL_PLANNER_H_
