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

#ifndef SHAREDNAV_TESTS_ORACLES_H_
#define SHAREDNAV_TESTS_ORACLES_H_

// Independent reference implementations used only by tests. They favour
// obviousness over speed and share no code with the library beyond the
// plain data types.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sharednav/dynamics.h"
#include "sharednav/world_model.h"

namespace sharednav::testing {

// Occupied iff some occupied input cell center lies within `radius` of the
// cell center, checked over all cell pairs. Exact ties count as inside.
OccupancyGrid BruteForceInflate(const OccupancyGrid& grid, double radius);

// Forward Euler with `substeps` equal sub-intervals.
RobotState EulerStep(const RobotState& s, const ControlInput& u, double dt,
                     int substeps);

// Shortest 8-connected path cost as exact (axis, diagonal) move counts.
// Diagonal moves need both side cells free. Costs a + b*sqrt(2) are compared
// exactly in integer arithmetic.
struct MoveCount {
  long axis = 0;
  long diagonal = 0;
  friend bool operator==(const MoveCount&, const MoveCount&) = default;
};
// True iff a.axis + a.diagonal*sqrt(2) < b.axis + b.diagonal*sqrt(2).
bool ExactLess(const MoveCount& a, const MoveCount& b);
std::optional<MoveCount> DijkstraMoves(const OccupancyGrid& grid,
                                       CellIndex start, CellIndex goal);

// Point at arc length s along the polyline, found by densely resampling each
// segment and interpolating between the resampled points. Clamps to the ends.
Point2 DensePolylinePoint(const std::vector<Point2>& polyline, double s,
                          int pieces_per_segment = 4096);

// Discrete PID + first-order plant for one channel, written out longhand.
std::vector<double> SimulatePidChannel(double kp, double ki, double kd,
                                       double tau, double setpoint,
                                       double start, double dt, int steps);

// Random grid with each cell occupied with probability `density`.
OccupancyGrid RandomGrid(std::mt19937_64& rng, int width, int height,
                         double resolution, double density);

std::string SourceDir();
std::string ScenarioDir();

}  // namespace sharednav::testing

#endif  // SHAREDNAV_TESTS_ORACLES_H_
