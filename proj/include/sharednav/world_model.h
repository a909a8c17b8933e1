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

#ifndef SHAREDNAV_WORLD_MODEL_H_
#define SHAREDNAV_WORLD_MODEL_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sharednav {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

struct CellIndex {
  int col = 0;
  int row = 0;

  friend bool operator==(const CellIndex&, const CellIndex&) = default;
};

struct RobotState;

// Binary occupancy grid. Cell (col, row) has its center at
// origin + (col * resolution, row * resolution). Cells are stored row-major
// and the grid is immutable after construction.
class OccupancyGrid {
 public:
  // Throws Error(kInvalidArgument) when the invariants do not hold.
  OccupancyGrid(double resolution, int width, int height, Point2 origin,
                std::vector<bool> cells);

  // All-free grid.
  static OccupancyGrid Free(double resolution, int width, int height,
                            Point2 origin = {});

  double resolution() const { return resolution_; }
  int width() const { return width_; }
  int height() const { return height_; }
  Point2 origin() const { return origin_; }
  const std::vector<bool>& cells() const { return cells_; }

  bool InBounds(int col, int row) const {
    return col >= 0 && row >= 0 && col < width_ && row < height_;
  }
  // Precondition: InBounds(col, row).
  bool occupied(int col, int row) const {
    return cells_[static_cast<size_t>(row) * width_ + col];
  }
  int OccupiedCount() const;

  // Copy with a different occupancy vector of the same size.
  OccupancyGrid WithCells(std::vector<bool> cells) const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  double resolution_;
  int width_;
  int height_;
  Point2 origin_;
  std::vector<bool> cells_;
};

// Circular robot footprint.
struct Footprint {
  double radius = 0.45;
};

// Parses the ASCII map format: equal-length lines over {'#', '.'}, '#' is
// occupied, the first line is row 0. A single trailing newline is accepted.
// Throws kEmptyMap, kRaggedRows or kInvalidChar.
OccupancyGrid LoadMap(std::string_view text, double resolution = 1.0,
                      Point2 origin = {});

// Inverse of LoadMap (always terminates the last row with '\n').
std::string SerializeMap(const OccupancyGrid& grid);

// Nearest cell center, or nullopt when the point falls outside the grid.
std::optional<CellIndex> WorldToCell(const OccupancyGrid& grid, Point2 point);

// Center of an in-bounds cell; throws kOutOfBounds otherwise.
Point2 CellToWorld(const OccupancyGrid& grid, int col, int row);

// Marks every cell whose center lies within `radius` (inclusive) of an
// occupied cell center. Throws kInvalidArgument for a negative radius.
OccupancyGrid Inflate(const OccupancyGrid& grid, double radius);

// True iff the cell containing the pose is in bounds and every cell whose
// center lies within footprint.radius of the pose is in bounds and free.
bool IsPoseFree(const OccupancyGrid& grid, Point2 position,
                const Footprint& footprint);
bool IsPoseFree(const OccupancyGrid& grid, const RobotState& pose,
                const Footprint& footprint);

// Answers IsPoseFree for a fixed (grid, footprint) pair much faster by
// precomputing, per cell, the distance from its center to the nearest
// blocked center (occupied or outside the map). Poses in the ambiguous band
// fall back to the exact scan, so results always agree with IsPoseFree.
class CollisionChecker {
 public:
  CollisionChecker(const OccupancyGrid& grid, Footprint footprint);

  bool IsFree(Point2 position) const;
  bool IsFree(const RobotState& pose) const;

  const OccupancyGrid& grid() const { return grid_; }
  const Footprint& footprint() const { return footprint_; }

 private:
  OccupancyGrid grid_;
  Footprint footprint_;
  double clearance_cap_;
  std::vector<double> clearance_;
};

}  // namespace sharednav

#endif  // SHAREDNAV_WORLD_MODEL_H_
