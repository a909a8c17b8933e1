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

#include "sharednav/world_model.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "sharednav/dynamics.h"
#include "sharednav/error.h"

namespace sharednav {
namespace {

// Distances are compared in cell units with this slack so that centers
// sitting exactly on the footprint boundary count as inside on every route
// (Inflate, IsPoseFree, CollisionChecker) despite rounding.
constexpr double kTieSlack = 1e-9;

struct GridCoords {
  double u;  // column coordinate, cell units
  double v;  // row coordinate, cell units
};

GridCoords ToGridCoords(const OccupancyGrid& grid, Point2 p) {
  return {(p.x - grid.origin().x) / grid.resolution(),
          (p.y - grid.origin().y) / grid.resolution()};
}

int NearestIndex(double coord) {
  return static_cast<int>(std::floor(coord + 0.5));
}

bool ExactScanFree(const OccupancyGrid& grid, GridCoords p, double radius) {
  // The cell under the pose counts even when its center is out of reach.
  const int home_col = NearestIndex(p.u);
  const int home_row = NearestIndex(p.v);
  if (!grid.InBounds(home_col, home_row) || grid.occupied(home_col, home_row)) {
    return false;
  }
  const double r_cells = radius / grid.resolution();
  const double limit = r_cells * r_cells + kTieSlack;
  const int c_lo = static_cast<int>(std::floor(p.u - r_cells)) - 1;
  const int c_hi = static_cast<int>(std::ceil(p.u + r_cells)) + 1;
  const int r_lo = static_cast<int>(std::floor(p.v - r_cells)) - 1;
  const int r_hi = static_cast<int>(std::ceil(p.v + r_cells)) + 1;
  for (int row = r_lo; row <= r_hi; ++row) {
    const double dv = row - p.v;
    for (int col = c_lo; col <= c_hi; ++col) {
      const double du = col - p.u;
      if (du * du + dv * dv > limit) continue;
      if (!grid.InBounds(col, row) || grid.occupied(col, row)) return false;
    }
  }
  return true;
}

}  // namespace

OccupancyGrid::OccupancyGrid(double resolution, int width, int height,
                             Point2 origin, std::vector<bool> cells)
    : resolution_(resolution),
      width_(width),
      height_(height),
      origin_(origin),
      cells_(std::move(cells)) {
  if (!(resolution_ > 0.0) || !std::isfinite(resolution_)) {
    throw Error(ErrorCode::kInvalidArgument, "resolution must be > 0");
  }
  if (width_ < 1 || height_ < 1) {
    throw Error(ErrorCode::kInvalidArgument, "grid must be at least 1x1");
  }
  if (cells_.size() != static_cast<size_t>(width_) * height_) {
    throw Error(ErrorCode::kInvalidArgument,
                "cell count does not match width x height");
  }
}

OccupancyGrid OccupancyGrid::Free(double resolution, int width, int height,
                                  Point2 origin) {
  return OccupancyGrid(resolution, width, height, origin,
                       std::vector<bool>(static_cast<size_t>(width) * height));
}

int OccupancyGrid::OccupiedCount() const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), true));
}

OccupancyGrid OccupancyGrid::WithCells(std::vector<bool> cells) const {
  return OccupancyGrid(resolution_, width_, height_, origin_,
                       std::move(cells));
}

OccupancyGrid LoadMap(std::string_view text, double resolution,
                      Point2 origin) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (text.empty()) throw Error(ErrorCode::kEmptyMap, "map text is empty");

  std::vector<bool> cells;
  int width = -1;
  int height = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = text.substr(pos, end - pos);
    if (width < 0) {
      width = static_cast<int>(line.size());
      if (width == 0) throw Error(ErrorCode::kEmptyMap, "first row is empty");
    } else if (static_cast<int>(line.size()) != width) {
      throw Error(ErrorCode::kRaggedRows,
                  "row " + std::to_string(height) + " has length " +
                      std::to_string(line.size()) + ", expected " +
                      std::to_string(width));
    }
    for (size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (c == '#') {
        cells.push_back(true);
      } else if (c == '.') {
        cells.push_back(false);
      } else {
        throw Error(ErrorCode::kInvalidChar,
                    "unexpected character at row " + std::to_string(height) +
                        ", column " + std::to_string(i));
      }
    }
    ++height;
    pos = end + 1;
  }
  return OccupancyGrid(resolution, width, height, origin, std::move(cells));
}

std::string SerializeMap(const OccupancyGrid& grid) {
  std::string out;
  out.reserve(static_cast<size_t>(grid.width() + 1) * grid.height());
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      out.push_back(grid.occupied(col, row) ? '#' : '.');
    }
    out.push_back('\n');
  }
  return out;
}

std::optional<CellIndex> WorldToCell(const OccupancyGrid& grid, Point2 point) {
  const GridCoords g = ToGridCoords(grid, point);
  if (!std::isfinite(g.u) || !std::isfinite(g.v)) return std::nullopt;
  const int col = NearestIndex(g.u);
  const int row = NearestIndex(g.v);
  if (!grid.InBounds(col, row)) return std::nullopt;
  return CellIndex{col, row};
}

Point2 CellToWorld(const OccupancyGrid& grid, int col, int row) {
  if (!grid.InBounds(col, row)) {
    throw Error(ErrorCode::kOutOfBounds,
                "cell (" + std::to_string(col) + ", " + std::to_string(row) +
                    ") is outside the grid");
  }
  return {grid.origin().x + col * grid.resolution(),
          grid.origin().y + row * grid.resolution()};
}

OccupancyGrid Inflate(const OccupancyGrid& grid, double radius) {
  if (!(radius >= 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "inflation radius must be >= 0");
  }
  if (radius == 0.0) return grid;

  const double r_cells = radius / grid.resolution();
  const double limit = r_cells * r_cells + kTieSlack;
  const int reach = static_cast<int>(std::floor(r_cells)) + 1;

  // Precompute the disc stencil once.
  std::vector<std::pair<int, int>> stencil;
  for (int dr = -reach; dr <= reach; ++dr) {
    for (int dc = -reach; dc <= reach; ++dc) {
      if (static_cast<double>(dc * dc + dr * dr) <= limit) {
        stencil.emplace_back(dc, dr);
      }
    }
  }

  std::vector<bool> out(grid.cells().size(), false);
  for (int row = 0; row < grid.height(); ++row) {
    for (int col = 0; col < grid.width(); ++col) {
      if (!grid.occupied(col, row)) continue;
      for (const auto& [dc, dr] : stencil) {
        const int c = col + dc;
        const int r = row + dr;
        if (grid.InBounds(c, r)) {
          out[static_cast<size_t>(r) * grid.width() + c] = true;
        }
      }
    }
  }
  return grid.WithCells(std::move(out));
}

bool IsPoseFree(const OccupancyGrid& grid, Point2 position,
                const Footprint& footprint) {
  if (!WorldToCell(grid, position)) return false;
  return ExactScanFree(grid, ToGridCoords(grid, position), footprint.radius);
}

bool IsPoseFree(const OccupancyGrid& grid, const RobotState& pose,
                const Footprint& footprint) {
  return IsPoseFree(grid, Point2{pose.x, pose.y}, footprint);
}

CollisionChecker::CollisionChecker(const OccupancyGrid& grid,
                                   Footprint footprint)
    : grid_(grid), footprint_(footprint) {
  const double r_cells = footprint_.radius / grid_.resolution();
  clearance_cap_ = r_cells + 2.0;
  const int reach = static_cast<int>(std::ceil(clearance_cap_));
  clearance_.assign(grid_.cells().size(), clearance_cap_);
  for (int row = 0; row < grid_.height(); ++row) {
    for (int col = 0; col < grid_.width(); ++col) {
      double best_sq = clearance_cap_ * clearance_cap_;
      for (int dr = -reach; dr <= reach; ++dr) {
        for (int dc = -reach; dc <= reach; ++dc) {
          const double d_sq = static_cast<double>(dc * dc + dr * dr);
          if (d_sq >= best_sq) continue;
          const int c = col + dc;
          const int r = row + dr;
          if (!grid_.InBounds(c, r) || grid_.occupied(c, r)) best_sq = d_sq;
        }
      }
      clearance_[static_cast<size_t>(row) * grid_.width() + col] =
          std::sqrt(best_sq);
    }
  }
}

bool CollisionChecker::IsFree(Point2 position) const {
  const GridCoords g = ToGridCoords(grid_, position);
  if (!std::isfinite(g.u) || !std::isfinite(g.v)) return false;
  const int col = NearestIndex(g.u);
  const int row = NearestIndex(g.v);
  if (!grid_.InBounds(col, row)) return false;

  const double r_cells = footprint_.radius / grid_.resolution();
  const double reach = std::sqrt(r_cells * r_cells + kTieSlack);
  const double offset = std::hypot(g.u - col, g.v - row);
  const double clearance =
      clearance_[static_cast<size_t>(row) * grid_.width() + col];
  // clearance is a lower bound on the true value only when capped.
  if (clearance - offset > reach + kTieSlack) return true;
  if (clearance < clearance_cap_ && clearance + offset < r_cells - kTieSlack) {
    return false;
  }
  return ExactScanFree(grid_, g, footprint_.radius);
}

bool CollisionChecker::IsFree(const RobotState& pose) const {
  return IsFree(Point2{pose.x, pose.y});
}

}  // namespace sharednav
