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

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.h"
#include "sharednav/dynamics.h"
#include "sharednav/error.h"

namespace sharednav {
namespace {

using ::sharednav::testing::BruteForceInflate;
using ::sharednav::testing::RandomGrid;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return ErrorCode::kInvalidArgument;
}

OccupancyGrid SingleObstacle(int size, double res) {
  std::vector<bool> cells(static_cast<size_t>(size) * size, false);
  cells[static_cast<size_t>(size / 2) * size + size / 2] = true;
  return OccupancyGrid(res, size, size, {}, cells);
}

TEST(LoadMapTest, AllFree) {
  const OccupancyGrid g = LoadMap("..\n..");
  EXPECT_EQ(g.width(), 2);
  EXPECT_EQ(g.height(), 2);
  EXPECT_EQ(g.OccupiedCount(), 0);
}

TEST(LoadMapTest, SingleOccupiedCell) {
  const OccupancyGrid g = LoadMap(".#\n..");
  EXPECT_TRUE(g.occupied(1, 0));
  EXPECT_EQ(g.OccupiedCount(), 1);
}

TEST(LoadMapTest, Errors) {
  EXPECT_EQ(CodeOf([] { LoadMap(".\n.."); }), ErrorCode::kRaggedRows);
  EXPECT_EQ(CodeOf([] { LoadMap(""); }), ErrorCode::kEmptyMap);
  EXPECT_EQ(CodeOf([] { LoadMap(".x\n.."); }), ErrorCode::kInvalidChar);
  EXPECT_EQ(CodeOf([] { LoadMap("..\r\n..\r\n"); }), ErrorCode::kInvalidChar);
}

TEST(LoadMapTest, SerializeRoundTrip) {
  const std::string text = "#..#\n....\n.##.\n";
  EXPECT_EQ(SerializeMap(LoadMap(text)), text);
  // Without the trailing newline only that byte differs.
  EXPECT_EQ(SerializeMap(LoadMap("#.\n.#")), "#.\n.#\n");
}

TEST(OccupancyGridTest, RejectsBrokenInvariants) {
  EXPECT_EQ(CodeOf([] { OccupancyGrid(0.0, 1, 1, {}, {false}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { OccupancyGrid(1.0, 2, 1, {}, {false}); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(CodeOf([] { OccupancyGrid(1.0, 0, 1, {}, {}); }),
            ErrorCode::kInvalidArgument);
}

TEST(CoordinatesTest, Examples) {
  const OccupancyGrid g = OccupancyGrid::Free(0.1, 5, 4);
  EXPECT_EQ(WorldToCell(g, {0.0, 0.0}), (CellIndex{0, 0}));
  const Point2 p = CellToWorld(g, 3, 2);
  EXPECT_DOUBLE_EQ(p.x, 0.3);
  EXPECT_DOUBLE_EQ(p.y, 0.2);
  EXPECT_FALSE(WorldToCell(g, {-0.06, 0.0}).has_value());
  EXPECT_FALSE(WorldToCell(g, {0.0, 0.36}).has_value());
  EXPECT_EQ(CodeOf([&] { CellToWorld(g, 5, 0); }), ErrorCode::kOutOfBounds);
}

TEST(CoordinatesTest, RoundTripEveryCell) {
  const OccupancyGrid g = OccupancyGrid::Free(0.05, 17, 9, {-1.3, 2.7});
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      EXPECT_EQ(WorldToCell(g, CellToWorld(g, c, r)), (CellIndex{c, r}));
    }
  }
}

TEST(InflateTest, ZeroRadiusIsIdentity) {
  std::mt19937_64 rng(3);
  const OccupancyGrid g = RandomGrid(rng, 12, 9, 0.1, 0.3);
  EXPECT_EQ(Inflate(g, 0.0), g);
}

TEST(InflateTest, RadiusOneCellGivesPlus) {
  const OccupancyGrid out = Inflate(SingleObstacle(3, 0.1), 0.1);
  EXPECT_EQ(SerializeMap(out), ".#.\n###\n.#.\n");
  EXPECT_EQ(out, BruteForceInflate(SingleObstacle(3, 0.1), 0.1));
}

TEST(InflateTest, RadiusOneAndHalfCellsAddsDiagonals) {
  const OccupancyGrid out = Inflate(SingleObstacle(5, 0.1), 0.15);
  EXPECT_EQ(SerializeMap(out), ".....\n.###.\n.###.\n.###.\n.....\n");
  EXPECT_EQ(out, BruteForceInflate(SingleObstacle(5, 0.1), 0.15));
}

TEST(InflateTest, NegativeRadiusRejected) {
  EXPECT_EQ(CodeOf([] { Inflate(OccupancyGrid::Free(1.0, 2, 2), -0.1); }),
            ErrorCode::kInvalidArgument);
}

TEST(InflateTest, MatchesBruteForceAndIsMonotone) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const OccupancyGrid g = RandomGrid(rng, 14, 11, 0.25, 0.08);
    const OccupancyGrid* prev = nullptr;
    std::vector<OccupancyGrid> outs;
    for (double r : {0.0, 0.2, 0.25, 0.4, 0.6}) {
      outs.push_back(Inflate(g, r));
      EXPECT_EQ(outs.back(), BruteForceInflate(g, r)) << "radius " << r;
    }
    for (size_t i = 1; i < outs.size(); ++i) {
      prev = &outs[i - 1];
      for (size_t c = 0; c < g.cells().size(); ++c) {
        if (prev->cells()[c]) {
          EXPECT_TRUE(outs[i].cells()[c]);
        }
      }
    }
  }
}

TEST(IsPoseFreeTest, EmptyWorld) {
  const OccupancyGrid g = OccupancyGrid::Free(1.0, 10, 10);
  EXPECT_TRUE(IsPoseFree(g, RobotState{4.5, 4.5, 0.0}, Footprint{1.0}));
}

TEST(IsPoseFreeTest, OccupiedContainingCell) {
  const OccupancyGrid g = SingleObstacle(5, 1.0);
  EXPECT_FALSE(IsPoseFree(g, RobotState{2.2, 1.9, 0.0}, Footprint{0.1}));
}

TEST(IsPoseFreeTest, DistanceArithmetic) {
  // Obstacle center at (1.0, 1.0); the pose is 0.4 m away in a free cell.
  const OccupancyGrid g = SingleObstacle(21, 0.1);
  const RobotState pose{1.4, 1.0, 0.0};
  EXPECT_FALSE(IsPoseFree(g, pose, Footprint{0.5}));
  EXPECT_TRUE(IsPoseFree(g, pose, Footprint{0.3}));
}

TEST(IsPoseFreeTest, OutOfBoundsIsNotFree) {
  const OccupancyGrid g = OccupancyGrid::Free(1.0, 4, 4);
  EXPECT_FALSE(IsPoseFree(g, RobotState{-0.6, 1.0, 0.0}, Footprint{0.1}));
  // Disc reaches a center beyond the edge.
  EXPECT_FALSE(IsPoseFree(g, RobotState{0.2, 1.0, 0.0}, Footprint{1.3}));
  EXPECT_TRUE(IsPoseFree(g, RobotState{0.2, 1.0, 0.0}, Footprint{1.1}));
}

TEST(IsPoseFreeTest, InflationDualityAtCellCenters) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const OccupancyGrid g = RandomGrid(rng, 16, 12, 0.1, 0.1);
    for (double radius : {0.1, 0.15, 0.3}) {
      const OccupancyGrid inflated = Inflate(g, radius);
      // Away from the border so that out-of-bounds centers do not matter.
      const int margin = static_cast<int>(std::ceil(radius / 0.1));
      for (int r = margin; r < g.height() - margin; ++r) {
        for (int c = margin; c < g.width() - margin; ++c) {
          const Point2 p = CellToWorld(g, c, r);
          EXPECT_EQ(IsPoseFree(g, p, Footprint{radius}),
                    !inflated.occupied(c, r));
        }
      }
    }
  }
}

TEST(CollisionCheckerTest, AgreesWithExactCheck) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const OccupancyGrid g = RandomGrid(rng, 20, 15, 0.1, 0.05 + 0.05 * trial);
    for (double radius : {0.05, 0.1, 0.25, 0.45}) {
      const CollisionChecker checker(g, Footprint{radius});
      for (int i = 0; i < 400; ++i) {
        const Point2 p{-0.2 + 2.3 * unit(rng), -0.2 + 1.8 * unit(rng)};
        ASSERT_EQ(checker.IsFree(p), IsPoseFree(g, p, Footprint{radius}))
            << p.x << "," << p.y << " r=" << radius;
      }
      // Exact-tie poses: cell centers and points exactly radius away.
      for (int r = 0; r < g.height(); ++r) {
        for (int c = 0; c < g.width(); ++c) {
          const Point2 center = CellToWorld(g, c, r);
          const Point2 shifted{center.x + radius, center.y};
          ASSERT_EQ(checker.IsFree(center), IsPoseFree(g, center, Footprint{radius}));
          ASSERT_EQ(checker.IsFree(shifted),
                    IsPoseFree(g, shifted, Footprint{radius}));
        }
      }
    }
  }
}

}  // namespace
}  // namespace sharednav
