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

#ifndef SHAREDNAV_MPC_PLANNER_H_
#define SHAREDNAV_MPC_PLANNER_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sharednav/dynamics.h"
#include "sharednav/global_planner.h"
#include "sharednav/world_model.h"

namespace sharednav {

// Diagonal state and input weights of the tracking cost.
struct CostWeights {
  double q_pos = 1.0;
  double q_heading = 0.1;
  double r_v = 0.05;
  double r_w = 0.05;
};

struct PlannerConfig {
  int horizon = 20;
  double dt = 0.1;
  int samples = 64;
  int iterations = 4;
  double sigma_v = 0.15;
  double sigma_w = 0.3;
  uint64_t rng_seed = 0;
};

// Throws kConfigInvalid when a PlannerConfig invariant is violated.
void ValidatePlannerConfig(const PlannerConfig& config);

struct PlanResult {
  std::vector<ControlInput> u_star;
  std::vector<RobotState> predicted;
  // +infinity when infeasible.
  double cost = 0.0;
  bool feasible = false;

  friend bool operator==(const PlanResult&, const PlanResult&) = default;
};

// sum_t q_pos * |p_t - ref_t|^2 + q_heading * wrap(h_t - ref_h_t)^2 over the
// T + 1 states, plus sum_t r_v * v_t^2 + r_w * w_t^2 over the T inputs.
// Throws kLengthMismatch.
double TotalCost(std::span<const RobotState> states,
                 std::span<const RobotState> reference,
                 std::span<const ControlInput> u_seq,
                 const CostWeights& weights);

bool IsFeasible(std::span<const RobotState> states,
                const CollisionChecker& checker);
bool IsFeasible(std::span<const RobotState> states, const OccupancyGrid& grid,
                const Footprint& footprint);

// Sampling-based shooting over control sequences. The (clamped) seed is
// evaluated first, then each iteration perturbs the current best with
// Gaussian noise, clamps, rolls out, rejects sequences leaving free space and
// keeps the lowest cost; the earliest candidate wins ties. When nothing
// feasible is ever found the result is an all-zero stop command with
// feasible = false. Identical inputs give bit-identical results.
// Throws kConfigInvalid or kLengthMismatch.
PlanResult Solve(const RobotState& s0, const ReferenceTrajectory& reference,
                 const CollisionChecker& checker, const CostWeights& weights,
                 const ControlLimits& limits, const PlannerConfig& config,
                 const std::optional<std::vector<ControlInput>>& warm_start =
                     std::nullopt);
PlanResult Solve(const RobotState& s0, const ReferenceTrajectory& reference,
                 const OccupancyGrid& grid, const Footprint& footprint,
                 const CostWeights& weights, const ControlLimits& limits,
                 const PlannerConfig& config,
                 const std::optional<std::vector<ControlInput>>& warm_start =
                     std::nullopt);

// Receding-horizon warm start: drops the first element and repeats the last.
// Throws kEmptySequence.
std::vector<ControlInput> ShiftWarmStart(std::span<const ControlInput> u_prev);

}  // namespace sharednav

#endif  // SHAREDNAV_MPC_PLANNER_H_
