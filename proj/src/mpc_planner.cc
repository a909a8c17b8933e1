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

#include "sharednav/mpc_planner.h"

#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "sharednav/angles.h"
#include "sharednav/error.h"

namespace sharednav {

void ValidatePlannerConfig(const PlannerConfig& config) {
  std::string problem;
  if (config.horizon < 1) problem = "horizon must be >= 1";
  else if (config.samples < 1) problem = "samples must be >= 1";
  else if (config.iterations < 1) problem = "iterations must be >= 1";
  else if (!(config.dt > 0.0)) problem = "dt must be > 0";
  else if (!(config.sigma_v >= 0.0) || !(config.sigma_w >= 0.0)) {
    problem = "noise sigmas must be >= 0";
  }
  if (!problem.empty()) throw Error(ErrorCode::kConfigInvalid, problem);
}

double TotalCost(std::span<const RobotState> states,
                 std::span<const RobotState> reference,
                 std::span<const ControlInput> u_seq,
                 const CostWeights& weights) {
  if (states.size() != reference.size() ||
      states.size() != u_seq.size() + 1) {
    throw Error(ErrorCode::kLengthMismatch,
                "cost needs T+1 states, T+1 reference states and T inputs");
  }
  double cost = 0.0;
  for (size_t t = 0; t < states.size(); ++t) {
    const double dx = states[t].x - reference[t].x;
    const double dy = states[t].y - reference[t].y;
    const double dh = WrapAngle(states[t].heading - reference[t].heading);
    cost += weights.q_pos * (dx * dx + dy * dy) + weights.q_heading * dh * dh;
  }
  for (const ControlInput& u : u_seq) {
    cost += weights.r_v * u.v * u.v + weights.r_w * u.w * u.w;
  }
  return cost;
}

bool IsFeasible(std::span<const RobotState> states,
                const CollisionChecker& checker) {
  for (const RobotState& s : states) {
    if (!checker.IsFree(s)) return false;
  }
  return true;
}

bool IsFeasible(std::span<const RobotState> states, const OccupancyGrid& grid,
                const Footprint& footprint) {
  for (const RobotState& s : states) {
    if (!IsPoseFree(grid, s, footprint)) return false;
  }
  return true;
}

namespace {

// Rolls out into `states` (pre-sized to T+1), returning false as soon as a
// state leaves free space.
bool RolloutFeasible(const RobotState& s0, std::span<const ControlInput> u,
                     double dt, const CollisionChecker& checker,
                     std::vector<RobotState>& states) {
  states[0] = s0;
  if (!checker.IsFree(s0)) return false;
  for (size_t t = 0; t < u.size(); ++t) {
    states[t + 1] = Step(states[t], u[t], dt);
    if (!checker.IsFree(states[t + 1])) return false;
  }
  return true;
}

}  // namespace

PlanResult Solve(const RobotState& s0, const ReferenceTrajectory& reference,
                 const CollisionChecker& checker, const CostWeights& weights,
                 const ControlLimits& limits, const PlannerConfig& config,
                 const std::optional<std::vector<ControlInput>>& warm_start) {
  ValidatePlannerConfig(config);
  const size_t horizon = static_cast<size_t>(config.horizon);
  if (reference.states.size() != horizon + 1) {
    throw Error(ErrorCode::kLengthMismatch,
                "reference must hold horizon + 1 states");
  }
  if (warm_start && warm_start->size() != horizon) {
    throw Error(ErrorCode::kLengthMismatch,
                "warm start must hold horizon controls");
  }

  std::vector<ControlInput> seed(horizon);
  if (warm_start) {
    for (size_t t = 0; t < horizon; ++t) {
      seed[t] = Clamp((*warm_start)[t], limits);
    }
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<RobotState> states(horizon + 1);
  std::vector<ControlInput> best = seed;
  double best_cost = kInf;
  if (RolloutFeasible(s0, seed, config.dt, checker, states)) {
    best_cost = TotalCost(states, reference.states, seed, weights);
  }

  std::mt19937_64 rng(config.rng_seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<ControlInput> candidate(horizon);
  for (int iter = 0; iter < config.iterations; ++iter) {
    // Every sample of this iteration perturbs the same center.
    const std::vector<ControlInput> center = best;
    for (int k = 0; k < config.samples; ++k) {
      for (size_t t = 0; t < horizon; ++t) {
        const double dv = config.sigma_v * normal(rng);
        const double dw = config.sigma_w * normal(rng);
        candidate[t] =
            Clamp({center[t].v + dv, center[t].w + dw}, limits);
      }
      if (!RolloutFeasible(s0, candidate, config.dt, checker, states)) {
        continue;
      }
      const double cost = TotalCost(states, reference.states, candidate,
                                    weights);
      if (cost < best_cost) {
        best_cost = cost;
        best = candidate;
      }
    }
  }

  PlanResult result;
  result.feasible = best_cost < kInf;
  result.u_star =
      result.feasible ? best : std::vector<ControlInput>(horizon);
  result.predicted = Rollout(s0, result.u_star, config.dt);
  result.cost = result.feasible ? best_cost : kInf;
  return result;
}

PlanResult Solve(const RobotState& s0, const ReferenceTrajectory& reference,
                 const OccupancyGrid& grid, const Footprint& footprint,
                 const CostWeights& weights, const ControlLimits& limits,
                 const PlannerConfig& config,
                 const std::optional<std::vector<ControlInput>>& warm_start) {
  return Solve(s0, reference, CollisionChecker(grid, footprint), weights,
               limits, config, warm_start);
}

std::vector<ControlInput> ShiftWarmStart(
    std::span<const ControlInput> u_prev) {
  if (u_prev.empty()) {
    throw Error(ErrorCode::kEmptySequence, "warm start is empty");
  }
  std::vector<ControlInput> shifted(u_prev.begin() + 1, u_prev.end());
  shifted.push_back(u_prev.back());
  return shifted;
}

}  // namespace sharednav
