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

#ifndef SHAREDNAV_SIMULATOR_H_
#define SHAREDNAV_SIMULATOR_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sharednav/dynamics.h"
#include "sharednav/global_planner.h"
#include "sharednav/intent_blend.h"
#include "sharednav/mpc_planner.h"
#include "sharednav/scenario.h"
#include "sharednav/world_model.h"

namespace sharednav {

enum class TickEvent { kNone, kCollision, kGoalReached, kTimeout, kPlannerInfeasible };

std::string_view TickEventName(TickEvent event);  // "" for kNone

struct MetricsReport {
  double completion_time = 0.0;
  bool success = false;
  int collision_count = 0;
  double trajectory_length = 0.0;
  double angle_diff_sum = 0.0;
  int user_effort = 0;

  friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

// One control period. t is the time at the end of the period and state the
// pose reached then; u, theta and k are what was decided at its start.
struct TickRecord {
  double t = 0.0;
  RobotState state;
  ControlInput u;
  double theta = 0.0;
  int k = 0;
  Mode mode = Mode::kShared;
  bool feasible = true;
  TickEvent event = TickEvent::kNone;
};

// References and prediction behind the latest tick, for live display.
struct TickDetail {
  ReferenceTrajectory global_ref;
  std::optional<ReferenceTrajectory> user_ref;
  ReferenceTrajectory blended_ref;
  std::vector<RobotState> predicted;
};

// Sum of Euclidean distances between consecutive states.
// Throws kEmptyTrajectory.
double TrajectoryLength(std::span<const RobotState> states);

// Sum of |wrap(h[i+1] - h[i])|. Throws kEmptyTrajectory.
double AngleDiffSum(std::span<const RobotState> states);

// Scripted operator steering straight at the goal: delta is the wrapped
// bearing error plus N(0, noise) heading noise, v = v_max * clip(cos delta,
// 0, 1), w = clip(2 * delta, +-w_max). One normal draw per call.
ControlInput PursuitUser(const RobotState& state, Point2 goal, double noise,
                         std::mt19937_64& rng, const ControlLimits& limits);

// Stateless seed derivation so that streams (planner per tick, operator
// noise) stay independent of each other and of the mode being run.
uint64_t DeriveSeed(uint64_t seed, uint64_t stream, uint64_t index);

// Receding-horizon closed loop for one scenario. Each Tick polls the user
// model, computes k and theta, dispatches on the mode, applies the optional
// actuator emulation, steps the dynamics and checks collision (raw map plus
// footprint), goal arrival and timeout, in that order.
class Simulation {
 public:
  // Throws kScenarioInvalid.
  Simulation(Scenario scenario, uint64_t seed);

  // Records a command received from outside (live session) with the given
  // timestamp; it counts toward k from the next tick on.
  void InjectCommand(double stamp, const ControlInput& u);

  // Advances one control period. Precondition: !done().
  const TickRecord& Tick();

  bool done() const { return done_; }
  // Decision time of the next tick.
  double time() const;
  int tick_index() const { return tick_; }
  const RobotState& state() const { return state_; }
  const Scenario& scenario() const { return scenario_; }
  const GlobalPath& global_path() const { return path_; }
  const std::vector<TickRecord>& records() const { return records_; }
  const TickDetail& last_detail() const { return detail_; }
  const UserCommandBuffer& buffer() const { return buffer_; }

  // Mode and lambda changes apply from the next tick on.
  void set_mode(Mode mode) { scenario_.mode = mode; }
  void set_lambda(double lambda);

  MetricsReport Metrics() const;

 private:
  void PollUser(double now);
  ControlInput Decide(double now, TickRecord& rec);
  void Replan();

  Scenario scenario_;
  uint64_t seed_;
  OccupancyGrid inflated_;
  CollisionChecker raw_checker_;
  GlobalPath path_;
  UserCommandBuffer buffer_;
  std::optional<ActuatorModel> actuator_;
  ControlInput achieved_;
  std::mt19937_64 user_rng_;
  size_t tape_cursor_ = 0;
  int pursuit_emitted_ = 0;
  int user_effort_ = 0;
  std::optional<std::vector<ControlInput>> warm_start_;
  int infeasible_streak_ = 0;
  RobotState state_;
  int tick_ = 0;
  bool done_ = false;
  bool success_ = false;
  int collisions_ = 0;
  std::vector<TickRecord> records_;
  TickDetail detail_;
};

// Consecutive infeasible planner ticks that trigger a global replan.
inline constexpr int kReplanAfterInfeasible = 5;

struct RunResult {
  MetricsReport metrics;
  std::vector<TickRecord> ticks;
};

// Runs the scenario to goal, collision or timeout. Bit-reproducible for a
// given seed. Throws kScenarioInvalid.
RunResult Run(const Scenario& scenario, uint64_t seed);

// Tick log: CSV with header
// t,x,y,heading,v,w,theta,k,mode,feasible,event and %.17g numbers.
std::string FormatTickLog(std::span<const TickRecord> ticks);

std::string FormatMetricsJson(const MetricsReport& metrics);

}  // namespace sharednav

#endif  // SHAREDNAV_SIMULATOR_H_
