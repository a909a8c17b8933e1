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

#include "sharednav/simulator.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "sharednav/angles.h"
#include "sharednav/error.h"

namespace sharednav {
namespace {

constexpr uint64_t kPlannerStream = 1;
constexpr uint64_t kUserStream = 2;

// Slack for comparing accumulated-looking times (k * dt) against schedule
// times written in decimal.
constexpr double kTimeSlack = 1e-9;

uint64_t Mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

std::string_view TickEventName(TickEvent event) {
  switch (event) {
    case TickEvent::kNone: return "";
    case TickEvent::kCollision: return "collision";
    case TickEvent::kGoalReached: return "goal_reached";
    case TickEvent::kTimeout: return "timeout";
    case TickEvent::kPlannerInfeasible: return "planner_infeasible";
  }
  return "";
}

double TrajectoryLength(std::span<const RobotState> states) {
  if (states.empty()) {
    throw Error(ErrorCode::kEmptyTrajectory, "trajectory has no states");
  }
  double length = 0.0;
  for (size_t i = 1; i < states.size(); ++i) {
    length += std::hypot(states[i].x - states[i - 1].x,
                         states[i].y - states[i - 1].y);
  }
  return length;
}

double AngleDiffSum(std::span<const RobotState> states) {
  if (states.empty()) {
    throw Error(ErrorCode::kEmptyTrajectory, "trajectory has no states");
  }
  double sum = 0.0;
  for (size_t i = 1; i < states.size(); ++i) {
    sum += std::abs(WrapAngle(states[i].heading - states[i - 1].heading));
  }
  return sum;
}

ControlInput PursuitUser(const RobotState& state, Point2 goal, double noise,
                         std::mt19937_64& rng, const ControlLimits& limits) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double bearing = std::atan2(goal.y - state.y, goal.x - state.x);
  const double delta = WrapAngle(bearing - state.heading) + noise * normal(rng);
  return {limits.v_max * std::clamp(std::cos(delta), 0.0, 1.0),
          std::clamp(2.0 * delta, -limits.w_max, limits.w_max)};
}

uint64_t DeriveSeed(uint64_t seed, uint64_t stream, uint64_t index) {
  return Mix64(Mix64(Mix64(seed) ^ stream) ^ index);
}

Simulation::Simulation(Scenario scenario, uint64_t seed)
    : scenario_((ValidateScenario(scenario), std::move(scenario))),
      seed_(seed),
      inflated_(Inflate(scenario_.map, scenario_.footprint.radius)),
      raw_checker_(scenario_.map, scenario_.footprint),
      buffer_(scenario_.window),
      user_rng_(DeriveSeed(seed, kUserStream, 0)),
      state_(scenario_.start) {
  state_.heading = WrapAngle(state_.heading);
  try {
    path_ = Plan(inflated_, {state_.x, state_.y}, scenario_.goal);
  } catch (const Error& e) {
    throw Error(ErrorCode::kScenarioInvalid,
                std::string("no global plan: ") + e.what());
  }
  if (scenario_.actuator.enabled) {
    actuator_.emplace(scenario_.actuator.gains, scenario_.actuator.tau);
  }
}

double Simulation::time() const { return tick_ * scenario_.planner.dt; }

void Simulation::set_lambda(double lambda) {
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::kNonPositiveLambda, "lambda must be > 0");
  }
  scenario_.lambda = lambda;
}

void Simulation::InjectCommand(double stamp, const ControlInput& u) {
  buffer_.Record(stamp, u);
  ++user_effort_;
}

void Simulation::PollUser(double now) {
  const UserModelSpec& user = scenario_.user;
  switch (user.kind) {
    case UserModelSpec::Kind::kSilent:
      break;
    case UserModelSpec::Kind::kTape:
      while (tape_cursor_ < user.tape.size() &&
             user.tape[tape_cursor_].t <= now + kTimeSlack) {
        const TimedCommand& c = user.tape[tape_cursor_++];
        InjectCommand(std::min(c.t, now), c.u);
      }
      break;
    case UserModelSpec::Kind::kPursuit:
      while (pursuit_emitted_ * user.period <= now + kTimeSlack) {
        InjectCommand(now, PursuitUser(state_, scenario_.goal, user.noise,
                                       user_rng_, scenario_.limits));
        ++pursuit_emitted_;
      }
      break;
  }
}

void Simulation::Replan() {
  try {
    path_ = Plan(inflated_, {state_.x, state_.y}, scenario_.goal);
  } catch (const Error&) {
    // Keep following the previous plan.
  }
}

ControlInput Simulation::Decide(double now, TickRecord& rec) {
  const PlannerConfig& pc = scenario_.planner;
  rec.k = buffer_.CountRecent(now);
  detail_.global_ref =
      SampleReference(path_, state_, pc.horizon, pc.dt, scenario_.v_ref);
  detail_.user_ref = UserReference(state_, buffer_, now, pc.horizon, pc.dt);

  if (scenario_.mode == Mode::kManual) {
    rec.theta = 1.0;
    const auto latest = buffer_.LatestInWindow(now);
    const ControlInput u = latest ? Clamp(*latest, scenario_.limits)
                                  : ControlInput{};
    detail_.blended_ref = detail_.user_ref.value_or(detail_.global_ref);
    const std::vector<ControlInput> held(static_cast<size_t>(pc.horizon), u);
    detail_.predicted = Rollout(state_, held, pc.dt);
    return u;
  }

  if (scenario_.mode == Mode::kAutonomous) {
    rec.theta = 0.0;
    detail_.blended_ref = detail_.global_ref;
  } else {
    const BlendWeight bw = ComputeBlendWeight(rec.k, scenario_.lambda);
    rec.theta = bw.theta;
    detail_.blended_ref =
        detail_.user_ref
            ? BlendReference(*detail_.user_ref, detail_.global_ref, bw.theta)
            : detail_.global_ref;
  }

  PlannerConfig config = pc;
  config.rng_seed =
      DeriveSeed(seed_, kPlannerStream, static_cast<uint64_t>(tick_));
  const PlanResult plan =
      Solve(state_, detail_.blended_ref, raw_checker_, scenario_.weights,
            scenario_.limits, config, warm_start_);
  rec.feasible = plan.feasible;
  detail_.predicted = plan.predicted;
  if (plan.feasible) {
    infeasible_streak_ = 0;
  } else if (++infeasible_streak_ >= kReplanAfterInfeasible) {
    Replan();
    infeasible_streak_ = 0;
  }
  warm_start_ = ShiftWarmStart(plan.u_star);
  return plan.u_star.front();
}

const TickRecord& Simulation::Tick() {
  if (done_) throw Error(ErrorCode::kInvalidArgument, "simulation finished");
  const double now = time();
  const double dt = scenario_.planner.dt;
  PollUser(now);

  TickRecord rec;
  rec.mode = scenario_.mode;
  ControlInput applied = Decide(now, rec);
  if (actuator_) {
    achieved_ = actuator_->Step(applied, achieved_, dt).achieved;
    applied = achieved_;
  }
  rec.u = applied;
  state_ = Step(state_, applied, dt);
  ++tick_;
  rec.t = time();
  rec.state = state_;
  buffer_.Evict(now);

  if (!raw_checker_.IsFree(state_)) {
    rec.event = TickEvent::kCollision;
    collisions_ = 1;
    done_ = true;
  } else if (std::hypot(state_.x - scenario_.goal.x,
                        state_.y - scenario_.goal.y) <=
             scenario_.goal_tolerance) {
    rec.event = TickEvent::kGoalReached;
    success_ = true;
    done_ = true;
  } else if (rec.t >= scenario_.timeout - kTimeSlack) {
    rec.event = TickEvent::kTimeout;
    done_ = true;
  } else if (!rec.feasible) {
    rec.event = TickEvent::kPlannerInfeasible;
  }
  records_.push_back(rec);
  return records_.back();
}

MetricsReport Simulation::Metrics() const {
  std::vector<RobotState> states;
  states.reserve(records_.size() + 1);
  states.push_back(scenario_.start);
  states.front().heading = WrapAngle(states.front().heading);
  for (const TickRecord& r : records_) states.push_back(r.state);

  MetricsReport m;
  m.completion_time = records_.empty() ? 0.0 : records_.back().t;
  m.success = success_;
  m.collision_count = collisions_;
  m.trajectory_length = TrajectoryLength(states);
  m.angle_diff_sum = AngleDiffSum(states);
  m.user_effort = user_effort_;
  return m;
}

RunResult Run(const Scenario& scenario, uint64_t seed) {
  Simulation sim(scenario, seed);
  while (!sim.done()) sim.Tick();
  return {sim.Metrics(), sim.records()};
}

std::string FormatTickLog(std::span<const TickRecord> ticks) {
  std::string out = "t,x,y,heading,v,w,theta,k,mode,feasible,event\n";
  char buf[512];
  for (const TickRecord& r : ticks) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%s,%s,%s\n",
                  r.t, r.state.x, r.state.y, r.state.heading, r.u.v, r.u.w,
                  r.theta, r.k, std::string(ModeName(r.mode)).c_str(),
                  r.feasible ? "true" : "false",
                  std::string(TickEventName(r.event)).c_str());
    out += buf;
  }
  return out;
}

std::string FormatMetricsJson(const MetricsReport& m) {
  nlohmann::ordered_json j;
  j["completion_time"] = m.completion_time;
  j["success"] = m.success;
  j["collision_count"] = m.collision_count;
  j["trajectory_length"] = m.trajectory_length;
  j["angle_diff_sum"] = m.angle_diff_sum;
  j["user_effort"] = m.user_effort;
  return j.dump(2) + "\n";
}

}  // namespace sharednav
