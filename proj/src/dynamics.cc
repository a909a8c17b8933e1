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

#include "sharednav/dynamics.h"

#include <algorithm>
#include <cmath>

#include "sharednav/angles.h"
#include "sharednav/error.h"

namespace sharednav {
namespace {

void CheckDt(double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDt, "dt must be > 0");
  }
}

}  // namespace

RobotState Step(const RobotState& s, const ControlInput& u, double dt) {
  CheckDt(dt);
  RobotState next = s;
  if (std::abs(u.w) < kStraightLineOmega) {
    next.x += u.v * std::cos(s.heading) * dt;
    next.y += u.v * std::sin(s.heading) * dt;
    next.heading = WrapAngle(s.heading);
    return next;
  }
  next.heading = WrapAngle(s.heading + u.w * dt);
  const double radius = u.v / u.w;
  next.x += radius * (std::sin(next.heading) - std::sin(s.heading));
  next.y -= radius * (std::cos(next.heading) - std::cos(s.heading));
  return next;
}

std::vector<RobotState> Rollout(const RobotState& s0,
                                std::span<const ControlInput> u_seq,
                                double dt) {
  if (u_seq.empty()) {
    throw Error(ErrorCode::kEmptyControlSequence, "rollout needs T >= 1");
  }
  CheckDt(dt);
  std::vector<RobotState> states;
  states.reserve(u_seq.size() + 1);
  states.push_back(s0);
  for (const ControlInput& u : u_seq) {
    states.push_back(Step(states.back(), u, dt));
  }
  return states;
}

ControlInput Clamp(const ControlInput& u, const ControlLimits& limits) {
  return {std::clamp(u.v, limits.v_min, limits.v_max),
          std::clamp(u.w, -limits.w_max, limits.w_max)};
}

ChannelVoltages CmdToVoltage(double forward, double turn) {
  auto to_volts = [](double u) {
    // NaN maps to the rest voltage.
    const double clipped = std::isnan(u) ? 0.0 : std::clamp(u, -1.0, 1.0);
    return kVoltageMid + kVoltageSpan * clipped;
  };
  return {to_volts(forward), to_volts(turn)};
}

ActuatorModel::ActuatorModel(PidGains gains, double tau)
    : gains_(gains), tau_(tau) {
  if (!(tau_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "actuator tau must be > 0");
  }
  if (gains_.kp < 0.0 || gains_.ki < 0.0 || gains_.kd < 0.0) {
    throw Error(ErrorCode::kInvalidArgument, "PID gains must be >= 0");
  }
}

double ActuatorModel::StepChannel(Channel& ch, double setpoint, double value,
                                  double dt, double* effort) const {
  const double error = setpoint - value;
  ch.integral += error * dt;
  const double derivative = (error - ch.prev_error) / dt;
  ch.prev_error = error;
  *effort = gains_.kp * error + gains_.ki * ch.integral +
            gains_.kd * derivative;
  return value + (dt / tau_) * (*effort - value);
}

ActuatorModel::Output ActuatorModel::Step(const ControlInput& setpoint,
                                          const ControlInput& achieved,
                                          double dt) {
  CheckDt(dt);
  Output out;
  out.achieved.v = StepChannel(v_, setpoint.v, achieved.v, dt, &out.effort.v);
  out.achieved.w = StepChannel(w_, setpoint.w, achieved.w, dt, &out.effort.w);
  return out;
}

void ActuatorModel::Reset() {
  v_ = Channel{};
  w_ = Channel{};
}

}  // namespace sharednav
