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

#ifndef SHAREDNAV_DYNAMICS_H_
#define SHAREDNAV_DYNAMICS_H_

#include <span>
#include <vector>

namespace sharednav {

// Planar pose. heading is kept in (-pi, pi].
struct RobotState {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  friend bool operator==(const RobotState&, const RobotState&) = default;
};

// Twist command: linear velocity v (m/s) and angular velocity w (rad/s).
struct ControlInput {
  double v = 0.0;
  double w = 0.0;

  friend bool operator==(const ControlInput&, const ControlInput&) = default;
};

struct ControlLimits {
  double v_min = -0.3;
  double v_max = 1.0;
  double w_max = 1.0;
};

// Below this angular rate the straight-line limit of the arc update is used.
inline constexpr double kStraightLineOmega = 1e-9;

// Unicycle transition under a constant twist held for dt, integrated exactly
// along the arc. Throws kNonPositiveDt.
RobotState Step(const RobotState& s, const ControlInput& u, double dt);

// States s0..sT obtained by folding Step over u_seq. Throws
// kEmptyControlSequence or kNonPositiveDt.
std::vector<RobotState> Rollout(const RobotState& s0,
                                std::span<const ControlInput> u_seq,
                                double dt);

// Clips v to [v_min, v_max] and w to [-w_max, w_max].
ControlInput Clamp(const ControlInput& u, const ControlLimits& limits);

struct ChannelVoltages {
  double forward = 0.0;
  double turn = 0.0;
};

inline constexpr double kVoltageMid = 6.0;
inline constexpr double kVoltageSpan = 1.2;

// Normalized stick command in [-1, 1] per channel to controller-board
// output volts: 4.8 V at -1, 6.0 V at rest, 7.2 V at +1. Inputs outside
// [-1, 1] are clipped first.
ChannelVoltages CmdToVoltage(double forward, double turn);

struct PidGains {
  double kp = 2.0;
  double ki = 4.0;
  double kd = 0.0;
};

// Closed-loop velocity tracking of the drive: one discrete PID per channel
// (v, w) driving a first-order lag plant with time constant tau.
class ActuatorModel {
 public:
  ActuatorModel(PidGains gains, double tau);

  struct Output {
    ControlInput effort;
    ControlInput achieved;
  };

  // Advances both channels by dt and returns the command effort and the
  // plant's new achieved velocities. Throws kNonPositiveDt.
  Output Step(const ControlInput& setpoint, const ControlInput& achieved,
              double dt);

  void Reset();

  const PidGains& gains() const { return gains_; }
  double tau() const { return tau_; }

 private:
  struct Channel {
    double integral = 0.0;
    double prev_error = 0.0;
  };

  double StepChannel(Channel& ch, double setpoint, double value, double dt,
                     double* effort) const;

  PidGains gains_;
  double tau_;
  Channel v_;
  Channel w_;
};

}  // namespace sharednav

#endif  // SHAREDNAV_DYNAMICS_H_
