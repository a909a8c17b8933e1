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

#ifndef SHAREDNAV_INTENT_BLEND_H_
#define SHAREDNAV_INTENT_BLEND_H_

#include <deque>
#include <optional>

#include "sharednav/dynamics.h"
#include "sharednav/global_planner.h"

namespace sharednav {

struct TimedCommand {
  double t = 0.0;
  ControlInput u;
};

// Time-ordered log of user commands. k is the number of commands received in
// the trailing window [t - window, t]. The buffer is owned by the simulation
// loop; commands arriving from other threads are queued and recorded at tick
// boundaries.
class UserCommandBuffer {
 public:
  explicit UserCommandBuffer(double window = 1.0);

  // Throws kNonMonotonicTimestamp when t precedes the last entry.
  void Record(double t, const ControlInput& u);

  int CountRecent(double t) const;

  // Latest command with a timestamp in [t - window, t], if any.
  std::optional<ControlInput> LatestInWindow(double t) const;

  // Drops entries older than t - window. Queries at times >= t are
  // unaffected.
  void Evict(double t);

  void Clear() { entries_.clear(); }

  double window() const { return window_; }
  size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::deque<TimedCommand>& entries() const { return entries_; }

 private:
  double window_;
  std::deque<TimedCommand> entries_;
};

struct BlendWeight {
  double theta = 0.0;
  int k = 0;
};

// theta(k) = 1 - exp(-lambda * k). The exponent carries a minus sign and a
// rate so that theta stays in [0, 1) and rises gradually with k.
// Throws kNegativeK or kNonPositiveLambda.
BlendWeight ComputeBlendWeight(int k, double lambda);

// Rollout that holds the latest in-window user command for the whole horizon,
// or nullopt when the user has been silent for the past window.
std::optional<ReferenceTrajectory> UserReference(
    const RobotState& s0, const UserCommandBuffer& buffer, double t,
    int horizon, double dt);

// Per step: positions theta * user + (1 - theta) * global; heading moves from
// the global heading toward the user heading along the shorter arc.
// Throws kLengthMismatch or kThetaOutOfRange.
ReferenceTrajectory BlendReference(const ReferenceTrajectory& s_user,
                                   const ReferenceTrajectory& s_global,
                                   double theta);

}  // namespace sharednav

#endif  // SHAREDNAV_INTENT_BLEND_H_
