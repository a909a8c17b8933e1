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

#include "sharednav/intent_blend.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sharednav/angles.h"
#include "sharednav/error.h"

namespace sharednav {
namespace {

auto FirstAtOrAfter(const std::deque<TimedCommand>& entries, double t) {
  return std::lower_bound(
      entries.begin(), entries.end(), t,
      [](const TimedCommand& e, double value) { return e.t < value; });
}

auto FirstAfter(const std::deque<TimedCommand>& entries, double t) {
  return std::upper_bound(
      entries.begin(), entries.end(), t,
      [](double value, const TimedCommand& e) { return value < e.t; });
}

}  // namespace

UserCommandBuffer::UserCommandBuffer(double window) : window_(window) {
  if (!(window_ > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "window must be > 0");
  }
}

void UserCommandBuffer::Record(double t, const ControlInput& u) {
  if (!entries_.empty() && t < entries_.back().t) {
    throw Error(ErrorCode::kNonMonotonicTimestamp,
                "command at t=" + std::to_string(t) + " precedes t=" +
                    std::to_string(entries_.back().t));
  }
  entries_.push_back({t, u});
}

int UserCommandBuffer::CountRecent(double t) const {
  const auto lo = FirstAtOrAfter(entries_, t - window_);
  const auto hi = FirstAfter(entries_, t);
  return hi > lo ? static_cast<int>(hi - lo) : 0;
}

std::optional<ControlInput> UserCommandBuffer::LatestInWindow(double t) const {
  const auto lo = FirstAtOrAfter(entries_, t - window_);
  const auto hi = FirstAfter(entries_, t);
  if (hi <= lo) return std::nullopt;
  return std::prev(hi)->u;
}

void UserCommandBuffer::Evict(double t) {
  const auto lo = FirstAtOrAfter(entries_, t - window_);
  entries_.erase(entries_.begin(), lo);
}

BlendWeight ComputeBlendWeight(int k, double lambda) {
  if (k < 0) throw Error(ErrorCode::kNegativeK, "k must be >= 0");
  if (!(lambda > 0.0)) {
    throw Error(ErrorCode::kNonPositiveLambda, "lambda must be > 0");
  }
  return {-std::expm1(-lambda * k), k};
}

std::optional<ReferenceTrajectory> UserReference(
    const RobotState& s0, const UserCommandBuffer& buffer, double t,
    int horizon, double dt) {
  if (horizon < 1) {
    throw Error(ErrorCode::kInvalidArgument, "horizon must be >= 1");
  }
  const auto latest = buffer.LatestInWindow(t);
  if (!latest) return std::nullopt;
  const std::vector<ControlInput> held(static_cast<size_t>(horizon), *latest);
  return ReferenceTrajectory{Rollout(s0, held, dt), dt};
}

ReferenceTrajectory BlendReference(const ReferenceTrajectory& s_user,
                                   const ReferenceTrajectory& s_global,
                                   double theta) {
  if (s_user.states.size() != s_global.states.size() ||
      s_user.dt != s_global.dt) {
    throw Error(ErrorCode::kLengthMismatch,
                "user and global references differ in length or dt");
  }
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw Error(ErrorCode::kThetaOutOfRange, "theta must lie in [0, 1]");
  }
  ReferenceTrajectory out;
  out.dt = s_global.dt;
  out.states.reserve(s_global.states.size());
  for (size_t i = 0; i < s_global.states.size(); ++i) {
    const RobotState& u = s_user.states[i];
    const RobotState& g = s_global.states[i];
    // Endpoints are returned verbatim; the arc formula is only exact up to
    // rounding there.
    if (theta == 0.0) {
      out.states.push_back(g);
      continue;
    }
    if (theta == 1.0) {
      out.states.push_back(u);
      continue;
    }
    out.states.push_back(
        {theta * u.x + (1.0 - theta) * g.x, theta * u.y + (1.0 - theta) * g.y,
         WrapAngle(g.heading + theta * WrapAngle(u.heading - g.heading))});
  }
  return out;
}

}  // namespace sharednav
