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

#ifndef SHAREDNAV_SERVICE_WIRE_H_
#define SHAREDNAV_SERVICE_WIRE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sharednav/dynamics.h"
#include "sharednav/scenario.h"
#include "sharednav/simulator.h"
#include "sharednav/world_model.h"

// Messages exchanged with the teleop client. Each frame carries one JSON
// object with exactly one key naming the variant, e.g.
//   {"cmd": {"v": 0.5, "w": 0.0}}
//   {"tick": {"t": 0.1, ...}}
// Polylines are arrays of [x, y] pairs in meters.

namespace sharednav {

struct ServerTickMessage {
  double t = 0.0;
  RobotState pose;
  double theta = 0.0;
  int k = 0;
  Mode mode = Mode::kShared;
  Point2 goal;
  std::vector<Point2> global_ref;
  std::vector<Point2> user_ref;  // empty when there is no user input
  std::vector<Point2> blended_ref;
  std::vector<Point2> predicted;
  bool feasible = true;
  TickEvent event = TickEvent::kNone;  // kNone travels as null
  MetricsReport metrics;

  friend bool operator==(const ServerTickMessage&,
                         const ServerTickMessage&) = default;
};

// Sent once per connection and after every reset so the client can draw the
// map without any other channel.
struct SessionInfoMessage {
  std::string scenario_id;
  uint64_t seed = 0;
  // Map file lines: '#' occupied, '.' free; line i holds row i, whose cell
  // centers sit at y = origin.y + i * resolution.
  std::vector<std::string> map_rows;
  double resolution = 1.0;
  Point2 origin;
  double footprint_radius = 0.0;
  double dt = 0.1;
  double lambda = 0.0;
  double window = 0.0;

  friend bool operator==(const SessionInfoMessage&,
                         const SessionInfoMessage&) = default;
};

struct ErrorMessage {
  std::string message;

  friend bool operator==(const ErrorMessage&, const ErrorMessage&) = default;
};

using ServerMessage =
    std::variant<ServerTickMessage, SessionInfoMessage, ErrorMessage>;

struct CmdMessage {
  double v = 0.0;
  double w = 0.0;

  friend bool operator==(const CmdMessage&, const CmdMessage&) = default;
};

struct SetModeMessage {
  Mode mode = Mode::kShared;

  friend bool operator==(const SetModeMessage&, const SetModeMessage&) = default;
};

struct ResetMessage {
  std::string scenario_id;  // empty keeps the current scenario
  uint64_t seed = 0;

  friend bool operator==(const ResetMessage&, const ResetMessage&) = default;
};

struct SetLambdaMessage {
  double lambda = 0.2;

  friend bool operator==(const SetLambdaMessage&,
                         const SetLambdaMessage&) = default;
};

using ClientMessage =
    std::variant<CmdMessage, SetModeMessage, ResetMessage, SetLambdaMessage>;

std::string SerializeClientMessage(const ClientMessage& msg);
std::string SerializeServerMessage(const ServerMessage& msg);

// Both throw kMalformedMessage on anything but a well-formed message: not an
// object, not exactly one known key, missing or mistyped fields, non-finite
// numbers.
ClientMessage ParseClientMessage(std::string_view text);
ServerMessage ParseServerMessage(std::string_view text);

// Tick message for the latest tick of `sim`. Precondition: at least one tick.
ServerTickMessage MakeTickMessage(const Simulation& sim);

SessionInfoMessage MakeSessionInfo(const Simulation& sim,
                                   const std::string& scenario_id,
                                   uint64_t seed);

}  // namespace sharednav

#endif  // SHAREDNAV_SERVICE_WIRE_H_
