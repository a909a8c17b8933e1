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

#ifndef SHAREDNAV_SCENARIO_H_
#define SHAREDNAV_SCENARIO_H_

#include <string>
#include <string_view>
#include <vector>

#include "sharednav/dynamics.h"
#include "sharednav/intent_blend.h"
#include "sharednav/mpc_planner.h"
#include "sharednav/world_model.h"

namespace sharednav {

enum class Mode { kManual, kAutonomous, kShared };

std::string_view ModeName(Mode mode);
// Throws kInvalidArgument for anything but manual/autonomous/shared.
Mode ParseMode(std::string_view name);

// Scripted stand-in for the human operator.
struct UserModelSpec {
  enum class Kind { kSilent, kTape, kPursuit };

  Kind kind = Kind::kSilent;
  // Only for kTape: path as written in the scenario file and the parsed tape.
  std::string tape_path;
  std::vector<TimedCommand> tape;
  // Std dev (rad) of the heading noise of the pursuit user.
  double noise = 0.4;
  // Seconds between pursuit commands.
  double period = 0.1;
};

std::string_view UserKindName(UserModelSpec::Kind kind);

struct ActuatorConfig {
  bool enabled = false;
  PidGains gains;
  double tau = 0.2;
};

struct Scenario {
  std::string name = "scenario";
  std::string map_path;
  OccupancyGrid map = OccupancyGrid::Free(0.1, 1, 1);
  RobotState start;
  Point2 goal;
  double goal_tolerance = 0.25;
  double timeout = 60.0;
  Mode mode = Mode::kShared;
  Footprint footprint;
  double v_ref = 0.6;
  PlannerConfig planner;
  CostWeights weights;
  ControlLimits limits;
  double lambda = 0.2;
  double window = 1.0;
  ActuatorConfig actuator;
  UserModelSpec user;
};

// Checks the scenario invariants (start and goal free in the inflated map,
// positive timeout and tolerance, planner config, user model). Throws
// kScenarioInvalid naming the offending field or cell.
void ValidateScenario(const Scenario& scenario);

// Parses scenario JSON. Relative map/tape paths resolve against base_dir.
// Throws kScenarioInvalid.
Scenario ParseScenario(std::string_view json_text, const std::string& base_dir);
Scenario LoadScenarioFile(const std::string& path);

// Command tape: one "t v w" line per command, t non-decreasing. Blank lines
// and lines starting with '#' are skipped. Throws kScenarioInvalid.
std::vector<TimedCommand> ParseTape(std::string_view text);
std::string FormatTape(const std::vector<TimedCommand>& tape);

// Throws kScenarioInvalid when the file cannot be read.
std::string ReadTextFile(const std::string& path);

}  // namespace sharednav

#endif  // SHAREDNAV_SCENARIO_H_
