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

#include "sharednav/scenario.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "sharednav/error.h"

namespace sharednav {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kScenarioInvalid, message);
}

std::string ResolvePath(const std::string& base_dir, const std::string& p) {
  const std::filesystem::path path(p);
  if (path.is_absolute() || base_dir.empty()) return path.string();
  return (std::filesystem::path(base_dir) / path).lexically_normal().string();
}

double Number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) Invalid(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

int Integer(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    Invalid(std::string("field '") + key + "' must be an integer");
  }
  return v.get<int>();
}

const json& Section(const json& root, const char* key) {
  static const json kEmpty = json::object();
  if (!root.contains(key)) return kEmpty;
  const json& v = root.at(key);
  if (!v.is_object()) Invalid(std::string("section '") + key + "' must be a table");
  return v;
}

void CheckCellFree(const OccupancyGrid& inflated, Point2 p, const char* what) {
  const auto cell = WorldToCell(inflated, p);
  if (!cell) {
    Invalid(std::string(what) + " (" + std::to_string(p.x) + ", " +
            std::to_string(p.y) + ") lies outside the map");
  }
  if (inflated.occupied(cell->col, cell->row)) {
    Invalid(std::string(what) + " cell (" + std::to_string(cell->col) + ", " +
            std::to_string(cell->row) + ") is occupied in the inflated map");
  }
}

}  // namespace

std::string_view ModeName(Mode mode) {
  switch (mode) {
    case Mode::kManual: return "manual";
    case Mode::kAutonomous: return "autonomous";
    case Mode::kShared: return "shared";
  }
  return "unknown";
}

Mode ParseMode(std::string_view name) {
  if (name == "manual") return Mode::kManual;
  if (name == "autonomous") return Mode::kAutonomous;
  if (name == "shared") return Mode::kShared;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown mode '" + std::string(name) + "'");
}

std::string_view UserKindName(UserModelSpec::Kind kind) {
  switch (kind) {
    case UserModelSpec::Kind::kSilent: return "silent";
    case UserModelSpec::Kind::kTape: return "tape";
    case UserModelSpec::Kind::kPursuit: return "pursuit";
  }
  return "unknown";
}

void ValidateScenario(const Scenario& s) {
  if (!(s.timeout > 0.0)) Invalid("timeout must be > 0");
  if (!(s.goal_tolerance > 0.0)) Invalid("goal_tolerance must be > 0");
  if (!(s.footprint.radius > 0.0)) Invalid("footprint radius must be > 0");
  if (!(s.v_ref > 0.0)) Invalid("v_ref must be > 0");
  if (!(s.lambda > 0.0)) Invalid("lambda must be > 0");
  if (!(s.window > 0.0)) Invalid("window must be > 0");
  if (!(s.limits.v_min <= 0.0 && 0.0 <= s.limits.v_max) ||
      !(s.limits.w_max > 0.0)) {
    Invalid("limits need v_min <= 0 <= v_max and w_max > 0");
  }
  if (s.actuator.enabled) {
    if (!(s.actuator.tau > 0.0)) Invalid("actuator tau must be > 0");
    const PidGains& g = s.actuator.gains;
    if (g.kp < 0.0 || g.ki < 0.0 || g.kd < 0.0) {
      Invalid("actuator gains must be >= 0");
    }
  }
  try {
    ValidatePlannerConfig(s.planner);
  } catch (const Error& e) {
    Invalid(e.what());
  }
  if (s.user.kind == UserModelSpec::Kind::kTape && s.user.tape_path.empty() &&
      s.user.tape.empty()) {
    Invalid("user kind 'tape' requires a tape path");
  }
  if (!(s.user.period > 0.0)) Invalid("user command period must be > 0");
  if (!(s.user.noise >= 0.0)) Invalid("user noise must be >= 0");

  const OccupancyGrid inflated = Inflate(s.map, s.footprint.radius);
  CheckCellFree(inflated, {s.start.x, s.start.y}, "start");
  CheckCellFree(inflated, s.goal, "goal");
}

Scenario ParseScenario(std::string_view json_text, const std::string& base_dir) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    Invalid(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) Invalid("scenario root must be a JSON object");

  Scenario s;
  try {
    s.name = root.value("name", s.name);
    if (!root.contains("map") || !root.at("map").is_string()) {
      Invalid("field 'map' (path to an ASCII map) is required");
    }
    s.map_path = ResolvePath(base_dir, root.at("map").get<std::string>());
    const double resolution = Number(root, "resolution", 0.1);
    Point2 origin;
    if (root.contains("origin")) {
      const json& o = root.at("origin");
      if (!o.is_array() || o.size() != 2) Invalid("origin must be [x, y]");
      origin = {o.at(0).get<double>(), o.at(1).get<double>()};
    }
    try {
      s.map = LoadMap(ReadTextFile(s.map_path), resolution, origin);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kScenarioInvalid) throw;
      Invalid("map '" + s.map_path + "': " + e.what());
    }

    const json& start = Section(root, "start");
    s.start = {Number(start, "x", 0.0), Number(start, "y", 0.0),
               Number(start, "heading", 0.0)};
    const json& goal = Section(root, "goal");
    s.goal = {Number(goal, "x", 0.0), Number(goal, "y", 0.0)};
    s.goal_tolerance = Number(root, "goal_tolerance", s.goal_tolerance);
    s.timeout = Number(root, "timeout", s.timeout);
    if (root.contains("mode")) s.mode = ParseMode(root.at("mode").get<std::string>());
    s.footprint.radius = Number(root, "footprint_radius", s.footprint.radius);
    s.v_ref = Number(root, "v_ref", s.v_ref);

    const json& planner = Section(root, "planner");
    s.planner.horizon = Integer(planner, "horizon", s.planner.horizon);
    s.planner.dt = Number(planner, "dt", s.planner.dt);
    s.planner.samples = Integer(planner, "samples", s.planner.samples);
    s.planner.iterations = Integer(planner, "iterations", s.planner.iterations);
    s.planner.sigma_v = Number(planner, "sigma_v", s.planner.sigma_v);
    s.planner.sigma_w = Number(planner, "sigma_w", s.planner.sigma_w);

    const json& weights = Section(root, "weights");
    s.weights.q_pos = Number(weights, "q_pos", s.weights.q_pos);
    s.weights.q_heading = Number(weights, "q_heading", s.weights.q_heading);
    s.weights.r_v = Number(weights, "r_v", s.weights.r_v);
    s.weights.r_w = Number(weights, "r_w", s.weights.r_w);

    const json& limits = Section(root, "limits");
    s.limits.v_min = Number(limits, "v_min", s.limits.v_min);
    s.limits.v_max = Number(limits, "v_max", s.limits.v_max);
    s.limits.w_max = Number(limits, "w_max", s.limits.w_max);

    const json& intent = Section(root, "intent");
    s.lambda = Number(intent, "lambda", s.lambda);
    s.window = Number(intent, "window", s.window);

    const json& actuator = Section(root, "actuator");
    s.actuator.enabled = actuator.value("enabled", false);
    s.actuator.gains.kp = Number(actuator, "kp", s.actuator.gains.kp);
    s.actuator.gains.ki = Number(actuator, "ki", s.actuator.gains.ki);
    s.actuator.gains.kd = Number(actuator, "kd", s.actuator.gains.kd);
    s.actuator.tau = Number(actuator, "tau", s.actuator.tau);

    const json& user = Section(root, "user");
    const std::string kind = user.value("kind", std::string("silent"));
    if (kind == "silent") {
      s.user.kind = UserModelSpec::Kind::kSilent;
    } else if (kind == "tape") {
      s.user.kind = UserModelSpec::Kind::kTape;
    } else if (kind == "pursuit") {
      s.user.kind = UserModelSpec::Kind::kPursuit;
    } else {
      Invalid("unknown user kind '" + kind + "'");
    }
    s.user.noise = Number(user, "noise", s.user.noise);
    s.user.period = Number(user, "period", s.user.period);
    if (user.contains("tape") && user.at("tape").is_string()) {
      s.user.tape_path = ResolvePath(base_dir, user.at("tape").get<std::string>());
    }
    if (s.user.kind == UserModelSpec::Kind::kTape) {
      if (s.user.tape_path.empty()) Invalid("user kind 'tape' requires a tape path");
      s.user.tape = ParseTape(ReadTextFile(s.user.tape_path));
    }
  } catch (const json::exception& e) {
    Invalid(std::string("malformed scenario field: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kScenarioInvalid) throw;
    Invalid(e.what());
  }
  ValidateScenario(s);
  return s;
}

Scenario LoadScenarioFile(const std::string& path) {
  const std::string text = ReadTextFile(path);
  return ParseScenario(text,
                       std::filesystem::path(path).parent_path().string());
}

std::vector<TimedCommand> ParseTape(std::string_view text) {
  std::vector<TimedCommand> tape;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    TimedCommand cmd;
    std::string extra;
    if (!(fields >> cmd.t >> cmd.u.v >> cmd.u.w) || (fields >> extra)) {
      Invalid("tape line " + std::to_string(line_no) + " is not 't v w'");
    }
    if (!std::isfinite(cmd.t) || !std::isfinite(cmd.u.v) ||
        !std::isfinite(cmd.u.w)) {
      Invalid("tape line " + std::to_string(line_no) + " is not finite");
    }
    if (!tape.empty() && cmd.t < tape.back().t) {
      Invalid("tape line " + std::to_string(line_no) + " goes back in time");
    }
    tape.push_back(cmd);
  }
  return tape;
}

std::string FormatTape(const std::vector<TimedCommand>& tape) {
  std::string out;
  char buf[96];
  for (const TimedCommand& c : tape) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", c.t, c.u.v, c.u.w);
    out += buf;
  }
  return out;
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Invalid("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) Invalid("cannot read '" + path + "'");
  return ss.str();
}

}  // namespace sharednav
