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

#include "sharednav/service/wire.h"

#include <cmath>
#include <initializer_list>
#include <sstream>

#include "json.hpp"
#include "sharednav/error.h"

namespace sharednav {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void Malformed(const std::string& message) {
  throw Error(ErrorCode::kMalformedMessage, message);
}

// Rejects anything that is not an object with exactly the given keys.
void ExpectKeys(const json& obj, std::string_view what,
                std::initializer_list<const char*> keys) {
  if (!obj.is_object()) Malformed(std::string(what) + " must be an object");
  for (const char* key : keys) {
    if (!obj.contains(key)) {
      Malformed(std::string(what) + " lacks field '" + key + "'");
    }
  }
  if (obj.size() != keys.size()) {
    for (const auto& [key, value] : obj.items()) {
      bool known = false;
      for (const char* k : keys) known = known || key == k;
      if (!known) {
        Malformed(std::string(what) + " has unknown field '" + key + "'");
      }
    }
  }
}

double Finite(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number()) Malformed(std::string("'") + key + "' must be a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) Malformed(std::string("'") + key + "' must be finite");
  return d;
}

std::string String(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_string()) Malformed(std::string("'") + key + "' must be a string");
  return v.get<std::string>();
}

bool Bool(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_boolean()) Malformed(std::string("'") + key + "' must be a boolean");
  return v.get<bool>();
}

uint64_t Unsigned(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) {
    Malformed(std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<uint64_t>();
}

int Int(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_number_integer()) {
    Malformed(std::string("'") + key + "' must be an integer");
  }
  return v.get<int>();
}

Mode ModeField(const json& obj, const char* key) {
  const std::string name = String(obj, key);
  if (name == "manual") return Mode::kManual;
  if (name == "autonomous") return Mode::kAutonomous;
  if (name == "shared") return Mode::kShared;
  Malformed("unknown mode '" + name + "'");
}

ordered_json PointJson(Point2 p) { return ordered_json::array({p.x, p.y}); }

Point2 PointFrom(const json& v) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number()) {
    Malformed("point must be [x, y]");
  }
  const Point2 p{v[0].get<double>(), v[1].get<double>()};
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    Malformed("point must be finite");
  }
  return p;
}

ordered_json PolylineJson(const std::vector<Point2>& line) {
  ordered_json out = ordered_json::array();
  for (const Point2& p : line) out.push_back(PointJson(p));
  return out;
}

std::vector<Point2> PolylineFrom(const json& obj, const char* key) {
  const json& v = obj.at(key);
  if (!v.is_array()) Malformed(std::string("'") + key + "' must be a polyline");
  std::vector<Point2> line;
  line.reserve(v.size());
  for (const json& p : v) line.push_back(PointFrom(p));
  return line;
}

std::vector<Point2> Positions(const std::vector<RobotState>& states) {
  std::vector<Point2> out;
  out.reserve(states.size());
  for (const RobotState& s : states) out.push_back({s.x, s.y});
  return out;
}

TickEvent EventFrom(const json& v) {
  if (v.is_null()) return TickEvent::kNone;
  if (!v.is_string()) Malformed("'event' must be a string or null");
  const std::string name = v.get<std::string>();
  for (TickEvent e : {TickEvent::kCollision, TickEvent::kGoalReached,
                      TickEvent::kTimeout, TickEvent::kPlannerInfeasible}) {
    if (name == TickEventName(e)) return e;
  }
  Malformed("unknown event '" + name + "'");
}

ordered_json MetricsJson(const MetricsReport& m) {
  ordered_json j;
  j["completion_time"] = m.completion_time;
  j["success"] = m.success;
  j["collision_count"] = m.collision_count;
  j["trajectory_length"] = m.trajectory_length;
  j["angle_diff_sum"] = m.angle_diff_sum;
  j["user_effort"] = m.user_effort;
  return j;
}

MetricsReport MetricsFrom(const json& j) {
  ExpectKeys(j, "metrics",
             {"completion_time", "success", "collision_count",
              "trajectory_length", "angle_diff_sum", "user_effort"});
  MetricsReport m;
  m.completion_time = Finite(j, "completion_time");
  m.success = Bool(j, "success");
  m.collision_count = Int(j, "collision_count");
  m.trajectory_length = Finite(j, "trajectory_length");
  m.angle_diff_sum = Finite(j, "angle_diff_sum");
  m.user_effort = Int(j, "user_effort");
  return m;
}

ordered_json TickJson(const ServerTickMessage& m) {
  ordered_json j;
  j["t"] = m.t;
  j["pose"] = {{"x", m.pose.x}, {"y", m.pose.y}, {"heading", m.pose.heading}};
  j["theta"] = m.theta;
  j["k"] = m.k;
  j["mode"] = std::string(ModeName(m.mode));
  j["goal"] = PointJson(m.goal);
  j["global_ref"] = PolylineJson(m.global_ref);
  j["user_ref"] = PolylineJson(m.user_ref);
  j["blended_ref"] = PolylineJson(m.blended_ref);
  j["predicted"] = PolylineJson(m.predicted);
  j["feasible"] = m.feasible;
  if (m.event == TickEvent::kNone) {
    j["event"] = nullptr;
  } else {
    j["event"] = std::string(TickEventName(m.event));
  }
  j["metrics"] = MetricsJson(m.metrics);
  return j;
}

ServerTickMessage TickFrom(const json& j) {
  ExpectKeys(j, "tick",
             {"t", "pose", "theta", "k", "mode", "goal", "global_ref",
              "user_ref", "blended_ref", "predicted", "feasible", "event",
              "metrics"});
  ServerTickMessage m;
  m.t = Finite(j, "t");
  const json& pose = j.at("pose");
  ExpectKeys(pose, "pose", {"x", "y", "heading"});
  m.pose = {Finite(pose, "x"), Finite(pose, "y"), Finite(pose, "heading")};
  m.theta = Finite(j, "theta");
  m.k = Int(j, "k");
  m.mode = ModeField(j, "mode");
  m.goal = PointFrom(j.at("goal"));
  m.global_ref = PolylineFrom(j, "global_ref");
  m.user_ref = PolylineFrom(j, "user_ref");
  m.blended_ref = PolylineFrom(j, "blended_ref");
  m.predicted = PolylineFrom(j, "predicted");
  m.feasible = Bool(j, "feasible");
  m.event = EventFrom(j.at("event"));
  m.metrics = MetricsFrom(j.at("metrics"));
  return m;
}

ordered_json SessionJson(const SessionInfoMessage& m) {
  ordered_json j;
  j["scenario_id"] = m.scenario_id;
  j["seed"] = m.seed;
  j["map_rows"] = m.map_rows;
  j["resolution"] = m.resolution;
  j["origin"] = PointJson(m.origin);
  j["footprint_radius"] = m.footprint_radius;
  j["dt"] = m.dt;
  j["lambda"] = m.lambda;
  j["window"] = m.window;
  return j;
}

SessionInfoMessage SessionFrom(const json& j) {
  ExpectKeys(j, "session",
             {"scenario_id", "seed", "map_rows", "resolution", "origin",
              "footprint_radius", "dt", "lambda", "window"});
  SessionInfoMessage m;
  m.scenario_id = String(j, "scenario_id");
  m.seed = Unsigned(j, "seed");
  const json& rows = j.at("map_rows");
  if (!rows.is_array()) Malformed("'map_rows' must be an array of strings");
  for (const json& row : rows) {
    if (!row.is_string()) Malformed("'map_rows' must be an array of strings");
    m.map_rows.push_back(row.get<std::string>());
  }
  m.resolution = Finite(j, "resolution");
  m.origin = PointFrom(j.at("origin"));
  m.footprint_radius = Finite(j, "footprint_radius");
  m.dt = Finite(j, "dt");
  m.lambda = Finite(j, "lambda");
  m.window = Finite(j, "window");
  return m;
}

// Splits {"name": {...}} into its variant name and body.
std::pair<std::string, json> Envelope(std::string_view text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    Malformed(std::string("not JSON: ") + e.what());
  }
  if (!root.is_object() || root.size() != 1) {
    Malformed("message must be an object with exactly one key");
  }
  auto it = root.begin();
  return {it.key(), it.value()};
}

}  // namespace

std::string SerializeClientMessage(const ClientMessage& msg) {
  ordered_json j;
  if (const auto* m = std::get_if<CmdMessage>(&msg)) {
    j["cmd"] = {{"v", m->v}, {"w", m->w}};
  } else if (const auto* m = std::get_if<SetModeMessage>(&msg)) {
    j["set_mode"] = {{"mode", std::string(ModeName(m->mode))}};
  } else if (const auto* m = std::get_if<ResetMessage>(&msg)) {
    j["reset"] = {{"scenario_id", m->scenario_id}, {"seed", m->seed}};
  } else {
    j["set_lambda"] = {{"lambda", std::get<SetLambdaMessage>(msg).lambda}};
  }
  return j.dump();
}

ClientMessage ParseClientMessage(std::string_view text) {
  const auto [name, body] = Envelope(text);
  try {
    if (name == "cmd") {
      ExpectKeys(body, "cmd", {"v", "w"});
      return CmdMessage{Finite(body, "v"), Finite(body, "w")};
    }
    if (name == "set_mode") {
      ExpectKeys(body, "set_mode", {"mode"});
      return SetModeMessage{ModeField(body, "mode")};
    }
    if (name == "reset") {
      ExpectKeys(body, "reset", {"scenario_id", "seed"});
      return ResetMessage{String(body, "scenario_id"), Unsigned(body, "seed")};
    }
    if (name == "set_lambda") {
      ExpectKeys(body, "set_lambda", {"lambda"});
      const double lambda = Finite(body, "lambda");
      if (!(lambda > 0.0)) Malformed("'lambda' must be > 0");
      return SetLambdaMessage{lambda};
    }
  } catch (const json::exception& e) {
    Malformed(e.what());
  }
  Malformed("unknown message '" + name + "'");
}

std::string SerializeServerMessage(const ServerMessage& msg) {
  ordered_json j;
  if (const auto* m = std::get_if<ServerTickMessage>(&msg)) {
    j["tick"] = TickJson(*m);
  } else if (const auto* m = std::get_if<SessionInfoMessage>(&msg)) {
    j["session"] = SessionJson(*m);
  } else {
    j["error"] = {{"message", std::get<ErrorMessage>(msg).message}};
  }
  return j.dump();
}

ServerMessage ParseServerMessage(std::string_view text) {
  const auto [name, body] = Envelope(text);
  try {
    if (name == "tick") return TickFrom(body);
    if (name == "session") return SessionFrom(body);
    if (name == "error") {
      ExpectKeys(body, "error", {"message"});
      return ErrorMessage{String(body, "message")};
    }
  } catch (const json::exception& e) {
    Malformed(e.what());
  }
  Malformed("unknown message '" + name + "'");
}

ServerTickMessage MakeTickMessage(const Simulation& sim) {
  if (sim.records().empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no tick to report");
  }
  const TickRecord& rec = sim.records().back();
  const TickDetail& detail = sim.last_detail();
  ServerTickMessage m;
  m.t = rec.t;
  m.pose = rec.state;
  m.theta = rec.theta;
  m.k = rec.k;
  m.mode = rec.mode;
  m.goal = sim.scenario().goal;
  m.global_ref = Positions(detail.global_ref.states);
  if (detail.user_ref) m.user_ref = Positions(detail.user_ref->states);
  m.blended_ref = Positions(detail.blended_ref.states);
  m.predicted = Positions(detail.predicted);
  m.feasible = rec.feasible;
  m.event = rec.event;
  m.metrics = sim.Metrics();
  return m;
}

SessionInfoMessage MakeSessionInfo(const Simulation& sim,
                                   const std::string& scenario_id,
                                   uint64_t seed) {
  const Scenario& s = sim.scenario();
  SessionInfoMessage m;
  m.scenario_id = scenario_id;
  m.seed = seed;
  std::istringstream rows(SerializeMap(s.map));
  for (std::string line; std::getline(rows, line);) m.map_rows.push_back(line);
  m.resolution = s.map.resolution();
  m.origin = s.map.origin();
  m.footprint_radius = s.footprint.radius;
  m.dt = s.planner.dt;
  m.lambda = s.lambda;
  m.window = s.window;
  return m;
}

}  // namespace sharednav
