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

#include <optional>
#include <random>
#include <string>

#include "corridor.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "sharednav/error.h"

namespace sharednav {
namespace {

using nlohmann::json;

std::optional<ErrorCode> ClientParseCode(const std::string& text) {
  try {
    ParseClientMessage(text);
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

TEST(WireClientTest, RoundTripsEveryVariant) {
  const std::vector<ClientMessage> msgs = {
      CmdMessage{0.5, -1.25},
      CmdMessage{0.0, 0.0},
      SetModeMessage{Mode::kManual},
      SetModeMessage{Mode::kShared},
      SetModeMessage{Mode::kAutonomous},
      ResetMessage{"door_gap", 17},
      ResetMessage{"", 0},
      ResetMessage{"x", 18446744073709551615ull},
      SetLambdaMessage{0.35},
  };
  for (const ClientMessage& m : msgs) {
    const std::string text = SerializeClientMessage(m);
    EXPECT_EQ(ParseClientMessage(text), m) << text;
  }
}

TEST(WireClientTest, LayoutIsOneKeyPerFrame) {
  const json j = json::parse(SerializeClientMessage(CmdMessage{0.5, 0.25}));
  EXPECT_EQ(j, json::parse(R"({"cmd":{"v":0.5,"w":0.25}})"));
  EXPECT_EQ(json::parse(SerializeClientMessage(SetModeMessage{Mode::kManual})),
            json::parse(R"({"set_mode":{"mode":"manual"}})"));
  EXPECT_EQ(json::parse(SerializeClientMessage(ResetMessage{"a", 3})),
            json::parse(R"({"reset":{"scenario_id":"a","seed":3}})"));
  EXPECT_EQ(json::parse(SerializeClientMessage(SetLambdaMessage{0.5})),
            json::parse(R"({"set_lambda":{"lambda":0.5}})"));
}

TEST(WireClientTest, DoublesSurviveExactly) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const CmdMessage c{d(rng), d(rng)};
    EXPECT_EQ(std::get<CmdMessage>(
                  ParseClientMessage(SerializeClientMessage(c))),
              c);
  }
}

TEST(WireClientTest, RejectsMalformed) {
  const char* bad[] = {
      "",
      "not json",
      "[]",
      "42",
      "{}",
      R"({"cmd":{"v":1,"w":0},"set_mode":{"mode":"manual"}})",
      R"({"jump":{}})",
      R"({"cmd":{"v":1}})",
      R"({"cmd":{"v":1,"w":0,"x":2}})",
      R"({"cmd":{"v":"fast","w":0}})",
      R"({"cmd":{"v":1e999,"w":0}})",
      R"({"cmd":[1,0]})",
      R"({"set_mode":{"mode":"turbo"}})",
      R"({"set_mode":{"mode":1}})",
      R"({"reset":{"scenario_id":"a","seed":-1}})",
      R"({"reset":{"scenario_id":"a","seed":1.5}})",
      R"({"reset":{"scenario_id":3,"seed":1}})",
      R"({"set_lambda":{"lambda":0}})",
      R"({"set_lambda":{"lambda":-0.2}})",
  };
  for (const char* text : bad) {
    EXPECT_EQ(ClientParseCode(text), ErrorCode::kMalformedMessage) << text;
  }
}

TEST(WireServerTest, RoundTripsTickFromLiveSimulation) {
  Scenario s = testing::StraightCorridor(2.0);
  s.user.kind = UserModelSpec::Kind::kSilent;
  Simulation sim(s, 4);
  sim.InjectCommand(0.0, {0.4, 0.1});
  EXPECT_THROW(MakeTickMessage(sim), Error);
  while (!sim.done()) {
    sim.Tick();
    const ServerTickMessage tick = MakeTickMessage(sim);
    const std::string text = SerializeServerMessage(tick);
    const ServerMessage back = ParseServerMessage(text);
    ASSERT_TRUE(std::holds_alternative<ServerTickMessage>(back));
    EXPECT_EQ(std::get<ServerTickMessage>(back), tick);
  }
  const ServerTickMessage last = MakeTickMessage(sim);
  EXPECT_EQ(last.event, TickEvent::kGoalReached);
  EXPECT_EQ(last.metrics, sim.Metrics());
  EXPECT_DOUBLE_EQ(last.t, sim.time());
  EXPECT_FALSE(last.predicted.empty());
  EXPECT_FALSE(last.global_ref.empty());
}

TEST(WireServerTest, TickFieldLayout) {
  Scenario s = testing::StraightCorridor(2.0);
  s.user.kind = UserModelSpec::Kind::kSilent;
  Simulation sim(s, 0);
  sim.Tick();
  const json j = json::parse(SerializeServerMessage(MakeTickMessage(sim)));
  ASSERT_EQ(j.size(), 1u);
  const json& t = j.at("tick");
  for (const char* key :
       {"t", "pose", "theta", "k", "mode", "goal", "global_ref", "user_ref",
        "blended_ref", "predicted", "feasible", "event", "metrics"}) {
    EXPECT_TRUE(t.contains(key)) << key;
  }
  EXPECT_EQ(t.size(), 13u);
  EXPECT_TRUE(t.at("event").is_null());
  EXPECT_EQ(t.at("user_ref"), json::array());
  EXPECT_EQ(t.at("mode"), "shared");
  EXPECT_EQ(t.at("k"), 0);
  EXPECT_EQ(t.at("pose").size(), 3u);
  EXPECT_EQ(t.at("metrics").size(), 6u);
}

TEST(WireServerTest, SessionInfoCarriesTheMap) {
  const Scenario s = testing::StraightCorridor(2.0);
  Simulation sim(s, 9);
  const SessionInfoMessage info = MakeSessionInfo(sim, "corridor", 9);
  std::string joined;
  for (const std::string& row : info.map_rows) joined += row + "\n";
  EXPECT_EQ(joined, SerializeMap(s.map));
  EXPECT_EQ(info.resolution, s.map.resolution());
  EXPECT_EQ(info.footprint_radius, s.footprint.radius);
  EXPECT_EQ(info.lambda, s.lambda);
  EXPECT_EQ(info.window, s.window);
  EXPECT_EQ(info.dt, s.planner.dt);
  const ServerMessage back = ParseServerMessage(SerializeServerMessage(info));
  EXPECT_EQ(std::get<SessionInfoMessage>(back), info);
}

TEST(WireServerTest, ErrorRoundTrip) {
  const ErrorMessage e{"bad \"frame\"\n"};
  EXPECT_EQ(std::get<ErrorMessage>(
                ParseServerMessage(SerializeServerMessage(e))),
            e);
}

TEST(WireServerTest, RejectsMalformed) {
  for (const char* text :
       {"{}", R"({"tick":{}})", R"({"error":{}})", R"({"error":{"message":1}})",
        R"({"session":{"scenario_id":"a"}})", R"({"nope":{}})"}) {
    EXPECT_THROW(ParseServerMessage(text), Error) << text;
  }
}

}  // namespace
}  // namespace sharednav
