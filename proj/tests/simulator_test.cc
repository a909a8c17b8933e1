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

#include <cmath>
#include <random>

#include "corridor.h"
#include "oracles.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "sharednav/angles.h"
#include "sharednav/error.h"

namespace sharednav {
namespace {

using ::sharednav::testing::StraightCorridor;

TEST(TrajectoryLengthTest, Examples) {
  const std::vector<RobotState> one{{3, 4, 0}};
  EXPECT_EQ(TrajectoryLength(one), 0.0);
  std::vector<RobotState> line;
  for (int i = 0; i < 10; ++i) line.push_back({0.1 * i, 0, 0});
  EXPECT_NEAR(TrajectoryLength(line), 0.9, 1e-12);
  const std::vector<RobotState> square{{0, 0, 0}, {1, 0, 0}, {1, 1, 0},
                                       {0, 1, 0}, {0, 0, 0}};
  EXPECT_EQ(TrajectoryLength(square), 4.0);
  EXPECT_THROW(TrajectoryLength({}), Error);
}

TEST(AngleDiffSumTest, Examples) {
  const std::vector<RobotState> constant(5, RobotState{0, 0, 1.2});
  EXPECT_EQ(AngleDiffSum(constant), 0.0);
  const std::vector<RobotState> turn{{0, 0, 0}, {0, 0, kPi / 2}, {0, 0, kPi}};
  EXPECT_NEAR(AngleDiffSum(turn), kPi, 1e-15);
  const std::vector<RobotState> wrap{{0, 0, 3.0}, {0, 0, -3.0}};
  EXPECT_NEAR(AngleDiffSum(wrap), 2 * kPi - 6.0, 1e-15);
  try {
    AngleDiffSum({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyTrajectory);
  }
}

TEST(AngleDiffSumTest, CollinearInsertionsChangeNothing) {
  const std::vector<RobotState> sparse{{0, 0, 0}, {1, 0, 0.5}, {2, 1, -0.4}};
  const std::vector<RobotState> dense{{0, 0, 0},   {0.5, 0, 0}, {1, 0, 0.5},
                                      {1.5, 0.5, 0.5}, {2, 1, -0.4}};
  EXPECT_DOUBLE_EQ(AngleDiffSum(sparse), AngleDiffSum(dense));
}

TEST(PursuitUserTest, Examples) {
  std::mt19937_64 rng(1);
  const ControlLimits limits;
  const ControlInput facing = PursuitUser({0, 0, 0}, {5, 0}, 0.0, rng, limits);
  EXPECT_EQ(facing.v, limits.v_max);
  EXPECT_EQ(facing.w, 0.0);
  const ControlInput behind = PursuitUser({0, 0, 0}, {-5, 0}, 0.0, rng, limits);
  EXPECT_EQ(behind.v, 0.0);
  EXPECT_EQ(std::abs(behind.w), limits.w_max);
  std::mt19937_64 a(7), b(7);
  EXPECT_EQ(PursuitUser({1, 2, 0.3}, {4, -1}, 0.4, a, limits),
            PursuitUser({1, 2, 0.3}, {4, -1}, 0.4, b, limits));
}

TEST(RunTest, AutonomousStraightCorridor) {
  Scenario s = StraightCorridor(2.0);
  s.mode = Mode::kAutonomous;
  const RunResult r = sharednav::Run(s, 0);
  EXPECT_TRUE(r.metrics.success);
  EXPECT_EQ(r.metrics.collision_count, 0);
  EXPECT_GE(r.metrics.trajectory_length, 2.0 * 0.95 - s.goal_tolerance);
  EXPECT_LE(r.metrics.trajectory_length, 2.0 * 1.3);
  EXPECT_EQ(r.ticks.back().event, TickEvent::kGoalReached);
  EXPECT_EQ(r.metrics.user_effort, 0);
}

TEST(RunTest, ManualSilentNeverMoves) {
  Scenario s = StraightCorridor(2.0);
  s.mode = Mode::kManual;
  s.timeout = 3.0;
  const RunResult r = sharednav::Run(s, 0);
  EXPECT_FALSE(r.metrics.success);
  EXPECT_EQ(r.metrics.trajectory_length, 0.0);
  EXPECT_EQ(r.ticks.size(), 30u);
  EXPECT_EQ(r.ticks.back().event, TickEvent::kTimeout);
  EXPECT_NEAR(r.metrics.completion_time, 3.0, 1e-9);
  for (const TickRecord& t : r.ticks) EXPECT_EQ(t.theta, 1.0);
}

TEST(RunTest, SharedSilentEqualsAutonomousBitwise) {
  Scenario s = StraightCorridor(2.5);
  s.user.kind = UserModelSpec::Kind::kSilent;
  s.mode = Mode::kShared;
  const RunResult shared = sharednav::Run(s, 42);
  s.mode = Mode::kAutonomous;
  const RunResult autonomous = sharednav::Run(s, 42);
  ASSERT_EQ(shared.ticks.size(), autonomous.ticks.size());
  for (size_t i = 0; i < shared.ticks.size(); ++i) {
    EXPECT_EQ(shared.ticks[i].state, autonomous.ticks[i].state) << i;
    EXPECT_EQ(shared.ticks[i].u, autonomous.ticks[i].u) << i;
    EXPECT_EQ(shared.ticks[i].theta, 0.0);
  }
}

TEST(RunTest, Deterministic) {
  Scenario s = StraightCorridor(2.5);
  s.user.kind = UserModelSpec::Kind::kPursuit;
  const RunResult a = sharednav::Run(s, 5);
  const RunResult b = sharednav::Run(s, 5);
  EXPECT_EQ(FormatTickLog(a.ticks), FormatTickLog(b.ticks));
  EXPECT_EQ(a.metrics, b.metrics);
}

TEST(RunTest, InvariantsHoldOnPursuitRuns) {
  Scenario s = StraightCorridor(3.0);
  s.user.kind = UserModelSpec::Kind::kPursuit;
  for (Mode mode : {Mode::kManual, Mode::kShared}) {
    s.mode = mode;
    for (uint64_t seed = 0; seed < 3; ++seed) {
      const RunResult r = sharednav::Run(s, seed);
      const RobotState& last = r.ticks.back().state;
      const bool within =
          std::hypot(last.x - s.goal.x, last.y - s.goal.y) <= s.goal_tolerance;
      EXPECT_EQ(r.metrics.success, within);
      if (r.metrics.success) {
        EXPECT_LE(r.metrics.completion_time, s.timeout);
      }
      if (r.metrics.collision_count == 0) {
        for (const TickRecord& t : r.ticks) {
          EXPECT_TRUE(IsPoseFree(s.map, t.state, s.footprint));
        }
      }
      for (size_t i = 0; i < r.ticks.size(); ++i) {
        EXPECT_NEAR(r.ticks[i].t, 0.1 * (i + 1), 1e-9);
      }
      // One pursuit command per control period.
      EXPECT_EQ(r.metrics.user_effort, static_cast<int>(r.ticks.size()));
    }
  }
}

TEST(RunTest, CollisionEndsRun) {
  Scenario s = StraightCorridor(2.0);
  // Steer straight into the wall with a tape.
  s.mode = Mode::kManual;
  s.user.kind = UserModelSpec::Kind::kTape;
  for (int i = 0; i < 100; ++i) s.user.tape.push_back({0.1 * i, {0.5, 1.0}});
  const RunResult r = sharednav::Run(s, 0);
  EXPECT_EQ(r.metrics.collision_count, 1);
  EXPECT_FALSE(r.metrics.success);
  EXPECT_EQ(r.ticks.back().event, TickEvent::kCollision);
  EXPECT_FALSE(IsPoseFree(s.map, r.ticks.back().state, s.footprint));
}

TEST(RunTest, TapeDrivesKAndManualCommands) {
  Scenario s = StraightCorridor(2.0);
  s.mode = Mode::kManual;
  s.user.kind = UserModelSpec::Kind::kTape;
  // Five commands in the first half second, then silence. Stamps sit
  // between ticks so no window edge coincides with one.
  for (int i = 0; i < 5; ++i) s.user.tape.push_back({0.05 + 0.1 * i, {0.4, 0.0}});
  s.timeout = 2.5;
  const RunResult r = sharednav::Run(s, 0);
  // Tick i decides at t = 0.1 i and counts stamps in [t - 1, t].
  EXPECT_EQ(r.ticks[0].k, 0);
  EXPECT_EQ(r.ticks[0].u, (ControlInput{0.0, 0.0}));
  EXPECT_EQ(r.ticks[1].k, 1);
  EXPECT_EQ(r.ticks[5].k, 5);
  EXPECT_EQ(r.ticks[11].k, 4);
  EXPECT_EQ(r.ticks[14].k, 1);
  EXPECT_EQ(r.ticks[15].k, 0);
  EXPECT_EQ(r.ticks[3].u, (ControlInput{0.4, 0.0}));
  // The last command stays in force until it leaves the window.
  EXPECT_EQ(r.ticks[14].u, (ControlInput{0.4, 0.0}));
  EXPECT_EQ(r.ticks[15].u, (ControlInput{0.0, 0.0}));
  EXPECT_EQ(r.metrics.user_effort, 5);
}

TEST(RunTest, SaturatedBlendFollowsUserRollout) {
  Scenario s = StraightCorridor(3.0);
  s.mode = Mode::kShared;
  s.user.kind = UserModelSpec::Kind::kPursuit;
  s.user.period = s.planner.dt;
  s.lambda = 10.0;
  Simulation sim(s, 3);
  while (!sim.done()) {
    const TickRecord& rec = sim.Tick();
    if (rec.t - s.planner.dt < s.window - 1e-9) continue;
    EXPECT_GE(rec.theta, 0.9999);
    const TickDetail& d = sim.last_detail();
    ASSERT_TRUE(d.user_ref);
    std::vector<RobotState> user = d.user_ref->states;
    const double length = std::max(TrajectoryLength(user), 1e-12);
    for (size_t i = 0; i < user.size(); ++i) {
      const double dev = std::hypot(d.blended_ref.states[i].x - user[i].x,
                                    d.blended_ref.states[i].y - user[i].y);
      EXPECT_LT(dev, 1e-3 * length);
    }
  }
}

TEST(RunTest, ActuatorShapesCommand) {
  Scenario s = StraightCorridor(2.0);
  s.mode = Mode::kAutonomous;
  const RunResult ideal = sharednav::Run(s, 1);
  s.actuator.enabled = true;
  const RunResult lagged = sharednav::Run(s, 1);
  EXPECT_EQ(lagged.metrics, sharednav::Run(s, 1).metrics);
  // The first decision is made from the same state in both runs, so the
  // applied velocity is one PID step from rest toward the ideal command.
  const PidGains g = s.actuator.gains;
  const double want_v = sharednav::testing::SimulatePidChannel(
      g.kp, g.ki, g.kd, s.actuator.tau, ideal.ticks[0].u.v, 0.0, s.planner.dt, 1)[0];
  const double want_w = sharednav::testing::SimulatePidChannel(
      g.kp, g.ki, g.kd, s.actuator.tau, ideal.ticks[0].u.w, 0.0, s.planner.dt, 1)[0];
  EXPECT_NEAR(lagged.ticks[0].u.v, want_v, 1e-12);
  EXPECT_NEAR(lagged.ticks[0].u.w, want_w, 1e-12);
  EXPECT_NE(lagged.ticks[0].u.v, ideal.ticks[0].u.v);
  EXPECT_TRUE(lagged.metrics.success);
}

TEST(RunTest, RejectsInvalidScenario) {
  Scenario s = StraightCorridor(2.0);
  s.start = {0.0, 0.0, 0.0};
  try {
    sharednav::Run(s, 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kScenarioInvalid);
  }
  s = StraightCorridor(2.0);
  s.goal = {50.0, 0.6};
  EXPECT_THROW(sharednav::Run(s, 0), Error);
}

TEST(SimulationTest, TickAfterDoneThrows) {
  Scenario s = StraightCorridor(2.0);
  s.mode = Mode::kManual;
  s.timeout = 0.2;
  Simulation sim(s, 0);
  sim.Tick();
  sim.Tick();
  EXPECT_TRUE(sim.done());
  EXPECT_THROW(sim.Tick(), Error);
}

TEST(SimulationTest, ModeAndLambdaSwitchAtNextTick) {
  Scenario s = StraightCorridor(3.0);
  s.mode = Mode::kManual;
  Simulation sim(s, 0);
  sim.InjectCommand(0.0, {0.5, 0.0});
  EXPECT_EQ(sim.Tick().u, (ControlInput{0.5, 0.0}));
  sim.set_mode(Mode::kAutonomous);
  EXPECT_EQ(sim.Tick().theta, 0.0);
  sim.set_mode(Mode::kShared);
  sim.set_lambda(1.0);
  sim.InjectCommand(sim.time(), {0.5, 0.0});
  const TickRecord& rec = sim.Tick();
  EXPECT_EQ(rec.k, 2);
  EXPECT_DOUBLE_EQ(rec.theta, 1.0 - std::exp(-2.0));
  EXPECT_THROW(sim.set_lambda(0.0), Error);
}

TEST(FormatTest, TickLogAndMetrics) {
  Scenario s = StraightCorridor(2.0);
  s.mode = Mode::kAutonomous;
  const RunResult r = sharednav::Run(s, 0);
  const std::string log = FormatTickLog(r.ticks);
  EXPECT_EQ(log.substr(0, log.find('\n')),
            "t,x,y,heading,v,w,theta,k,mode,feasible,event");
  EXPECT_EQ(static_cast<size_t>(std::count(log.begin(), log.end(), '\n')),
            r.ticks.size() + 1);
  EXPECT_NE(log.find(",autonomous,true,goal_reached\n"), std::string::npos);

  const auto j = nlohmann::json::parse(FormatMetricsJson(r.metrics));
  EXPECT_EQ(j.size(), 6u);
  EXPECT_EQ(j.at("success").get<bool>(), true);
  EXPECT_EQ(j.at("trajectory_length").get<double>(), r.metrics.trajectory_length);
}

TEST(DeriveSeedTest, StreamsDiffer) {
  EXPECT_NE(DeriveSeed(0, 1, 0), DeriveSeed(0, 2, 0));
  EXPECT_NE(DeriveSeed(0, 1, 0), DeriveSeed(0, 1, 1));
  EXPECT_NE(DeriveSeed(0, 1, 0), DeriveSeed(1, 1, 0));
  EXPECT_EQ(DeriveSeed(9, 1, 3), DeriveSeed(9, 1, 3));
}

}  // namespace
}  // namespace sharednav
