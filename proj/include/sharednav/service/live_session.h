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

#ifndef SHAREDNAV_SERVICE_LIVE_SESSION_H_
#define SHAREDNAV_SERVICE_LIVE_SESSION_H_

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "sharednav/intent_blend.h"
#include "sharednav/scenario.h"
#include "sharednav/service/wire.h"
#include "sharednav/simulator.h"

namespace sharednav {

// Simulation side of a live session. Submit() may be called from any thread;
// everything else belongs to the simulation loop.
//
// A cmd is stamped with the decision time of the next tick at the moment it
// is submitted, and the whole of Tick() runs under the same lock. A command
// therefore lands in exactly the tick a headless run fed the captured tape
// would give it, which is what makes the tape replay tick-for-tick.
class LiveSession {
 public:
  // The scenario's own user model is replaced by the live client. Throws
  // kScenarioInvalid. `scenario_dir` is where reset looks up
  // "<scenario_id>.json".
  LiveSession(Scenario scenario, std::string scenario_id,
              std::string scenario_dir, uint64_t seed);

  void Submit(const ClientMessage& msg);

  struct Output {
    std::optional<ServerTickMessage> tick;      // absent once the run is over
    std::optional<SessionInfoMessage> session;  // set after a reset
    std::vector<std::string> errors;            // rejected control messages
  };

  // Applies everything submitted so far, then advances one tick unless the
  // run has finished.
  Output Tick();

  SessionInfoMessage Info() const;

  // Commands recorded since the last reset, as (stamp, v, w).
  std::vector<TimedCommand> Tape() const;
  // Ticks since the last reset.
  std::vector<TickRecord> Records() const;
  Scenario CurrentScenario() const;
  uint64_t seed() const;

 private:
  struct Pending {
    double stamp;
    ClientMessage msg;
  };

  void ResetLocked(const ResetMessage& reset);

  mutable std::mutex mu_;
  std::string scenario_dir_;
  std::string scenario_id_;
  uint64_t seed_;
  std::optional<Mode> mode_override_;
  Simulation sim_;
  double clock_ = 0.0;
  std::deque<Pending> inbox_;
  std::vector<TimedCommand> tape_;
};

// Copy of `scenario` driven only by injected commands.
Scenario LiveScenario(Scenario scenario);

}  // namespace sharednav

#endif  // SHAREDNAV_SERVICE_LIVE_SESSION_H_
