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

#include "sharednav/service/live_session.h"

#include <filesystem>
#include <utility>

#include "sharednav/error.h"

namespace sharednav {

Scenario LiveScenario(Scenario scenario) {
  scenario.user.kind = UserModelSpec::Kind::kSilent;
  scenario.user.tape.clear();
  scenario.user.tape_path.clear();
  return scenario;
}

LiveSession::LiveSession(Scenario scenario, std::string scenario_id,
                         std::string scenario_dir, uint64_t seed)
    : scenario_dir_(std::move(scenario_dir)),
      scenario_id_(std::move(scenario_id)),
      seed_(seed),
      sim_(LiveScenario(std::move(scenario)), seed) {}

void LiveSession::Submit(const ClientMessage& msg) {
  std::lock_guard<std::mutex> lock(mu_);
  inbox_.push_back({clock_, msg});
}

void LiveSession::ResetLocked(const ResetMessage& reset) {
  Scenario scenario = sim_.scenario();
  std::string id = scenario_id_;
  if (!reset.scenario_id.empty() && reset.scenario_id != scenario_id_) {
    const std::filesystem::path file =
        std::filesystem::path(scenario_dir_) / (reset.scenario_id + ".json");
    scenario = LoadScenarioFile(file.string());
    id = reset.scenario_id;
  } else if (!scenario_dir_.empty()) {
    // Same scenario: reload so that lambda returns to its file value.
    const std::filesystem::path file =
        std::filesystem::path(scenario_dir_) / (scenario_id_ + ".json");
    if (std::filesystem::exists(file)) scenario = LoadScenarioFile(file.string());
  }
  if (mode_override_) scenario.mode = *mode_override_;
  sim_ = Simulation(LiveScenario(std::move(scenario)), reset.seed);
  scenario_id_ = id;
  seed_ = reset.seed;
  tape_.clear();
}

LiveSession::Output LiveSession::Tick() {
  std::lock_guard<std::mutex> lock(mu_);
  Output out;
  bool was_reset = false;
  while (!inbox_.empty()) {
    Pending item = std::move(inbox_.front());
    inbox_.pop_front();
    if (const auto* cmd = std::get_if<CmdMessage>(&item.msg)) {
      if (sim_.done()) continue;
      // Commands queued before a reset carry the old clock.
      const double stamp = was_reset ? sim_.time() : item.stamp;
      const ControlInput u{cmd->v, cmd->w};
      sim_.InjectCommand(stamp, u);
      tape_.push_back({stamp, u});
    } else if (const auto* m = std::get_if<SetModeMessage>(&item.msg)) {
      mode_override_ = m->mode;
      sim_.set_mode(m->mode);
    } else if (const auto* m = std::get_if<SetLambdaMessage>(&item.msg)) {
      try {
        sim_.set_lambda(m->lambda);
      } catch (const Error& e) {
        out.errors.push_back(e.what());
      }
    } else {
      try {
        ResetLocked(std::get<ResetMessage>(item.msg));
        was_reset = true;
      } catch (const Error& e) {
        out.errors.push_back(std::string("reset failed: ") + e.what());
      }
    }
  }
  if (was_reset) out.session = MakeSessionInfo(sim_, scenario_id_, seed_);
  if (!sim_.done()) {
    sim_.Tick();
    out.tick = MakeTickMessage(sim_);
  }
  clock_ = sim_.time();
  return out;
}

SessionInfoMessage LiveSession::Info() const {
  std::lock_guard<std::mutex> lock(mu_);
  return MakeSessionInfo(sim_, scenario_id_, seed_);
}

std::vector<TimedCommand> LiveSession::Tape() const {
  std::lock_guard<std::mutex> lock(mu_);
  return tape_;
}

std::vector<TickRecord> LiveSession::Records() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sim_.records();
}

Scenario LiveSession::CurrentScenario() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sim_.scenario();
}

uint64_t LiveSession::seed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return seed_;
}

}  // namespace sharednav
