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

#include "sharednav/service/serve.h"

#include <filesystem>
#include <fstream>
#include <thread>
#include <utility>

#include "sharednav/error.h"

namespace sharednav {
namespace {

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  }
}

}  // namespace

LiveServer::LiveServer(ServeOptions options) : options_(std::move(options)) {
  Scenario scenario = LoadScenarioFile(options_.scenario_path);
  tick_hz_ = options_.tick_hz > 0.0 ? options_.tick_hz : 1.0 / scenario.planner.dt;
  const std::filesystem::path path(options_.scenario_path);
  session_ = std::make_unique<LiveSession>(std::move(scenario),
                                           path.stem().string(),
                                           path.parent_path().string(),
                                           options_.seed);
  LiveSession* session = session_.get();
  server_ = std::make_unique<TeleopServer>(
      options_.host, options_.port,
      [session](const ClientMessage& msg) { session->Submit(msg); },
      [session] { return SerializeServerMessage(session->Info()); });
}

LiveServer::~LiveServer() { server_->Stop(); }

void LiveServer::Run(const std::atomic<bool>& stop) {
  using Clock = std::chrono::steady_clock;
  const auto period = std::chrono::duration_cast<Clock::duration>(
      std::chrono::duration<double>(1.0 / tick_hz_));
  const auto start = Clock::now();
  const auto deadline =
      start + std::chrono::duration_cast<Clock::duration>(
                  std::chrono::duration<double>(options_.duration));
  tick_times_.clear();
  server_->Start();

  auto next = start;
  while (!stop.load()) {
    const auto now = Clock::now();
    if (options_.duration > 0.0 && now >= deadline) break;
    tick_times_.push_back(now);
    LiveSession::Output out = session_->Tick();
    if (out.session) server_->SendReliable(SerializeServerMessage(*out.session));
    for (std::string& e : out.errors) {
      server_->SendReliable(SerializeServerMessage(ErrorMessage{std::move(e)}));
    }
    if (out.tick) server_->PublishTick(SerializeServerMessage(*out.tick));

    next += period;
    // After an overrun keep the cadence rather than bursting to catch up.
    if (next < Clock::now()) next = Clock::now();
    std::this_thread::sleep_until(next);
  }
  server_->Stop();

  if (!options_.log_path.empty()) {
    WriteFile(options_.log_path, FormatTickLog(session_->Records()));
  }
  if (!options_.tape_path.empty()) {
    WriteFile(options_.tape_path, FormatTape(session_->Tape()));
  }
}

}  // namespace sharednav
