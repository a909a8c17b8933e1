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

#ifndef SHAREDNAV_SERVICE_SERVE_H_
#define SHAREDNAV_SERVICE_SERVE_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sharednav/service/live_session.h"
#include "sharednav/service/ws_server.h"

namespace sharednav {

struct ServeOptions {
  std::string scenario_path;
  std::string host = "127.0.0.1";
  uint16_t port = 8765;
  // Ticks per second; 0 means real time, i.e. 1 / planner dt.
  double tick_hz = 0.0;
  uint64_t seed = 0;
  // Stop after this many wall seconds; 0 runs until asked to stop.
  double duration = 0.0;
  std::string log_path;   // tick log of the last run, written on exit
  std::string tape_path;  // command tape of the last run, written on exit
};

// Live session plus its WebSocket endpoint and the fixed-rate tick loop.
class LiveServer {
 public:
  // Loads the scenario and binds the port. Throws kScenarioInvalid or
  // kInvalidArgument.
  explicit LiveServer(ServeOptions options);
  ~LiveServer();

  uint16_t port() const { return server_->port(); }
  double tick_hz() const { return tick_hz_; }
  LiveSession& session() { return *session_; }
  const TeleopServer& server() const { return *server_; }

  // Runs the tick loop on the calling thread until `stop` becomes true or
  // the duration elapses, then writes the optional log and tape.
  void Run(const std::atomic<bool>& stop);

  // Wall-clock instant of every loop iteration of the last Run().
  const std::vector<std::chrono::steady_clock::time_point>& tick_times() const {
    return tick_times_;
  }

 private:
  ServeOptions options_;
  double tick_hz_;
  std::unique_ptr<LiveSession> session_;
  std::unique_ptr<TeleopServer> server_;
  std::vector<std::chrono::steady_clock::time_point> tick_times_;
};

}  // namespace sharednav

#endif  // SHAREDNAV_SERVICE_SERVE_H_
