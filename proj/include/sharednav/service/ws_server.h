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

#ifndef SHAREDNAV_SERVICE_WS_SERVER_H_
#define SHAREDNAV_SERVICE_WS_SERVER_H_

#include <atomic>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <thread>

#include "sharednav/service/wire.h"

namespace sharednav {

// WebSocket endpoint for one teleop client, run on its own I/O thread.
// Outbound ticks are latest-wins: while a frame is still being written the
// newest tick replaces any older unsent one, so a slow client loses ticks
// instead of holding up the caller. Session and error frames are never
// dropped. A second client is refused while one is connected.
class TeleopServer {
 public:
  using MessageHandler = std::function<void(const ClientMessage&)>;
  // Frame sent first on every new connection.
  using GreetingSource = std::function<std::string()>;

  // Binds and listens; port 0 picks a free port. Throws kInvalidArgument
  // when the address cannot be bound (e.g. port in use).
  TeleopServer(const std::string& host, uint16_t port, MessageHandler on_message,
               GreetingSource greeting);
  ~TeleopServer();

  TeleopServer(const TeleopServer&) = delete;
  TeleopServer& operator=(const TeleopServer&) = delete;

  uint16_t port() const;

  void Start();
  void Stop();

  // Thread-safe.
  void PublishTick(std::string frame);
  void SendReliable(std::string frame);

  bool connected() const { return connected_.load(); }
  uint64_t ticks_sent() const { return ticks_sent_.load(); }
  uint64_t ticks_dropped() const { return ticks_dropped_.load(); }

 private:
  struct Impl;
  class Connection;

  void Accept();

  std::unique_ptr<Impl> impl_;
  std::thread io_thread_;
  std::atomic<bool> connected_{false};
  std::atomic<uint64_t> ticks_sent_{0};
  std::atomic<uint64_t> ticks_dropped_{0};
};

}  // namespace sharednav

#endif  // SHAREDNAV_SERVICE_WS_SERVER_H_
