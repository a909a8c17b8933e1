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

#include "sharednav/service/cli.h"

#include <atomic>
#include <csignal>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sharednav/batch.h"
#include "sharednav/error.h"
#include "sharednav/scenario.h"
#include "sharednav/service/serve.h"
#include "sharednav/simulator.h"

namespace sharednav {
namespace {

std::atomic<bool> g_stop{false};

extern "C" void OnSignal(int) { g_stop = true; }

const std::vector<std::string> kModeNames = {"manual", "autonomous", "shared"};

bool WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

struct RunArgs {
  std::string scenario;
  std::string mode;
  uint64_t seed = 0;
  std::string out;
  std::string log;
};

int DoRun(const RunArgs& args) {
  Scenario scenario;
  RunResult result;
  try {
    scenario = LoadScenarioFile(args.scenario);
    scenario.mode = ParseMode(args.mode);
    result = Run(scenario, args.seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  if (!WriteFile(args.out, FormatMetricsJson(result.metrics))) {
    return kExitInvalidInput;
  }
  if (!args.log.empty() && !WriteFile(args.log, FormatTickLog(result.ticks))) {
    return kExitInvalidInput;
  }
  return result.metrics.collision_count > 0 ? kExitCollision : kExitOk;
}

struct BatchArgs {
  std::string scenarios;
  std::vector<std::string> modes;
  int seeds = 0;
  std::string out;
};

int DoBatch(const BatchArgs& args) {
  std::vector<BatchScenario> scenarios;
  try {
    scenarios = LoadScenarioDir(args.scenarios);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  std::vector<Mode> modes;
  for (const std::string& m : args.modes) modes.push_back(ParseMode(m));
  std::vector<uint64_t> seeds;
  for (int i = 0; i < args.seeds; ++i) seeds.push_back(static_cast<uint64_t>(i));

  const std::vector<BatchRow> rows = Batch(scenarios, modes, seeds);
  if (!WriteFile(args.out, FormatBatchReport(rows))) return kExitInvalidInput;
  bool failed = false;
  for (const BatchRow& row : rows) {
    if (row.failed) {
      std::cerr << "error: " << row.scenario << "/" << ModeName(row.mode)
                << ": " << row.error << "\n";
      failed = true;
    }
  }
  return failed ? kExitBatchCellFailed : kExitOk;
}

int DoServe(const ServeOptions& options) {
  try {
    LiveServer server(options);
    std::cerr << "serving " << options.scenario_path << " on ws://"
              << options.host << ":" << server.port() << " at "
              << server.tick_hz() << " Hz\n";
    g_stop = false;
    std::signal(SIGINT, OnSignal);
    std::signal(SIGTERM, OnSignal);
    server.Run(g_stop);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

}  // namespace

int CliMain(int argc, const char* const* argv) {
  CLI::App app{"Shared-control wheelchair navigation: headless runs, batch "
               "comparisons and live teleop sessions."};
  app.name("sharednav");
  app.require_subcommand(1);

  RunArgs run;
  CLI::App* run_cmd = app.add_subcommand("run", "Run one scenario headless");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON file")
      ->required();
  run_cmd->add_option("--mode", run.mode, "manual, autonomous or shared")
      ->required()
      ->check(CLI::IsMember(kModeNames));
  run_cmd->add_option("--seed", run.seed, "Random seed")->capture_default_str();
  run_cmd->add_option("--out", run.out, "Metrics report (JSON)")->required();
  run_cmd->add_option("--log", run.log, "Per-tick log (CSV)");

  BatchArgs batch;
  CLI::App* batch_cmd =
      app.add_subcommand("batch", "Run every scenario x mode over seeds 0..N-1");
  batch_cmd->add_option("--scenarios", batch.scenarios,
                        "Directory of scenario JSON files")
      ->required();
  batch_cmd->add_option("--modes", batch.modes, "Comma-separated modes")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember(kModeNames));
  batch_cmd->add_option("--seeds", batch.seeds, "Number of seeds")
      ->required()
      ->check(CLI::PositiveNumber);
  batch_cmd->add_option("--out", batch.out, "Report (CSV)")->required();

  ServeOptions serve;
  CLI::App* serve_cmd =
      app.add_subcommand("serve", "Serve a live session over WebSocket");
  serve_cmd->add_option("--scenario", serve.scenario_path, "Scenario JSON file")
      ->required();
  serve_cmd->add_option("--port", serve.port, "TCP port")->required();
  serve_cmd->add_option("--host", serve.host, "Bind address")
      ->capture_default_str();
  serve_cmd->add_option("--tick-hz", serve.tick_hz,
                        "Tick rate; default is real time (1 / planner dt)")
      ->check(CLI::NonNegativeNumber);
  serve_cmd->add_option("--seed", serve.seed, "Random seed")
      ->capture_default_str();
  serve_cmd->add_option("--duration", serve.duration,
                        "Stop after this many seconds (0: until signalled)")
      ->check(CLI::NonNegativeNumber);
  serve_cmd->add_option("--log", serve.log_path, "Tick log of the last run");
  serve_cmd->add_option("--tape-out", serve.tape_path,
                        "Command tape of the last run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (run_cmd->parsed()) return DoRun(run);
  if (batch_cmd->parsed()) return DoBatch(batch);
  return DoServe(serve);
}

}  // namespace sharednav
