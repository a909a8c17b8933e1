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

#ifndef SHAREDNAV_BATCH_H_
#define SHAREDNAV_BATCH_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sharednav/scenario.h"
#include "sharednav/simulator.h"

namespace sharednav {

// A scenario slot of a batch. A slot whose file failed to load keeps the
// diagnostic and yields failed rows instead of aborting the batch.
struct BatchScenario {
  std::string name;
  std::optional<Scenario> scenario;
  std::string load_error;
};

struct BatchRow {
  std::string scenario;
  Mode mode = Mode::kShared;
  int n_runs = 0;
  double mean_time_s = 0.0;
  double success_rate = 0.0;
  double collision_rate = 0.0;
  double mean_length_m = 0.0;
  double mean_angle_sum_rad = 0.0;
  double mean_user_effort = 0.0;
  bool failed = false;
  std::string error;
};

// Mean of each metric over runs; collision_rate is the fraction of runs that
// ended in a collision.
BatchRow Aggregate(const std::string& scenario, Mode mode,
                   const std::vector<MetricsReport>& runs);

// Runs every (scenario, mode) cell over `seeds`, overriding each scenario's
// own mode. Rows come out scenario-major in input order.
std::vector<BatchRow> Batch(const std::vector<BatchScenario>& scenarios,
                            const std::vector<Mode>& modes,
                            const std::vector<uint64_t>& seeds);

// Loads every *.json scenario in `dir`, sorted by file name. Throws
// kScenarioInvalid when the directory is missing or holds no scenarios.
std::vector<BatchScenario> LoadScenarioDir(const std::string& dir);

// CSV with columns scenario, mode, n_runs, mean_time_s, success_rate,
// collision_rate, mean_length_m, mean_angle_sum_rad, mean_user_effort.
// Failed cells report n_runs 0 and nan metrics.
std::string FormatBatchReport(const std::vector<BatchRow>& rows);

}  // namespace sharednav

#endif  // SHAREDNAV_BATCH_H_
