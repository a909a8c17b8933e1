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

#include "sharednav/batch.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "sharednav/error.h"

namespace sharednav {

BatchRow Aggregate(const std::string& scenario, Mode mode,
                   const std::vector<MetricsReport>& runs) {
  BatchRow row;
  row.scenario = scenario;
  row.mode = mode;
  row.n_runs = static_cast<int>(runs.size());
  if (runs.empty()) return row;
  for (const MetricsReport& m : runs) {
    row.mean_time_s += m.completion_time;
    row.success_rate += m.success ? 1.0 : 0.0;
    row.collision_rate += m.collision_count > 0 ? 1.0 : 0.0;
    row.mean_length_m += m.trajectory_length;
    row.mean_angle_sum_rad += m.angle_diff_sum;
    row.mean_user_effort += m.user_effort;
  }
  const double n = static_cast<double>(runs.size());
  row.mean_time_s /= n;
  row.success_rate /= n;
  row.collision_rate /= n;
  row.mean_length_m /= n;
  row.mean_angle_sum_rad /= n;
  row.mean_user_effort /= n;
  return row;
}

std::vector<BatchRow> Batch(const std::vector<BatchScenario>& scenarios,
                            const std::vector<Mode>& modes,
                            const std::vector<uint64_t>& seeds) {
  if (scenarios.empty() || modes.empty() || seeds.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "batch needs scenarios, modes and seeds");
  }
  std::vector<BatchRow> rows;
  for (const BatchScenario& slot : scenarios) {
    for (const Mode mode : modes) {
      if (!slot.scenario) {
        BatchRow row;
        row.scenario = slot.name;
        row.mode = mode;
        row.failed = true;
        row.error = slot.load_error;
        rows.push_back(row);
        continue;
      }
      Scenario s = *slot.scenario;
      s.mode = mode;
      std::vector<MetricsReport> runs;
      try {
        for (const uint64_t seed : seeds) runs.push_back(Run(s, seed).metrics);
        rows.push_back(Aggregate(slot.name, mode, runs));
      } catch (const Error& e) {
        BatchRow row;
        row.scenario = slot.name;
        row.mode = mode;
        row.failed = true;
        row.error = e.what();
        rows.push_back(row);
      }
    }
  }
  return rows;
}

std::vector<BatchScenario> LoadScenarioDir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw Error(ErrorCode::kScenarioInvalid,
                "'" + dir + "' is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir, ec)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  if (files.empty()) {
    throw Error(ErrorCode::kScenarioInvalid,
                "no *.json scenarios in '" + dir + "'");
  }
  std::sort(files.begin(), files.end());

  std::vector<BatchScenario> out;
  for (const fs::path& file : files) {
    BatchScenario slot;
    slot.name = file.stem().string();
    try {
      slot.scenario = LoadScenarioFile(file.string());
    } catch (const Error& e) {
      slot.load_error = e.what();
    }
    out.push_back(std::move(slot));
  }
  return out;
}

std::string FormatBatchReport(const std::vector<BatchRow>& rows) {
  std::string out =
      "scenario,mode,n_runs,mean_time_s,success_rate,collision_rate,"
      "mean_length_m,mean_angle_sum_rad,mean_user_effort\n";
  char buf[512];
  for (const BatchRow& r : rows) {
    const std::string mode(ModeName(r.mode));
    if (r.failed) {
      std::snprintf(buf, sizeof(buf), "%s,%s,0,nan,nan,nan,nan,nan,nan\n",
                    r.scenario.c_str(), mode.c_str());
    } else {
      std::snprintf(buf, sizeof(buf),
                    "%s,%s,%d,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                    r.scenario.c_str(), mode.c_str(), r.n_runs, r.mean_time_s,
                    r.success_rate, r.collision_rate, r.mean_length_m,
                    r.mean_angle_sum_rad, r.mean_user_effort);
    }
    out += buf;
  }
  return out;
}

}  // namespace sharednav
