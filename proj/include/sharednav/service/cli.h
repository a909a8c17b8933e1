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

#ifndef SHAREDNAV_SERVICE_CLI_H_
#define SHAREDNAV_SERVICE_CLI_H_

namespace sharednav {

// Process exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 1;
inline constexpr int kExitCollision = 2;
inline constexpr int kExitBatchCellFailed = 3;
inline constexpr int kExitUsage = 64;

// Entry point of the `sharednav` tool with subcommands run, batch and
// serve. Returns the process exit code.
int CliMain(int argc, const char* const* argv);

}  // namespace sharednav

#endif  // SHAREDNAV_SERVICE_CLI_H_
