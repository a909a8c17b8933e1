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

#include "sharednav/error.h"

namespace sharednav {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyMap: return "EmptyMap";
    case ErrorCode::kRaggedRows: return "RaggedRows";
    case ErrorCode::kInvalidChar: return "InvalidChar";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kOutOfBounds: return "OutOfBounds";
    case ErrorCode::kNonPositiveDt: return "NonPositiveDt";
    case ErrorCode::kEmptyControlSequence: return "EmptyControlSequence";
    case ErrorCode::kStartOccupied: return "StartOccupied";
    case ErrorCode::kGoalOccupied: return "GoalOccupied";
    case ErrorCode::kNoPath: return "NoPath";
    case ErrorCode::kEmptyPath: return "EmptyPath";
    case ErrorCode::kNonMonotonicTimestamp: return "NonMonotonicTimestamp";
    case ErrorCode::kNegativeK: return "NegativeK";
    case ErrorCode::kNonPositiveLambda: return "NonPositiveLambda";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::kConfigInvalid: return "ConfigInvalid";
    case ErrorCode::kEmptySequence: return "EmptySequence";
    case ErrorCode::kEmptyTrajectory: return "EmptyTrajectory";
    case ErrorCode::kScenarioInvalid: return "ScenarioInvalid";
    case ErrorCode::kMalformedMessage: return "MalformedMessage";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace sharednav
