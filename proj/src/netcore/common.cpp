// Copyright 2026 The dqgame Authors. All rights reserved.
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

#include "dqgame/common.hpp"

namespace dqgame {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCyclicGraph: return "CyclicGraph";
    case ErrorCode::kEdgeOffAllPaths: return "EdgeOffAllPaths";
    case ErrorCode::kIncompletePriorityOrder: return "IncompletePriorityOrder";
    case ErrorCode::kInvalidNetwork: return "InvalidNetwork";
    case ErrorCode::kEmptySchedule: return "EmptySchedule";
    case ErrorCode::kInvalidSchedule: return "InvalidSchedule";
    case ErrorCode::kNotSeriesParallel: return "NotSeriesParallel";
    case ErrorCode::kUnknownAgent: return "UnknownAgent";
    case ErrorCode::kInvalidAction: return "InvalidAction";
    case ErrorCode::kPathNotFromCurrentEdge: return "PathNotFromCurrentEdge";
    case ErrorCode::kInvalidPath: return "InvalidPath";
    case ErrorCode::kHorizonExceeded: return "HorizonExceeded";
    case ErrorCode::kUnreachable: return "Unreachable";
    case ErrorCode::kTooManyPaths: return "TooManyPaths";
    case ErrorCode::kVertexNotOnPath: return "VertexNotOnPath";
    case ErrorCode::kBaseInvarianceViolated: return "BaseInvarianceViolated";
    case ErrorCode::kNotAnNE: return "NotAnNE";
    case ErrorCode::kTooManyProfiles: return "TooManyProfiles";
    case ErrorCode::kInflowExceedsCut: return "InflowExceedsCut";
    case ErrorCode::kDegreeConditionViolated: return "DegreeConditionViolated";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kUnresolvedReference: return "UnresolvedReference";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code) {}

}  // namespace dqgame
