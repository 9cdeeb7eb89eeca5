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

#ifndef DQGAME_COMMON_HPP_
#define DQGAME_COMMON_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dqgame {

// Dense integer handle. Distinct tags keep vertex, edge and agent indices
// from being mixed up.
template <class Tag>
class Id {
 public:
  constexpr Id() = default;
  constexpr explicit Id(std::int32_t v) : value_(v) {}
  constexpr explicit Id(std::size_t v) : value_(static_cast<std::int32_t>(v)) {}

  constexpr std::int32_t value() const { return value_; }
  constexpr std::size_t idx() const { return static_cast<std::size_t>(value_); }
  constexpr bool valid() const { return value_ >= 0; }

  friend constexpr auto operator<=>(Id, Id) = default;

 private:
  std::int32_t value_ = -1;
};

using VertexId = Id<struct VertexTag>;
using EdgeId = Id<struct EdgeTag>;
using AgentId = Id<struct AgentTag>;

using Time = std::int64_t;
inline constexpr Time kNever = std::numeric_limits<Time>::max() / 4;

enum class ErrorCode {
  kCyclicGraph,
  kEdgeOffAllPaths,
  kIncompletePriorityOrder,
  kInvalidNetwork,
  kEmptySchedule,
  kInvalidSchedule,
  kNotSeriesParallel,
  kUnknownAgent,
  kInvalidAction,
  kPathNotFromCurrentEdge,
  kInvalidPath,
  kHorizonExceeded,
  kUnreachable,
  kTooManyPaths,
  kVertexNotOnPath,
  kBaseInvarianceViolated,
  kNotAnNE,
  kTooManyProfiles,
  kInflowExceedsCut,
  kDegreeConditionViolated,
  kParseError,
  kUnresolvedReference,
  kInternal,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dqgame

template <class Tag>
struct std::hash<dqgame::Id<Tag>> {
  std::size_t operator()(dqgame::Id<Tag> id) const noexcept {
    return std::hash<std::int32_t>()(id.value());
  }
};

#endif  // DQGAME_COMMON_HPP_
