// Copyright 2026 The Policy Arena Authors.
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

#ifndef ARENA_COMMON_ERROR_H_
#define ARENA_COMMON_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace arena {

// Every failure raised by the library carries one of these codes so callers
// (HTTP layer, CLI exit codes) can map them without string matching.
enum class ErrorCode {
  kInvalidArgument,
  kPreconditionViolation,
  kParseError,
  // ranking
  kGraphDisconnected,
  kEmptyDecisiveSet,
  // scoring
  kInsufficientSamples,
  // perturbation
  kNotInCatalog,
  // geometry
  kInsufficientOverlap,
  kInsufficientCorrespondences,
  kDegenerateBox,
  kRenderFailure,
  // sysid
  kNumericalInstability,
  kOptimizationFailed,
  // service
  kNotQualified,
  kNoPairsAvailable,
  kRationaleRequired,
  kInvalidPair,
  kAlreadyJudged,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised when the decisive comparison graph splits into several components.
class GraphDisconnectedError : public Error {
 public:
  explicit GraphDisconnectedError(std::vector<std::vector<std::string>> components);

  const std::vector<std::vector<std::string>>& components() const {
    return components_;
  }

 private:
  std::vector<std::vector<std::string>> components_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, const std::string& message) {
  if (!condition) Fail(ErrorCode::kInvalidArgument, message);
}

}  // namespace arena

#endif  // ARENA_COMMON_ERROR_H_
