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

#include "arena/common/error.h"

namespace arena {
namespace {

std::string DescribeComponents(
    const std::vector<std::vector<std::string>>& components) {
  std::string out = "comparison graph is disconnected into " +
                    std::to_string(components.size()) + " components:";
  for (const auto& component : components) {
    out += " {";
    for (size_t i = 0; i < component.size(); ++i) {
      if (i > 0) out += ", ";
      out += component[i];
    }
    out += "}";
  }
  return out;
}

}  // namespace

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kPreconditionViolation: return "PreconditionViolation";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kGraphDisconnected: return "GraphDisconnected";
    case ErrorCode::kEmptyDecisiveSet: return "EmptyDecisiveSet";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kNotInCatalog: return "NotInCatalog";
    case ErrorCode::kInsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::kInsufficientCorrespondences:
      return "InsufficientCorrespondences";
    case ErrorCode::kDegenerateBox: return "DegenerateBox";
    case ErrorCode::kRenderFailure: return "RenderFailure";
    case ErrorCode::kNumericalInstability: return "NumericalInstability";
    case ErrorCode::kOptimizationFailed: return "OptimizationFailed";
    case ErrorCode::kNotQualified: return "NotQualified";
    case ErrorCode::kNoPairsAvailable: return "NoPairsAvailable";
    case ErrorCode::kRationaleRequired: return "RationaleRequired";
    case ErrorCode::kInvalidPair: return "InvalidPair";
    case ErrorCode::kAlreadyJudged: return "AlreadyJudged";
    case ErrorCode::kIoError: return "IoError";
  }
  return "Unknown";
}

GraphDisconnectedError::GraphDisconnectedError(
    std::vector<std::vector<std::string>> components)
    : Error(ErrorCode::kGraphDisconnected, DescribeComponents(components)),
      components_(std::move(components)) {}

}  // namespace arena
