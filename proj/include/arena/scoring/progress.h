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

#ifndef ARENA_SCORING_PROGRESS_H_
#define ARENA_SCORING_PROGRESS_H_

// Per-frame task-progress scores returned by an external scorer.
//
// Frames are sent to the scorer in shuffled order with the initial frame
// prepended as a zero-progress reference; the plan below records the
// permutation so the returned scores can be put back in temporal order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arena/common/error.h"

namespace arena::scoring {

inline constexpr double kMinScore = 0.0;
inline constexpr double kMaxScore = 100.0;

struct FrameScoreSeries {
  std::string execution_id;
  std::vector<double> scores;          // one per sampled frame, in [0, 100]
  std::vector<int64_t> frame_indices;  // strictly increasing

  friend bool operator==(const FrameScoreSeries&,
                         const FrameScoreSeries&) = default;
};

// Throws kInvalidArgument when any series invariant is broken.
void ValidateSeries(const FrameScoreSeries& series);

struct ShufflePlan {
  // permutation[i] is the slot, among the shuffled frames, that carries the
  // frame at temporal position i.
  std::vector<size_t> permutation;
  uint64_t seed = 0;
  // Position of the zero-progress reference in the transmitted sequence.
  size_t zero_reference_index = 0;
  std::vector<int64_t> frame_indices;

  size_t frame_count() const { return permutation.size(); }
  size_t transmitted_count() const { return permutation.size() + 1; }
  // Index into the transmitted sequence carrying temporal position i.
  size_t TransmittedIndex(size_t temporal_position) const;
};

ShufflePlan MakeShufflePlan(size_t frame_count, uint64_t seed);
ShufflePlan MakeShufflePlan(std::vector<int64_t> frame_indices, uint64_t seed);

// Arranges frames in transmission order with the reference inserted.
template <typename T>
std::vector<T> ApplyShufflePlan(const ShufflePlan& plan, std::span<const T> frames,
                                const T& zero_reference) {
  Require(frames.size() == plan.frame_count(),
          "frame count does not match the shuffle plan");
  std::vector<T> out(plan.transmitted_count(), zero_reference);
  for (size_t i = 0; i < frames.size(); ++i) {
    out[plan.TransmittedIndex(i)] = frames[i];
  }
  return out;
}

struct DeshuffleResult {
  FrameScoreSeries series;
  double zero_reference_score = 0.0;  // diagnostics only
  size_t clamped_count = 0;           // scores pulled back into [0, 100]
};

// `transmitted_scores` is in transmission order, reference included.
DeshuffleResult DeshuffleScores(std::span<const double> transmitted_scores,
                                const ShufflePlan& plan,
                                std::string execution_id = {});

enum class AggregateMethod { kFullMean, kFinal30, kTop30 };

std::string_view AggregateMethodName(AggregateMethod method);
AggregateMethod ParseAggregateMethod(std::string_view name);

struct AggregateScore {
  double value = 0.0;
  AggregateMethod method = AggregateMethod::kFinal30;
};

// max(1, round_half_up(0.3 * frame_count)).
size_t WindowSize(size_t frame_count);

AggregateScore Aggregate(const FrameScoreSeries& series,
                         AggregateMethod method = AggregateMethod::kFinal30);

// Sample standard deviation over sqrt(n). Throws kInsufficientSamples for
// fewer than two values.
double Sem(std::span<const double> values);

// Scorer wire format.
nlohmann::json MakeScorerRequest(const std::string& execution_id,
                                 const std::string& instruction,
                                 std::span<const std::string> frame_uris,
                                 const std::string& zero_reference_uri,
                                 const ShufflePlan& plan);
// Returns the scores in transmitted order; kParseError on malformed bodies.
std::vector<double> ParseScorerResponse(const nlohmann::json& response,
                                        size_t expected_count);

nlohmann::json SeriesToJson(const FrameScoreSeries& series);
FrameScoreSeries SeriesFromJson(const nlohmann::json& j);

}  // namespace arena::scoring

#endif  // ARENA_SCORING_PROGRESS_H_
