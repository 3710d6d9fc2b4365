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

#include "arena/scoring/progress.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <utility>

#include "arena/common/random.h"

namespace arena::scoring {

void ValidateSeries(const FrameScoreSeries& series) {
  Require(!series.scores.empty(), "score series is empty");
  Require(series.scores.size() == series.frame_indices.size(),
          "scores and frame_indices differ in length");
  for (double score : series.scores) {
    Require(score >= kMinScore && score <= kMaxScore,
            "score " + std::to_string(score) + " outside [0, 100]");
  }
  for (size_t i = 1; i < series.frame_indices.size(); ++i) {
    Require(series.frame_indices[i - 1] < series.frame_indices[i],
            "frame indices must be strictly increasing");
  }
}

size_t ShufflePlan::TransmittedIndex(size_t temporal_position) const {
  const size_t slot = permutation.at(temporal_position);
  return slot < zero_reference_index ? slot : slot + 1;
}

ShufflePlan MakeShufflePlan(size_t frame_count, uint64_t seed) {
  Require(frame_count >= 1, "frame_count must be at least 1");
  std::vector<int64_t> indices(frame_count);
  std::iota(indices.begin(), indices.end(), int64_t{0});
  return MakeShufflePlan(std::move(indices), seed);
}

ShufflePlan MakeShufflePlan(std::vector<int64_t> frame_indices, uint64_t seed) {
  Require(!frame_indices.empty(), "frame_count must be at least 1");
  for (size_t i = 1; i < frame_indices.size(); ++i) {
    Require(frame_indices[i - 1] < frame_indices[i],
            "frame indices must be strictly increasing");
  }
  ShufflePlan plan;
  plan.seed = seed;
  plan.zero_reference_index = 0;
  plan.permutation.resize(frame_indices.size());
  std::iota(plan.permutation.begin(), plan.permutation.end(), size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span<size_t>(plan.permutation));
  plan.frame_indices = std::move(frame_indices);
  return plan;
}

DeshuffleResult DeshuffleScores(std::span<const double> transmitted_scores,
                                const ShufflePlan& plan,
                                std::string execution_id) {
  Require(transmitted_scores.size() == plan.transmitted_count(),
          "expected " + std::to_string(plan.transmitted_count()) +
              " scores (reference included), got " +
              std::to_string(transmitted_scores.size()));
  DeshuffleResult result;
  auto clamp = [&result](double score) {
    Require(std::isfinite(score), "scorer returned a non-finite score");
    const double clamped = std::clamp(score, kMinScore, kMaxScore);
    if (clamped != score) ++result.clamped_count;
    return clamped;
  };
  result.zero_reference_score =
      clamp(transmitted_scores[plan.zero_reference_index]);
  result.series.execution_id = std::move(execution_id);
  result.series.frame_indices = plan.frame_indices;
  result.series.scores.resize(plan.frame_count());
  for (size_t i = 0; i < plan.frame_count(); ++i) {
    result.series.scores[i] = clamp(transmitted_scores[plan.TransmittedIndex(i)]);
  }
  return result;
}

std::string_view AggregateMethodName(AggregateMethod method) {
  switch (method) {
    case AggregateMethod::kFullMean: return "FULL_MEAN";
    case AggregateMethod::kFinal30: return "FINAL_30";
    case AggregateMethod::kTop30: return "TOP_30";
  }
  return "UNKNOWN";
}

AggregateMethod ParseAggregateMethod(std::string_view name) {
  for (AggregateMethod method : {AggregateMethod::kFullMean,
                                 AggregateMethod::kFinal30,
                                 AggregateMethod::kTop30}) {
    if (AggregateMethodName(method) == name) return method;
  }
  Fail(ErrorCode::kInvalidArgument,
       "unknown aggregate method '" + std::string(name) + "'");
}

size_t WindowSize(size_t frame_count) {
  // round_half_up(3T / 10) in integers.
  return std::max<size_t>(1, (3 * frame_count + 5) / 10);
}

AggregateScore Aggregate(const FrameScoreSeries& series,
                         AggregateMethod method) {
  ValidateSeries(series);
  const std::vector<double>& scores = series.scores;
  const size_t k = WindowSize(scores.size());
  double sum = 0.0;
  size_t count = 0;
  switch (method) {
    case AggregateMethod::kFullMean:
      sum = std::accumulate(scores.begin(), scores.end(), 0.0);
      count = scores.size();
      break;
    case AggregateMethod::kFinal30:
      sum = std::accumulate(scores.end() - static_cast<long>(k), scores.end(), 0.0);
      count = k;
      break;
    case AggregateMethod::kTop30: {
      std::vector<double> sorted = scores;
      std::partial_sort(sorted.begin(), sorted.begin() + static_cast<long>(k),
                        sorted.end(), std::greater<>());
      sum = std::accumulate(sorted.begin(), sorted.begin() + static_cast<long>(k), 0.0);
      count = k;
      break;
    }
  }
  return {sum / static_cast<double>(count), method};
}

double Sem(std::span<const double> values) {
  if (values.size() < 2) {
    Fail(ErrorCode::kInsufficientSamples,
         "SEM needs at least two values, got " + std::to_string(values.size()));
  }
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double squares = 0.0;
  for (double v : values) squares += (v - mean) * (v - mean);
  return std::sqrt(squares / (n - 1.0)) / std::sqrt(n);
}

nlohmann::json MakeScorerRequest(const std::string& execution_id,
                                 const std::string& instruction,
                                 std::span<const std::string> frame_uris,
                                 const std::string& zero_reference_uri,
                                 const ShufflePlan& plan) {
  return {{"execution_id", execution_id},
          {"instruction", instruction},
          {"frames", ApplyShufflePlan(plan, frame_uris, zero_reference_uri)},
          {"zero_reference_position", plan.zero_reference_index}};
}

std::vector<double> ParseScorerResponse(const nlohmann::json& response,
                                        size_t expected_count) {
  auto it = response.find("scores");
  if (!response.is_object() || it == response.end() || !it->is_array()) {
    Fail(ErrorCode::kParseError, "scorer response lacks a 'scores' array");
  }
  std::vector<double> scores;
  for (const nlohmann::json& value : *it) {
    if (!value.is_number()) {
      Fail(ErrorCode::kParseError, "scorer response holds a non-numeric score");
    }
    scores.push_back(value.get<double>());
  }
  if (scores.size() != expected_count) {
    Fail(ErrorCode::kParseError,
         "scorer returned " + std::to_string(scores.size()) + " scores, expected " +
             std::to_string(expected_count));
  }
  return scores;
}

nlohmann::json SeriesToJson(const FrameScoreSeries& series) {
  return {{"execution_id", series.execution_id},
          {"frame_indices", series.frame_indices},
          {"scores", series.scores}};
}

FrameScoreSeries SeriesFromJson(const nlohmann::json& j) {
  FrameScoreSeries series;
  try {
    series.execution_id = j.at("execution_id").get<std::string>();
    series.scores = j.at("scores").get<std::vector<double>>();
    series.frame_indices = j.at("frame_indices").get<std::vector<int64_t>>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("bad score series: ") + e.what());
  }
  ValidateSeries(series);
  return series;
}

}  // namespace arena::scoring
