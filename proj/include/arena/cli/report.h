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

#ifndef ARENA_CLI_REPORT_H_
#define ARENA_CLI_REPORT_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arena/scoring/progress.h"

namespace arena::cli {

// A score series plus the optional labels carried on its JSONL line.
struct LabeledSeries {
  scoring::FrameScoreSeries series;
  std::map<std::string, std::string> labels;  // policy, environment, perturbation
};

// Every *.jsonl file under `dir`, sorted by path, one series per line.
// kIoError when `dir` is missing; kParseError names the file and line.
std::vector<LabeledSeries> ReadScoreDir(const std::filesystem::path& dir);

struct ReportRow {
  std::string policy;
  std::string group;
  double mean = 0.0;
  std::optional<double> sem;  // only when n >= 2
  size_t n = 0;
};

// `group_by` is a label name ("environment", "perturbation") or "none".
// Missing labels read as "unknown". Rows are sorted by (policy, group).
std::vector<ReportRow> BuildReport(const std::vector<LabeledSeries>& series,
                                   const std::string& group_by,
                                   scoring::AggregateMethod method);

// RFC 4180 field quoting.
std::string CsvField(std::string_view value);
// Fixed "%.6f" formatting, independent of locale.
std::string FormatNumber(double value);

std::string ReportToCsv(const std::vector<ReportRow>& rows, const std::string& group_by);
nlohmann::json ReportToJson(const std::vector<ReportRow>& rows, const std::string& group_by);
std::string ReportToTable(const std::vector<ReportRow>& rows, const std::string& group_by);

}  // namespace arena::cli

#endif  // ARENA_CLI_REPORT_H_
