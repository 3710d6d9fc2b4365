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

#include "arena/cli/report.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "arena/common/error.h"

namespace arena::cli {
namespace {

constexpr const char* kLabelKeys[] = {"policy", "environment", "perturbation"};

}  // namespace

std::vector<LabeledSeries> ReadScoreDir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    Fail(ErrorCode::kIoError, "scores directory " + dir.string() + " does not exist");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<LabeledSeries> out;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) Fail(ErrorCode::kIoError, "cannot open " + file.string());
    std::string text;
    size_t line = 0;
    while (std::getline(in, text)) {
      ++line;
      if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
      const std::string where = file.string() + ": line " + std::to_string(line) + ": ";
      try {
        const nlohmann::json j = nlohmann::json::parse(text);
        LabeledSeries item;
        item.series = scoring::SeriesFromJson(j);
        for (const char* key : kLabelKeys) {
          if (j.contains(key) && j[key].is_string()) item.labels[key] = j[key].get<std::string>();
        }
        out.push_back(std::move(item));
      } catch (const nlohmann::json::exception& e) {
        Fail(ErrorCode::kParseError, where + e.what());
      } catch (const Error& e) {
        Fail(ErrorCode::kParseError, where + e.what());
      }
    }
  }
  return out;
}

std::vector<ReportRow> BuildReport(const std::vector<LabeledSeries>& series,
                                   const std::string& group_by,
                                   scoring::AggregateMethod method) {
  Require(group_by == "none" || group_by == "environment" || group_by == "perturbation",
          "group-by must be environment, perturbation or none");
  auto label = [](const LabeledSeries& s, const std::string& key) {
    const auto it = s.labels.find(key);
    return it == s.labels.end() ? std::string("unknown") : it->second;
  };
  std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
  for (const LabeledSeries& s : series) {
    const std::string group = group_by == "none" ? "all" : label(s, group_by);
    groups[{label(s, "policy"), group}].push_back(scoring::Aggregate(s.series, method).value);
  }
  std::vector<ReportRow> rows;
  for (const auto& [key, values] : groups) {
    ReportRow row{key.first, key.second, 0.0, std::nullopt, values.size()};
    row.mean = std::accumulate(values.begin(), values.end(), 0.0) / values.size();
    if (values.size() >= 2) row.sem = scoring::Sem(values);
    rows.push_back(row);
  }
  return rows;
}

std::string CsvField(std::string_view value) {
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string FormatNumber(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", value);
  // snprintf honours LC_NUMERIC; force the decimal point.
  for (char* p = buf; *p; ++p) {
    if (*p == ',') *p = '.';
  }
  return buf;
}

std::string ReportToCsv(const std::vector<ReportRow>& rows, const std::string& group_by) {
  std::string out = "policy," + CsvField(group_by == "none" ? "group" : group_by) + ",mean,sem,n\n";
  for (const ReportRow& r : rows) {
    out += CsvField(r.policy) + ',' + CsvField(r.group) + ',' + FormatNumber(r.mean) + ',' +
           (r.sem ? FormatNumber(*r.sem) : "") + ',' + std::to_string(r.n) + '\n';
  }
  return out;
}

nlohmann::json ReportToJson(const std::vector<ReportRow>& rows, const std::string& group_by) {
  nlohmann::json out = nlohmann::json::array();
  for (const ReportRow& r : rows) {
    out.push_back({{"policy", r.policy},
                   {"group", r.group},
                   {"mean", r.mean},
                   {"sem", r.sem ? nlohmann::json(*r.sem) : nlohmann::json(nullptr)},
                   {"n", r.n}});
  }
  return {{"group_by", group_by}, {"rows", out}};
}

std::string ReportToTable(const std::vector<ReportRow>& rows, const std::string& group_by) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-24s  %-16s  %12s  %12s  %5s\n", "policy",
                group_by == "none" ? "group" : group_by.c_str(), "mean", "sem", "n");
  out += line;
  for (const ReportRow& r : rows) {
    std::snprintf(line, sizeof line, "%-24s  %-16s  %12s  %12s  %5zu\n", r.policy.c_str(),
                  r.group.c_str(), FormatNumber(r.mean).c_str(),
                  r.sem ? FormatNumber(*r.sem).c_str() : "-", r.n);
    out += line;
  }
  return out;
}

}  // namespace arena::cli
