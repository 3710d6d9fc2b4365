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

#include "arena/sysid/io.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include "arena/common/error.h"

namespace arena::sysid {
namespace {

[[noreturn]] void LineError(size_t line, const std::string& message) {
  Fail(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + message);
}

std::string Num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

RecordedTrajectory ReadTrajectory(std::istream& in, const std::string& name) {
  RecordedTrajectory out;
  out.name = name;
  std::string text;
  size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
      const double t = j.at("t").get<double>();
      const auto q = j.at("q").get<std::vector<double>>();
      const auto x = j.at("x").get<std::array<double, 3>>();
      const auto quat = j.at("quat").get<std::array<double, 4>>();
      Eigen::Quaterniond rotation(quat[0], quat[1], quat[2], quat[3]);
      if (std::abs(rotation.norm() - 1.0) > 1e-6) {
        LineError(line, "quat is not unit length");
      }
      rotation.normalize();
      if (!out.times.empty() && !(t > out.times.back())) {
        LineError(line, "timestamps must increase");
      }
      out.times.push_back(t);
      out.joints.push_back(Eigen::Map<const Eigen::VectorXd>(q.data(), q.size()));
      out.poses.positions.emplace_back(x[0], x[1], x[2]);
      out.poses.rotations.push_back(rotation.toRotationMatrix());
    } catch (const nlohmann::json::exception& e) {
      LineError(line, e.what());
    }
  }
  return out;
}

RecordedTrajectory ReadTrajectoryFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return ReadTrajectory(in, path.stem().string());
  } catch (const Error& e) {
    Fail(e.code(), path.string() + ": " + e.what());
  }
}

std::vector<RecordedTrajectory> ReadTrajectoryDir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    Fail(ErrorCode::kIoError, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".jsonl") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<RecordedTrajectory> out;
  for (const auto& f : files) out.push_back(ReadTrajectoryFile(f));
  return out;
}

void WriteTrajectory(std::ostream& out, const RecordedTrajectory& trajectory) {
  for (size_t k = 0; k < trajectory.times.size(); ++k) {
    const Eigen::Quaterniond q(trajectory.poses.rotations[k]);
    const auto& x = trajectory.poses.positions[k];
    const auto& joints = trajectory.joints[k];
    nlohmann::json j = {{"t", trajectory.times[k]},
                        {"q", std::vector<double>(joints.data(), joints.data() + joints.size())},
                        {"x", {x.x(), x.y(), x.z()}},
                        {"quat", {q.w(), q.x(), q.y(), q.z()}}};
    out << j.dump() << '\n';
  }
}

double UniformTimestep(const std::vector<double>& times) {
  Require(times.size() >= 2, "need at least two timestamps");
  const double dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  Require(dt > 0.0, "timestamps must increase");
  for (size_t k = 1; k < times.size(); ++k) {
    Require(std::abs(times[k] - times[k - 1] - dt) <= 1e-6 * dt,
            "timestamps are not uniformly spaced");
  }
  return dt;
}

nlohmann::json AnnealResultToJson(const AnnealResult& result) {
  return {{"kp", result.gains.kp},
          {"kd", result.gains.kd},
          {"loss", result.loss},
          {"trace", result.trace},
          {"failed_candidates", result.failed_candidates}};
}

std::string OverlayCsv(const std::vector<RecordedTrajectory>& truth,
                       const std::vector<EePoseTrajectory>& simulated) {
  Require(truth.size() == simulated.size(), "overlay inputs differ in count");
  std::string csv = "trajectory,t,gt_x,gt_y,sim_x,sim_y\n";
  for (size_t i = 0; i < truth.size(); ++i) {
    Require(truth[i].times.size() == simulated[i].size(),
            "overlay trajectory lengths differ");
    for (size_t k = 0; k < truth[i].times.size(); ++k) {
      const auto& g = truth[i].poses.positions[k];
      const auto& s = simulated[i].positions[k];
      csv += truth[i].name + ',' + Num(truth[i].times[k]) + ',' + Num(g.x()) + ',' +
             Num(g.y()) + ',' + Num(s.x()) + ',' + Num(s.y()) + '\n';
    }
  }
  return csv;
}

}  // namespace arena::sysid
