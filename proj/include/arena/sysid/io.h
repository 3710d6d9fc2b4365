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

#ifndef ARENA_SYSID_IO_H_
#define ARENA_SYSID_IO_H_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "arena/sysid/anneal.h"
#include "arena/sysid/trajectory.h"

namespace arena::sysid {

// One JSONL file: per line {t, q: [...], x: [3], quat: [w, x, y, z]}.
struct RecordedTrajectory {
  std::string name;
  std::vector<double> times;
  std::vector<Eigen::VectorXd> joints;
  EePoseTrajectory poses;

  SysIdTrajectory ToSysId() const { return {joints, poses}; }
};

// Quaternions must have unit norm within 1e-6 and are renormalized. Errors
// carry "line N:" and raise kParseError.
RecordedTrajectory ReadTrajectory(std::istream& in, const std::string& name = "");
RecordedTrajectory ReadTrajectoryFile(const std::filesystem::path& path);
// Every *.jsonl file in `dir`, sorted by file name.
std::vector<RecordedTrajectory> ReadTrajectoryDir(const std::filesystem::path& dir);

void WriteTrajectory(std::ostream& out, const RecordedTrajectory& trajectory);

// Spacing of `times`; throws kInvalidArgument unless uniform within 1e-6
// relative and positive.
double UniformTimestep(const std::vector<double>& times);

// {kp, kd, loss, trace, failed_candidates}
nlohmann::json AnnealResultToJson(const AnnealResult& result);

// CSV rows trajectory,t,gt_x,gt_y,sim_x,sim_y for each recorded step.
std::string OverlayCsv(const std::vector<RecordedTrajectory>& truth,
                       const std::vector<EePoseTrajectory>& simulated);

}  // namespace arena::sysid

#endif  // ARENA_SYSID_IO_H_
