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

#include "arena/geometry/calibration.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "arena/common/error.h"
#include "arena/common/random.h"

namespace arena::geometry {
namespace {

std::string DescribePose(const Se3& pose) {
  std::ostringstream out;
  const Eigen::AngleAxisd aa(pose.rotation);
  out << "t=(" << pose.translation.x() << ", " << pose.translation.y() << ", "
      << pose.translation.z() << ") angle=" << aa.angle() * 180.0 / std::numbers::pi
      << "deg";
  return out.str();
}

}  // namespace

void CalibrationLossWeights::Validate() const {
  Require(rgb >= 0.0 && feat >= 0.0 && flow >= 0.0,
          "loss weights must be non-negative");
  Require(rgb > 0.0 || feat > 0.0 || flow > 0.0,
          "at least one loss weight must be positive");
}

double SquaredErrorLoss(const Field& rendered, const Field& observed,
                        LossReduction reduction) {
  Require(rendered.SameShape(observed), "rendered and observed fields differ in shape");
  if (rendered.empty()) return 0.0;
  double total = 0.0;
  for (size_t i = 0; i < rendered.values.size(); ++i) {
    const double d = rendered.values[i] - observed.values[i];
    total += d * d;
  }
  return reduction == LossReduction::kPerPixelMean
             ? total / static_cast<double>(rendered.pixels())
             : total;
}

double FeatureLoss(const Field& rendered, const Field& observed) {
  Require(rendered.SameShape(observed), "feature maps differ in shape");
  double dot = 0.0;
  double rendered_sq = 0.0;
  double observed_sq = 0.0;
  for (size_t i = 0; i < rendered.values.size(); ++i) {
    dot += rendered.values[i] * observed.values[i];
    rendered_sq += rendered.values[i] * rendered.values[i];
    observed_sq += observed.values[i] * observed.values[i];
  }
  if (rendered_sq == 0.0 && observed_sq == 0.0) return 0.0;
  if (rendered_sq == 0.0 || observed_sq == 0.0) return 1.0;
  const double cosine =
      std::clamp(dot / std::sqrt(rendered_sq * observed_sq), -1.0, 1.0);
  return 1.0 - cosine;
}

CalibrationLoss ComputeCalibrationLoss(
    std::span<const CalibrationObservation> observations,
    const CalibrationLossWeights& weights, LossReduction reduction) {
  weights.Validate();
  Require(!observations.empty(), "calibration needs at least one frame");
  double rgb = 0.0;
  double feat = 0.0;
  double flow = 0.0;
  for (size_t t = 0; t < observations.size(); ++t) {
    const CalibrationObservation& o = observations[t];
    rgb += SquaredErrorLoss(o.rendered_image, o.observed_image, reduction);
    feat += FeatureLoss(o.rendered_features, o.observed_features);
    if (t + 1 < observations.size()) {
      flow += SquaredErrorLoss(o.rendered_flow, o.observed_flow, reduction);
    }
  }
  CalibrationLoss loss;
  loss.rgb = weights.rgb * rgb;
  loss.feat = weights.feat * feat;
  loss.flow = weights.flow * flow;
  loss.total = loss.rgb + loss.feat + loss.flow;
  return loss;
}

Eigen::Matrix3d Orthonormalize(const Eigen::Matrix3d& m) {
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Matrix3d r = svd.matrixU() * svd.matrixV().transpose();
  if (r.determinant() < 0.0) {
    Eigen::Matrix3d u = svd.matrixU();
    u.col(2) *= -1.0;
    r = u * svd.matrixV().transpose();
  }
  return r;
}

Se3 Perturb(const Se3& pose, const Eigen::Vector3d& axis_angle,
            const Eigen::Vector3d& translation_offset) {
  Se3 out;
  const double angle = axis_angle.norm();
  const Eigen::Matrix3d delta =
      angle > 0.0 ? Eigen::AngleAxisd(angle, axis_angle / angle).toRotationMatrix()
                  : Eigen::Matrix3d::Identity();
  out.rotation = Orthonormalize(delta * pose.rotation);
  out.translation = pose.translation + translation_offset;
  return out;
}

double RotationAngleBetween(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  return Eigen::AngleAxisd(a.transpose() * b).angle();
}

double EvaluatePose(const Renderer& renderer, std::span<const ObservedFrame> video,
                    const Se3& pose, const CalibrationLossWeights& weights,
                    LossReduction reduction) {
  std::vector<Eigen::VectorXd> joints;
  joints.reserve(video.size());
  for (const ObservedFrame& frame : video) joints.push_back(frame.joint_angles);

  std::vector<RenderedFrame> rendered;
  try {
    rendered = renderer.Render(pose, joints);
  } catch (const std::exception& e) {
    Fail(ErrorCode::kRenderFailure,
         "render failed at pose " + DescribePose(pose) + ": " + e.what());
  }
  if (rendered.size() != video.size()) {
    Fail(ErrorCode::kRenderFailure, "renderer returned " +
                                        std::to_string(rendered.size()) +
                                        " frames for pose " + DescribePose(pose));
  }
  std::vector<CalibrationObservation> paired(video.size());
  for (size_t t = 0; t < video.size(); ++t) {
    paired[t].observed_image = video[t].image;
    paired[t].observed_flow = video[t].flow;
    paired[t].observed_features = video[t].features;
    paired[t].rendered_image = std::move(rendered[t].image);
    paired[t].rendered_flow = std::move(rendered[t].flow);
    paired[t].rendered_features = std::move(rendered[t].features);
  }
  return ComputeCalibrationLoss(paired, weights, reduction).total;
}

PoseFitResult FitCameraPose(const Renderer& renderer,
                            std::span<const ObservedFrame> video,
                            std::span<const Se3> initial_poses,
                            const PoseSearchConfig& config) {
  Require(!initial_poses.empty(), "need at least one initial pose");
  Require(!video.empty(), "need at least one video frame");
  Require(config.budget >= 0, "budget must be non-negative");
  Require(config.final_sigma_ratio > 0.0 && config.final_sigma_ratio <= 1.0,
          "final_sigma_ratio must lie in (0, 1]");
  config.weights.Validate();

  PoseFitResult result;
  result.loss = INFINITY;
  for (size_t i = 0; i < initial_poses.size(); ++i) {
    const double loss = EvaluatePose(renderer, video, initial_poses[i],
                                     config.weights, config.reduction);
    ++result.evaluations;
    // Strict comparison keeps the lowest index among equal losses.
    if (loss < result.loss) {
      result.loss = loss;
      result.pose = initial_poses[i];
      result.best_initial_index = i;
    }
  }
  result.best_initial_loss = result.loss;

  Rng rng(config.seed);
  const double cooling =
      config.budget > 0 ? std::pow(config.final_sigma_ratio, 1.0 / config.budget)
                        : 1.0;
  const double rotation_sigma = config.rotation_sigma_deg * std::numbers::pi / 180.0;
  double scale = 1.0;
  for (int step = 0; step < config.budget; ++step) {
    Eigen::Vector3d axis_angle;
    Eigen::Vector3d offset;
    for (int k = 0; k < 3; ++k) axis_angle[k] = rotation_sigma * scale * rng.Normal();
    for (int k = 0; k < 3; ++k) {
      offset[k] = config.translation_sigma * scale * rng.Normal();
    }
    const Se3 candidate = Perturb(result.pose, axis_angle, offset);
    const double loss =
        EvaluatePose(renderer, video, candidate, config.weights, config.reduction);
    ++result.evaluations;
    if (loss < result.loss) {
      result.loss = loss;
      result.pose = candidate;
    }
    scale *= cooling;
  }
  return result;
}

}  // namespace arena::geometry
