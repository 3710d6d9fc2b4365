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

#ifndef ARENA_GEOMETRY_CALIBRATION_H_
#define ARENA_GEOMETRY_CALIBRATION_H_

// Analysis-by-synthesis camera calibration: a composite image/feature/flow
// loss between rendered and observed video, and a gradient-free search over
// SE(3) for the robot-to-camera transform that minimizes it. Rendering is
// supplied by the caller through the Renderer interface.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace arena::geometry {

// Dense row-major multi-channel float field (image, flow or feature map).
struct Field {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<double> values;

  Field() = default;
  Field(int w, int h, int c, double fill = 0.0)
      : width(w), height(h), channels(c),
        values(static_cast<size_t>(w) * h * c, fill) {}

  double& at(int x, int y, int c) {
    return values[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  double at(int x, int y, int c) const {
    return values[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  size_t pixels() const { return static_cast<size_t>(width) * height; }
  bool empty() const { return values.empty(); }
  bool SameShape(const Field& other) const {
    return width == other.width && height == other.height &&
           channels == other.channels && values.size() == other.values.size();
  }
};

struct CalibrationObservation {
  Field observed_image;
  Field rendered_image;
  // Flow from this frame to the next; unused on the last frame.
  Field observed_flow;
  Field rendered_flow;
  Field observed_features;
  Field rendered_features;
};

struct CalibrationLossWeights {
  double rgb = 1.0;
  double feat = 1.0;
  double flow = 1.0;

  void Validate() const;
};

enum class LossReduction {
  kPerPixelMean,  // squared error summed over channels, averaged over pixels
  kRawSum,        // squared error summed over everything
};

// Weighted contributions; total = rgb + feat + flow.
struct CalibrationLoss {
  double total = 0.0;
  double rgb = 0.0;
  double feat = 0.0;
  double flow = 0.0;
};

// 1 - cosine similarity of the flattened maps, in [0, 2]. Two all-zero maps
// count as identical; one all-zero map against a non-zero one scores 1.
double FeatureLoss(const Field& rendered, const Field& observed);

double SquaredErrorLoss(const Field& rendered, const Field& observed,
                        LossReduction reduction);

// Throws kInvalidArgument on shape mismatches between paired fields or empty
// input.
CalibrationLoss ComputeCalibrationLoss(
    std::span<const CalibrationObservation> observations,
    const CalibrationLossWeights& weights,
    LossReduction reduction = LossReduction::kPerPixelMean);

struct Se3 {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
};

// Exp map of an axis-angle vector composed on the left, re-orthonormalized.
Se3 Perturb(const Se3& pose, const Eigen::Vector3d& axis_angle,
            const Eigen::Vector3d& translation_offset);

// Nearest rotation in Frobenius norm.
Eigen::Matrix3d Orthonormalize(const Eigen::Matrix3d& m);

double RotationAngleBetween(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b);

struct RenderedFrame {
  Field image;
  Field flow;
  Field features;
};

struct ObservedFrame {
  Field image;
  Field flow;
  Field features;
  Eigen::VectorXd joint_angles;
};

class Renderer {
 public:
  virtual ~Renderer() = default;
  // One rendered frame per joint-angle vector, in order.
  virtual std::vector<RenderedFrame> Render(
      const Se3& robot_to_camera,
      std::span<const Eigen::VectorXd> joint_angles) const = 0;
};

struct PoseSearchConfig {
  int budget = 2000;                  // loss evaluations after the grid
  double translation_sigma = 0.02;    // meters
  double rotation_sigma_deg = 2.0;
  double final_sigma_ratio = 0.01;    // proposal scale at the end of budget
  uint64_t seed = 0;
  CalibrationLossWeights weights;
  LossReduction reduction = LossReduction::kPerPixelMean;
};

struct PoseFitResult {
  Se3 pose;
  double loss = 0.0;
  size_t best_initial_index = 0;
  double best_initial_loss = 0.0;
  int evaluations = 0;
};

// Scores every initial pose, then refines the best one with Gaussian
// proposals whose scale shrinks geometrically; only improvements are kept.
// Renderer exceptions are rethrown as kRenderFailure naming the pose.
PoseFitResult FitCameraPose(const Renderer& renderer,
                            std::span<const ObservedFrame> video,
                            std::span<const Se3> initial_poses,
                            const PoseSearchConfig& config = {});

// Loss of one candidate pose against the video.
double EvaluatePose(const Renderer& renderer, std::span<const ObservedFrame> video,
                    const Se3& pose, const CalibrationLossWeights& weights,
                    LossReduction reduction);

}  // namespace arena::geometry

#endif  // ARENA_GEOMETRY_CALIBRATION_H_
