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

#ifndef ARENA_PERTURB_SCENE_H_
#define ARENA_PERTURB_SCENE_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "arena/geometry/camera.h"

namespace arena::perturb {

enum class SurfaceType {
  kGlass,
  kWater,
  kEmission,
  kPlastic,
  kRough,
  kSmooth,
  kReflective,
  kMetal,
  kIron,
  kAluminium,
  kCopper,
  kGold,
};

std::string_view SurfaceTypeName(SurfaceType type);
std::optional<SurfaceType> ParseSurfaceType(std::string_view name);

struct SceneAsset {
  std::string asset_id;
  std::string mesh_ref;
  std::array<double, 3> position{};
  std::array<double, 4> orientation{1.0, 0.0, 0.0, 0.0};  // w, x, y, z
  double scale = 1.0;
  double mass = 1.0;  // kg
  double friction = 0.5;
  SurfaceType surface_type = SurfaceType::kPlastic;

  friend bool operator==(const SceneAsset&, const SceneAsset&) = default;
};

struct SceneManifest {
  std::string scene_id;
  std::vector<SceneAsset> assets;
  std::string background_ref;
  geometry::CameraModel camera;
  std::string task;

  // Unique asset ids, unit quaternions within 1e-9, positive scale and mass,
  // non-negative friction, valid camera.
  void Validate() const;

  friend bool operator==(const SceneManifest&, const SceneManifest&) = default;
};

nlohmann::json SceneToJson(const SceneManifest& scene);
// Parses and validates; malformed JSON raises kParseError, out-of-range
// values kInvalidArgument.
SceneManifest SceneFromJson(const nlohmann::json& j);

SceneManifest ReadScene(const std::filesystem::path& path);
void WriteScene(const std::filesystem::path& path, const SceneManifest& scene);

// Variant 0 is the input. Variants 1..N-1 apply distinct non-identity
// permutations drawn by seeded Fisher-Yates: asset i takes the position of
// asset perm[i]. Everything except positions is copied unchanged.
std::vector<std::vector<size_t>> PosePermutationIndices(size_t asset_count,
                                                        uint64_t seed);
std::vector<SceneManifest> PosePermutations(const SceneManifest& scene,
                                            uint64_t seed);

// Throws kNotInCatalog when `background_id` is not listed.
SceneManifest SwapBackground(const SceneManifest& scene,
                             const std::string& background_id,
                             std::span<const std::string> catalog);

}  // namespace arena::perturb

#endif  // ARENA_PERTURB_SCENE_H_
