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

#include "arena/perturb/scene.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>

#include "arena/common/error.h"
#include "arena/common/random.h"

namespace arena::perturb {
namespace {

constexpr std::array<std::string_view, 12> kSurfaceNames{
    "Glass", "Water", "Emission", "Plastic", "Rough",     "Smooth",
    "Reflective", "Metal", "Iron", "Aluminium", "Copper", "Gold"};

bool IsIdentity(const std::vector<size_t>& perm) {
  for (size_t i = 0; i < perm.size(); ++i) {
    if (perm[i] != i) return false;
  }
  return true;
}

}  // namespace

std::string_view SurfaceTypeName(SurfaceType type) {
  return kSurfaceNames[static_cast<size_t>(type)];
}

std::optional<SurfaceType> ParseSurfaceType(std::string_view name) {
  for (size_t i = 0; i < kSurfaceNames.size(); ++i) {
    if (kSurfaceNames[i] == name) return static_cast<SurfaceType>(i);
  }
  return std::nullopt;
}

void SceneManifest::Validate() const {
  std::set<std::string> ids;
  for (const SceneAsset& a : assets) {
    Require(!a.asset_id.empty(), "asset_id must not be empty");
    Require(ids.insert(a.asset_id).second, "duplicate asset_id " + a.asset_id);
    const auto& q = a.orientation;
    const double norm = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    Require(std::abs(norm - 1.0) <= 1e-9,
            "orientation of " + a.asset_id + " is not a unit quaternion");
    for (double p : a.position) {
      Require(std::isfinite(p), "position of " + a.asset_id + " is not finite");
    }
    Require(a.scale > 0.0, "scale of " + a.asset_id + " must be positive");
    Require(a.mass > 0.0, "mass of " + a.asset_id + " must be positive");
    Require(a.friction >= 0.0, "friction of " + a.asset_id + " must be non-negative");
  }
  camera.Validate();
}

nlohmann::json SceneToJson(const SceneManifest& scene) {
  nlohmann::json assets = nlohmann::json::array();
  for (const SceneAsset& a : scene.assets) {
    assets.push_back({{"asset_id", a.asset_id},
                      {"mesh_ref", a.mesh_ref},
                      {"position", a.position},
                      {"orientation", a.orientation},
                      {"scale", a.scale},
                      {"mass", a.mass},
                      {"friction", a.friction},
                      {"surface_type", SurfaceTypeName(a.surface_type)}});
  }
  return {{"scene_id", scene.scene_id},
          {"assets", assets},
          {"background_ref", scene.background_ref},
          {"camera", geometry::CameraToJson(scene.camera)},
          {"task", scene.task}};
}

SceneManifest SceneFromJson(const nlohmann::json& j) {
  SceneManifest scene;
  try {
    scene.scene_id = j.at("scene_id").get<std::string>();
    for (const auto& item : j.at("assets")) {
      SceneAsset a;
      a.asset_id = item.at("asset_id").get<std::string>();
      a.mesh_ref = item.at("mesh_ref").get<std::string>();
      a.position = item.at("position").get<std::array<double, 3>>();
      a.orientation = item.at("orientation").get<std::array<double, 4>>();
      a.scale = item.at("scale").get<double>();
      a.mass = item.at("mass").get<double>();
      a.friction = item.at("friction").get<double>();
      const auto name = item.at("surface_type").get<std::string>();
      const auto surface = ParseSurfaceType(name);
      if (!surface) Fail(ErrorCode::kParseError, "unknown surface_type " + name);
      a.surface_type = *surface;
      scene.assets.push_back(std::move(a));
    }
    scene.background_ref = j.at("background_ref").get<std::string>();
    scene.task = j.at("task").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, std::string("bad scene manifest: ") + e.what());
  }
  if (!j.contains("camera")) Fail(ErrorCode::kParseError, "scene manifest lacks camera");
  scene.camera = geometry::CameraFromJson(j.at("camera"));
  scene.Validate();
  return scene;
}

SceneManifest ReadScene(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIoError, "cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
  return SceneFromJson(j);
}

void WriteScene(const std::filesystem::path& path, const SceneManifest& scene) {
  std::ofstream out(path);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path.string());
  out << SceneToJson(scene).dump(2) << '\n';
}

std::vector<std::vector<size_t>> PosePermutationIndices(size_t asset_count,
                                                        uint64_t seed) {
  Require(asset_count >= 1, "scene needs at least one asset");
  std::vector<size_t> identity(asset_count);
  std::iota(identity.begin(), identity.end(), size_t{0});
  std::vector<std::vector<size_t>> perms{identity};
  // N! - 1 >= N - 1 always holds, so distinct draws always exist.
  std::set<std::vector<size_t>> seen{identity};
  Rng rng(seed);
  while (perms.size() < asset_count) {
    std::vector<size_t> perm = identity;
    rng.Shuffle(std::span<size_t>(perm));
    if (IsIdentity(perm) || !seen.insert(perm).second) continue;
    perms.push_back(std::move(perm));
  }
  return perms;
}

std::vector<SceneManifest> PosePermutations(const SceneManifest& scene,
                                            uint64_t seed) {
  const auto perms = PosePermutationIndices(scene.assets.size(), seed);
  std::vector<SceneManifest> variants;
  variants.reserve(perms.size());
  for (const auto& perm : perms) {
    SceneManifest variant = scene;
    for (size_t i = 0; i < perm.size(); ++i) {
      variant.assets[i].position = scene.assets[perm[i]].position;
    }
    variants.push_back(std::move(variant));
  }
  return variants;
}

SceneManifest SwapBackground(const SceneManifest& scene,
                             const std::string& background_id,
                             std::span<const std::string> catalog) {
  if (std::find(catalog.begin(), catalog.end(), background_id) == catalog.end()) {
    Fail(ErrorCode::kNotInCatalog, "background " + background_id + " is not in the catalog");
  }
  SceneManifest out = scene;
  out.background_ref = background_id;
  return out;
}

}  // namespace arena::perturb
