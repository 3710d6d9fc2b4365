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

#include "arena/cli/cli.h"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>

#include "arena/cli/report.h"
#include "arena/perturb/color.h"
#include "arena/perturb/png_io.h"
#include "arena/perturb/scene.h"
#include "arena/ranking/io.h"
#include "arena/ranking/leaderboard.h"
#include "arena/service/arena.h"
#include "arena/service/http.h"
#include "arena/sysid/anneal.h"
#include "arena/sysid/io.h"

namespace arena::cli {
namespace {

struct GlobalOptions {
  uint64_t seed = 0;
  std::string output;
  std::string format;
};

void WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) Fail(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) Fail(ErrorCode::kIoError, "short write to " + path.string());
}

nlohmann::json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail(ErrorCode::kIoError, "cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Fail(ErrorCode::kParseError, path.string() + ": " + e.what());
  }
}

// Sends `text` to --output when given, else to `out`.
void Emit(const GlobalOptions& g, std::ostream& out, const std::string& text) {
  if (g.output.empty()) {
    out << text;
  } else {
    WriteText(g.output, text);
  }
}

std::string RankCsv(const ranking::Leaderboard& board) {
  const auto& est = board.fit.estimate;
  std::string csv = "policy,rank,beta,theta,ci_lower,ci_upper,decisive_over_next,wins,losses,ties\n";
  for (const auto& entry : board.ranking) {
    const size_t i = est.policies.index(entry.policy);
    const auto counts = board.counts.count(entry.policy) ? board.counts.at(entry.policy)
                                                         : ranking::PolicyCounts{};
    char line[512];
    std::snprintf(line, sizeof line, "%s,%d,%.17g,%.17g,%.17g,%.17g,%s,%d,%d,%d\n",
                  CsvField(entry.policy).c_str(), entry.rank, est.betas[i], est.thetas[i],
                  board.band.lower[i], board.band.upper[i], entry.decisive ? "true" : "false",
                  counts.wins, counts.losses, counts.ties);
    csv += line;
  }
  return csv;
}

int RunRank(const GlobalOptions& g, const std::string& log_path, double alpha,
            std::ostream& out, std::ostream& err) {
  const auto records = ranking::ReadComparisonLogFile(log_path);
  if (records.empty()) {
    err << "error: " << log_path << " contains no comparison records\n";
    return kExitInputError;
  }
  ranking::Leaderboard board;
  try {
    board = ranking::BuildLeaderboard(records, alpha);
  } catch (const GraphDisconnectedError& e) {
    err << "error: " << e.what() << '\n';
    for (size_t c = 0; c < e.components().size(); ++c) {
      err << "component " << c + 1 << ":";
      for (const auto& id : e.components()[c]) err << ' ' << id;
      err << '\n';
    }
    return kExitInfeasible;
  }
  const std::string json = ranking::LeaderboardToJson(board).dump(2) + "\n";
  const std::string format = g.format.empty() ? "table" : g.format;
  std::string text = format == "json"  ? json
                     : format == "csv" ? RankCsv(board)
                                       : ranking::FormatLeaderboardTable(board);
  if (!g.output.empty()) WriteText(g.output, json);
  out << text;
  return kExitOk;
}

int RunReport(const GlobalOptions& g, const std::string& dir, const std::string& group_by,
              const std::string& method, std::ostream& out) {
  const auto series = ReadScoreDir(dir);
  if (series.empty()) Fail(ErrorCode::kInvalidArgument, "no score series under " + dir);
  const auto rows = BuildReport(series, group_by, scoring::ParseAggregateMethod(method));
  const std::string format = g.format.empty() ? "csv" : g.format;
  if (format == "json") {
    Emit(g, out, ReportToJson(rows, group_by).dump(2) + "\n");
  } else if (format == "table") {
    Emit(g, out, ReportToTable(rows, group_by));
  } else {
    Emit(g, out, ReportToCsv(rows, group_by));
  }
  return kExitOk;
}

int RunColor(double alpha, const std::string& mask_path, const std::string& in_path,
             const std::string& out_path) {
  const Image image = perturb::ReadPng(in_path);
  std::optional<Image> mask;
  if (!mask_path.empty()) mask = perturb::ReadMask(mask_path);
  perturb::WritePng(out_path, perturb::ColorSwap(image, mask ? &*mask : nullptr, alpha));
  return kExitOk;
}

int RunPoses(const GlobalOptions& g, const std::string& scene_path, const std::string& out_dir,
             std::ostream& out) {
  const perturb::SceneManifest scene = perturb::ReadScene(scene_path);
  const auto variants = perturb::PosePermutations(scene, g.seed);
  std::filesystem::create_directories(out_dir);
  for (size_t k = 0; k < variants.size(); ++k) {
    const auto path = std::filesystem::path(out_dir) /
                      (scene.scene_id + "_pose" + std::to_string(k) + ".json");
    perturb::WriteScene(path, variants[k]);
    out << path.string() << '\n';
  }
  return kExitOk;
}

std::vector<std::string> LoadCatalog(const std::string& path) {
  // The five inpainted backgrounds produced per scene.
  if (path.empty()) return {"bg-1", "bg-2", "bg-3", "bg-4", "bg-5"};
  const nlohmann::json j = ReadJsonFile(path);
  try {
    return j.get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception&) {
    Fail(ErrorCode::kParseError, path + ": catalog must be a JSON array of ids");
  }
}

int RunBackground(const std::string& id, const std::string& catalog_path,
                  const std::string& scene_path, const std::string& out_path) {
  const auto catalog = LoadCatalog(catalog_path);
  perturb::WriteScene(out_path,
                      perturb::SwapBackground(perturb::ReadScene(scene_path), id, catalog));
  return kExitOk;
}

struct SysIdOptions {
  std::string traj_dir;
  int steps = 5000;
  sysid::GainBounds bounds;
  double dt = 0.0;
  double mass = 1.0;
  std::string overlay;
};

int RunSysId(const GlobalOptions& g, const SysIdOptions& o, std::ostream& out) {
  const auto recorded = sysid::ReadTrajectoryDir(o.traj_dir);
  if (recorded.empty()) Fail(ErrorCode::kInvalidArgument, "no *.jsonl trajectories in " + o.traj_dir);
  double dt = o.dt;
  if (dt <= 0.0) {
    dt = sysid::UniformTimestep(recorded.front().times);
    for (const auto& r : recorded) {
      Require(std::abs(sysid::UniformTimestep(r.times) - dt) <= 1e-9 * dt,
              "trajectories use different timesteps; pass --dt");
    }
  }
  const sysid::ReferencePlant plant(dt, o.mass);
  std::vector<sysid::SysIdTrajectory> data;
  for (const auto& r : recorded) data.push_back(r.ToSysId());
  sysid::AnnealConfig config;
  config.steps = o.steps;
  config.seed = g.seed;
  const sysid::AnnealResult result = sysid::AnnealGains(plant, data, o.bounds, config);

  std::vector<sysid::EePoseTrajectory> simulated;
  for (const auto& item : data) simulated.push_back(plant.Simulate(result.gains, item.commands));
  std::string overlay = o.overlay;
  if (overlay.empty()) {
    overlay = g.output.empty() ? "sysid_overlay.csv"
                               : std::filesystem::path(g.output).replace_extension(".overlay.csv").string();
  }
  WriteText(overlay, sysid::OverlayCsv(recorded, simulated));
  Emit(g, out, sysid::AnnealResultToJson(result).dump(2) + "\n");
  return kExitOk;
}

struct ServeOptions {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log;
  std::string gold;
  double ttl_minutes = 30.0;
  double alpha = 0.05;
};

int RunServe(const GlobalOptions& g, const ServeOptions& o, std::ostream& err) {
  service::ArenaConfig config;
  config.seed = g.seed;
  config.alpha = o.alpha;
  config.assignment_ttl_ms = static_cast<int64_t>(o.ttl_minutes * 60'000.0);
  config.gold = service::GoldPairsFromJson(ReadJsonFile(o.gold));
  service::EventLog log = o.log.empty() ? service::EventLog() : service::EventLog::Open(o.log);
  service::Arena arena(std::move(config), std::move(log));
  service::ArenaServer server(arena);
  err << "serving on http://" << o.host << ':' << o.port << '\n';
  server.Run(o.host, o.port);
  return kExitOk;
}

}  // namespace

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kGraphDisconnected:
    case ErrorCode::kEmptyDecisiveSet:
    case ErrorCode::kNumericalInstability:
    case ErrorCode::kOptimizationFailed:
    case ErrorCode::kInsufficientSamples:
      return kExitInfeasible;
    default:
      return kExitInputError;
  }
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Policy arena batch tools", "arena"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--seed", g.seed, "Seed for every random draw");
  app.add_option("--output", g.output, "Write the primary result to this file");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));

  std::string log_path;
  double rank_alpha = 0.05;
  CLI::App* rank = app.add_subcommand("rank", "Fit a leaderboard from a comparison log");
  rank->add_option("log", log_path, "Comparison log (JSONL)")->required();
  rank->add_option("--alpha", rank_alpha, "Significance level for the bands")
      ->capture_default_str();

  std::string scores_dir, group_by = "environment", method = "FINAL_30";
  CLI::App* report = app.add_subcommand("report", "Aggregate frame-score series per policy");
  report->add_option("--scores", scores_dir, "Directory of series JSONL files")->required();
  report->add_option("--group-by", group_by, "Second grouping key")
      ->check(CLI::IsMember({"environment", "perturbation", "none"}))
      ->capture_default_str();
  report->add_option("--method", method, "Per-series aggregate")
      ->check(CLI::IsMember({"FULL_MEAN", "FINAL_30", "TOP_30"}))
      ->capture_default_str();

  CLI::App* perturb = app.add_subcommand("perturb", "Generate perturbation variants");
  perturb->require_subcommand(1);
  double alpha = 0.0;
  std::string mask, in_png, out_png;
  CLI::App* color = perturb->add_subcommand("color", "Blend RGB toward BGR");
  color->add_option("--alpha", alpha, "Swap intensity in [0, 1]")->required();
  color->add_option("--mask", mask, "Single-channel mask PNG");
  color->add_option("input", in_png, "RGB or RGBA PNG")->required();
  color->add_option("output", out_png, "Output PNG")->required();
  std::string scene_path, out_dir;
  CLI::App* poses = perturb->add_subcommand("poses", "Permute object positions");
  poses->add_option("scene", scene_path, "Scene manifest JSON")->required();
  poses->add_option("outdir", out_dir, "Directory for <scene_id>_pose<k>.json")->required();
  std::string bg_id, catalog, bg_scene, bg_out;
  CLI::App* bg = perturb->add_subcommand("bg", "Swap the background reference");
  bg->add_option("--id", bg_id, "Background id to swap in")->required();
  bg->add_option("--catalog", catalog, "JSON array of background ids");
  bg->add_option("scene", bg_scene, "Scene manifest JSON")->required();
  bg->add_option("output", bg_out, "Output manifest")->required();

  CLI::App* sysid_cmd = app.add_subcommand("sysid", "Identify PD gains");
  sysid_cmd->require_subcommand(1);
  SysIdOptions so;
  CLI::App* run = sysid_cmd->add_subcommand("run", "Anneal gains against recorded trajectories");
  run->add_option("--traj", so.traj_dir, "Directory of trajectory JSONL files")->required();
  run->add_option("--steps", so.steps, "Annealing steps")->capture_default_str()->check(CLI::PositiveNumber);
  run->add_option("--kp-min", so.bounds.kp_min)->capture_default_str();
  run->add_option("--kp-max", so.bounds.kp_max)->capture_default_str();
  run->add_option("--kd-min", so.bounds.kd_min)->capture_default_str();
  run->add_option("--kd-max", so.bounds.kd_max)->capture_default_str();
  run->add_option("--dt", so.dt, "Timestep; default from the trajectory timestamps");
  run->add_option("--mass", so.mass, "Reference plant mass")->capture_default_str();
  run->add_option("--overlay", so.overlay, "XY overlay CSV path");

  ServeOptions serve_opts;
  CLI::App* serve = app.add_subcommand("serve", "Run the arena HTTP service");
  serve->add_option("--host", serve_opts.host)->capture_default_str();
  serve->add_option("--port", serve_opts.port)->capture_default_str();
  serve->add_option("--log", serve_opts.log, "Event log (JSONL), created if absent");
  serve->add_option("--gold", serve_opts.gold, "Gold quiz config")->required();
  serve->add_option("--ttl-minutes", serve_opts.ttl_minutes, "Pair assignment lifetime")
      ->capture_default_str();
  serve->add_option("--alpha", serve_opts.alpha, "Leaderboard band level")
      ->capture_default_str();

  std::vector<std::string> argv_storage{"arena"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (*rank) return RunRank(g, log_path, rank_alpha, out, err);
    if (*report) return RunReport(g, scores_dir, group_by, method, out);
    if (*color) return RunColor(alpha, mask, in_png, out_png);
    if (*poses) return RunPoses(g, scene_path, out_dir, out);
    if (*bg) return RunBackground(bg_id, catalog, bg_scene, bg_out);
    if (*run) return RunSysId(g, so, out);
    if (*serve) return RunServe(g, serve_opts, err);
  } catch (const GraphDisconnectedError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const Error& e) {
    err << "error: " << ErrorCodeName(e.code()) << ": " << e.what() << '\n';
    return ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace arena::cli
