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


// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "arena/common/error.h"
#include "arena/common/image.h"
#include "arena/common/random.h"
#include "arena/geometry/camera.h"
#include "arena/geometry/registration.h"
#include "arena/geometry/views.h"
#include "arena/perturb/color.h"
#include "arena/perturb/scene.h"
#include "arena/ranking/bradley_terry.h"
#include "arena/scoring/progress.h"
#include "arena/service/arena.h"
#include "arena/service/http.h"
#include "arena/sysid/anneal.h"
#include "arena/sysid/trajectory.h"
#include "support/arena_fixture.h"
#include "support/bt_oracle.h"
#include "support/http_client.h"
#include "support/random_geometry.h"
#include "support/scene_fixture.h"
#include "support/sysid_oracle.h"

namespace arena {
namespace {

using Clock = std::chrono::steady_clock;
using ranking::ComparisonRecord;
using ranking::FitReport;

double SecondsSince(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records the first failure only.
  void Check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::string Fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

double Between(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.Uniform(); }

std::vector<ComparisonRecord> RandomConnected(Rng& rng, int n, int count,
                                              double tie_rate = 0.0) {
  while (true) {
    Eigen::VectorXd truth(n);
    for (int i = 0; i < n; ++i) truth[i] = rng.Normal();
    auto records = testing::SampleRecords(rng, truth, count, tie_rate);
    if (testing::Connected(records, n)) return records;
  }
}

Outcome BtClosedForm() {
  Outcome out;
  const auto records = testing::ThreeToOne();
  const auto start = Clock::now();
  const FitReport fit = ranking::FitBradleyTerry(records);
  const double elapsed = SecondsSince(start);
  const double gap = fit.estimate.betas[0] - fit.estimate.betas[1];
  const double err = std::abs(gap - std::log(3.0));
  out.Check(err < 1e-8, Fmt("|gap - ln 3| = %.3g", err));
  out.Check(elapsed < 0.010, Fmt("runtime %.4f s", elapsed));
  if (out.pass) out.detail = Fmt("gap error %.2g, %.2f ms", err, elapsed * 1e3);
  return out;
}

Outcome BtOracle() {
  Outcome out;
  Rng rng(2024);
  const auto start = Clock::now();
  double worst = INFINITY;
  for (int trial = 0; trial < 20; ++trial) {
    const int count = 5 + static_cast<int>(rng.UniformIndex(26));
    const auto records = RandomConnected(rng, 3, count);
    const FitReport fit = ranking::FitBradleyTerry(records);
    const double fitted = testing::OracleLogLikelihood(records, fit.estimate.betas);
    const double grid = testing::GridSearchMaximum3(records);
    worst = std::min(worst, fitted - grid);
    out.Check(fitted >= grid - 1e-6,
              Fmt("trial %d: fitted %.9f < grid %.9f", trial, fitted, grid));
  }
  const double elapsed = SecondsSince(start);
  out.Check(elapsed < 30.0, Fmt("runtime %.2f s", elapsed));
  if (out.pass) out.detail = Fmt("min(fitted - grid) = %.3g, %.2f s", worst, elapsed);
  return out;
}

bool Close(double analytic, double numeric) {
  const double diff = std::abs(analytic - numeric);
  return diff <= 1e-5 || diff <= 1e-6 * std::abs(numeric);
}

Outcome GradientChecks() {
  Outcome out;
  Rng rng(77);
  for (int draw = 0; draw < 100; ++draw) {
    const int n = 2 + static_cast<int>(rng.UniformIndex(4));
    const int count = 10 + static_cast<int>(rng.UniformIndex(60));
    Eigen::VectorXd truth(n), at(n);
    for (int i = 0; i < n; ++i) {
      truth[i] = rng.Normal();
      at[i] = Between(rng, -2.0, 2.0);
    }
    const auto records = testing::SampleRecords(rng, truth, count, 0.1);
    std::vector<std::string> ids;
    for (int i = 0; i < n; ++i) ids.push_back(testing::PolicyName(i));
    const ranking::PolicySet policies(ids);
    const Eigen::VectorXd score = ranking::ScoreFunction(policies, records, at);
    const Eigen::MatrixXd fisher = ranking::FisherInformation(policies, records, at);
    const Eigen::VectorXd fd_score = testing::FiniteDifferenceGradient(records, at);
    const Eigen::MatrixXd fd_fisher = testing::FiniteDifferenceFisher(records, at);
    for (int i = 0; i < n; ++i) {
      out.Check(Close(score[i], fd_score[i]),
                Fmt("draw %d: score[%d] %.9g vs %.9g", draw, i, score[i], fd_score[i]));
      for (int j = 0; j < n; ++j) {
        out.Check(Close(fisher(i, j), fd_fisher(i, j)),
                  Fmt("draw %d: fisher(%d,%d) %.9g vs %.9g", draw, i, j, fisher(i, j),
                      fd_fisher(i, j)));
      }
    }
  }
  if (out.pass) out.detail = "100 draws";
  return out;
}

Outcome SandwichProperties() {
  Outcome out;
  Rng rng(31);
  int checked = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.UniformIndex(5));
    const auto records = RandomConnected(rng, n, 40 + 20 * n, 0.1);
    const FitReport fit = ranking::FitBradleyTerry(records);
    if (fit.has_flag(ranking::FitFlag::kSeparated)) continue;
    const auto& e = fit.estimate;
    const Eigen::MatrixXd v = ranking::SandwichCovariance(e.policies, records, e.betas);
    out.Check((v - v.transpose()).cwiseAbs().maxCoeff() == 0.0,
              Fmt("trial %d: not symmetric", trial));
    const double null = (v * Eigen::VectorXd::Ones(n)).lpNorm<Eigen::Infinity>();
    out.Check(null < 1e-10, Fmt("trial %d: |V 1| = %.3g", trial, null));
    out.Check(v.diagonal().minCoeff() >= -1e-12,
              Fmt("trial %d: diagonal %.3g", trial, v.diagonal().minCoeff()));
    ++checked;
  }
  out.Check(checked >= 25, Fmt("only %d unseparated datasets", checked));
  // Two policies, k wins of n: the contrast variance is 1/(n p(1-p)).
  double worst = 0.0;
  for (int n = 2; n <= 40; ++n) {
    for (int k = 1; k < n; ++k) {
      std::vector<ComparisonRecord> records;
      for (int i = 0; i < n; ++i) {
        records.push_back(i < k ? testing::Cmp("A", "B", 1) : testing::Cmp("A", "B", -1));
      }
      const FitReport fit = ranking::FitBradleyTerry(records);
      const auto& e = fit.estimate;
      const Eigen::MatrixXd v = ranking::SandwichCovariance(e.policies, records, e.betas);
      const Eigen::Vector2d c(1.0, -1.0);
      const double p = static_cast<double>(k) / n;
      const double expected = 1.0 / (n * p * (1.0 - p));
      const double err = std::abs(c.dot(v * c) - expected);
      worst = std::max(worst, err);
      out.Check(err < 1e-8, Fmt("n=%d k=%d: contrast error %.3g", n, k, err));
    }
  }
  if (out.pass) {
    out.detail = Fmt("%d random datasets, contrast error %.2g", checked, worst);
  }
  return out;
}

Outcome RankingRecovery() {
  Outcome out;
  const auto start = Clock::now();
  Eigen::VectorXd truth(4);
  truth << std::log(4.0), std::log(2.0), std::log(1.0), std::log(0.5);
  int correct = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(1000 + trial);
    const auto records = testing::SampleRecords(rng, truth, 500);
    const FitReport fit = ranking::FitBradleyTerry(records);
    const auto& b = fit.estimate.betas;  // ids sort as p0..p3
    if (b[0] > b[1] && b[1] > b[2] && b[2] > b[3]) ++correct;
  }
  const double elapsed = SecondsSince(start);
  out.Check(correct >= 95, Fmt("%d/100 correct orderings", correct));
  out.Check(elapsed < 60.0, Fmt("runtime %.2f s", elapsed));
  if (out.pass) out.detail = Fmt("%d/100 correct, %.2f s", correct, elapsed);
  return out;
}

Outcome Kabsch() {
  Outcome out;
  Rng rng(4242);
  double worst_rmsd = 0.0, worst_det = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Eigen::Matrix3d r = testing::RandomRotation(rng);
    const Eigen::Vector3d t(Between(rng, -5, 5), Between(rng, -5, 5), Between(rng, -5, 5));
    const bool coplanar = trial % 4 == 0;
    const Eigen::Matrix3d plane = testing::RandomRotation(rng);
    const int count = 3 + static_cast<int>(rng.UniformIndex(30));
    std::vector<geometry::PointPair> pairs;
    for (int i = 0; i < count; ++i) {
      Eigen::Vector3d p(Between(rng, -1, 1), Between(rng, -1, 1), Between(rng, -1, 1));
      if (coplanar) p = plane * Eigen::Vector3d(p.x(), p.y(), 0.0);
      pairs.push_back({p, r * p + t});
    }
    const auto result = geometry::EstimateRigidTransform(pairs);
    const double rmsd = geometry::Rmsd(pairs, result.transform);
    const double det = std::abs(result.transform.rotation.determinant() - 1.0);
    worst_rmsd = std::max(worst_rmsd, rmsd);
    worst_det = std::max(worst_det, det);
    out.Check(rmsd < 1e-9, Fmt("trial %d: rmsd %.3g", trial, rmsd));
    out.Check(det < 1e-9, Fmt("trial %d: |det - 1| = %.3g", trial, det));
  }
  if (out.pass) out.detail = Fmt("max rmsd %.2g, max |det - 1| %.2g", worst_rmsd, worst_det);
  return out;
}

Outcome RotationDistance() {
  Outcome out;
  Rng rng(9);
  double worst = 0.0;
  for (int draw = 0; draw < 1000; ++draw) {
    const Eigen::Matrix3d a = testing::RandomRotation(rng);
    double phi = Between(rng, 0.0, std::numbers::pi);
    if (draw == 0) phi = 0.0;
    if (draw == 1) phi = std::numbers::pi;
    const Eigen::Matrix3d b = a * testing::AxisAngle(testing::RandomUnitVector(rng), phi);
    const double err = std::abs(sysid::RotationDistance(a, b) - phi / 2.0);
    worst = std::max(worst, err);
    out.Check(err < 1e-9, Fmt("draw %d: phi %.12f error %.3g", draw, phi, err));
  }
  if (out.pass) out.detail = Fmt("max error %.2g", worst);
  return out;
}

Outcome CameraRoundTrip() {
  Outcome out;
  Rng rng(123);
  double worst = 0.0;
  for (int draw = 0; draw < 10000; ++draw) {
    geometry::CameraModel cam;
    cam.intrinsics = geometry::Intrinsics{Between(rng, 100, 1500), Between(rng, 100, 1500),
                                          Between(rng, 0, 640), Between(rng, 0, 480)};
    cam.rotation = testing::RandomRotation(rng);
    cam.translation = Eigen::Vector3d(Between(rng, -3, 3), Between(rng, -3, 3), Between(rng, -3, 3));
    const Eigen::Vector2d pixel(Between(rng, 0, 640), Between(rng, 0, 480));
    const double depth = Between(rng, 0.1, 10.0);
    const Eigen::Vector3d world = geometry::Unproject(pixel, depth, cam);
    const geometry::PixelDepth back = geometry::Project(world, cam);
    const double err = std::max((back.pixel - pixel).lpNorm<Eigen::Infinity>(),
                                std::abs(back.depth - depth));
    const Eigen::Vector3d again = geometry::Unproject(back.pixel, back.depth, cam);
    const double err3 = (again - world).lpNorm<Eigen::Infinity>();
    worst = std::max({worst, err, err3});
    out.Check(err < 1e-9, Fmt("draw %d: project error %.3g", draw, err));
    out.Check(err3 < 1e-9, Fmt("draw %d: unproject error %.3g", draw, err3));
  }
  double orbit_worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const Eigen::Vector3d target(Between(rng, -1, 1), Between(rng, -1, 1), Between(rng, 0, 1));
    const double radius = Between(rng, 0.2, 3.0);
    const std::vector<double> z{-0.5, 0.0, 0.3, 0.8};
    std::vector<double> theta;
    for (int k = 0; k < 12; ++k) theta.push_back(2.0 * std::numbers::pi * k / 12.0);
    for (const auto& pose : geometry::OrbitViewPoses(target, radius, z, theta)) {
      const double err = std::abs((pose.position - target).norm() - radius);
      orbit_worst = std::max(orbit_worst, err);
      out.Check(err < 1e-9, Fmt("orbit off sphere by %.3g", err));
    }
  }
  if (out.pass) out.detail = Fmt("round trip %.2g, orbit %.2g", worst, orbit_worst);
  return out;
}

Outcome SysId() {
  Outcome out;
  const auto start = Clock::now();
  const sysid::GainBounds bounds;
  int within = 0;
  std::string ratios;
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const auto problem = testing::MakeSysIdProblem(seed);
    sysid::AnnealConfig config;
    config.steps = 5000;
    config.seed = seed;
    const sysid::AnnealResult r = sysid::AnnealGains(problem.plant, problem.data, bounds, config);
    const double grid = testing::GridMinimum(problem.plant, problem.data, bounds, 50);
    const double found = testing::OracleMeanLoss(problem.plant, r.gains, problem.data);
    if (found <= 1.05 * grid) ++within;
    ratios += Fmt(" %.3f", found / grid);
    bool monotone = true;
    for (size_t k = 1; k < r.trace.size(); ++k) monotone &= r.trace[k] <= r.trace[k - 1];
    out.Check(monotone, Fmt("seed %d: trace not monotone", static_cast<int>(seed)));
  }
  const double elapsed = SecondsSince(start);
  out.Check(within >= 9, Fmt("%d/10 seeds within 5%%; ratios%s", within, ratios.c_str()));
  out.Check(elapsed < 120.0, Fmt("runtime %.1f s", elapsed));
  if (out.pass) out.detail = Fmt("%d/10 within 5%%, %.1f s; ratios%s", within, elapsed, ratios.c_str());
  return out;
}

Outcome Perturbations() {
  Outcome out;
  Rng rng(55);
  Image image(16, 9, 3);
  for (auto& v : image.data) v = static_cast<uint8_t>(rng.UniformIndex(256));
  out.Check(perturb::ColorSwap(image, nullptr, 0.0).data == image.data, "alpha 0 changed pixels");
  const Image swapped = perturb::ColorSwap(image, nullptr, 1.0);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      out.Check(swapped.at(x, y, 0) == image.at(x, y, 2) &&
                    swapped.at(x, y, 1) == image.at(x, y, 1) &&
                    swapped.at(x, y, 2) == image.at(x, y, 0),
                Fmt("alpha 1 not a swap at (%d, %d)", x, y));
    }
  }
  Image red(1, 1, 3);
  red.data = {255, 0, 0};
  const Image mixed = perturb::ColorSwap(red, nullptr, 0.33);
  out.Check(mixed.data == std::vector<uint8_t>{171, 0, 84},
            Fmt("alpha 0.33 gave (%d, %d, %d)", mixed.data[0], mixed.data[1], mixed.data[2]));

  for (int n = 1; n <= 7; ++n) {
    const auto scene = testing::TabletopScene(n);
    for (uint64_t seed = 0; seed < 5; ++seed) {
      const auto variants = perturb::PosePermutations(scene, seed);
      out.Check(static_cast<int>(variants.size()) == n, Fmt("N=%d: %zu variants", n, variants.size()));
      if (variants.empty()) continue;
      out.Check(variants.front() == scene, Fmt("N=%d: first variant is not the input", n));
      std::vector<std::array<double, 3>> expected;
      for (const auto& a : scene.assets) expected.push_back(a.position);
      std::sort(expected.begin(), expected.end());
      std::vector<std::vector<std::array<double, 3>>> seen;
      for (const auto& v : variants) {
        std::vector<std::array<double, 3>> got;
        for (const auto& a : v.assets) got.push_back(a.position);
        seen.push_back(got);
        std::sort(got.begin(), got.end());
        out.Check(got == expected, Fmt("N=%d: position multiset changed", n));
      }
      std::sort(seen.begin(), seen.end());
      out.Check(std::adjacent_find(seen.begin(), seen.end()) == seen.end(),
                Fmt("N=%d: duplicate variants", n));
    }
  }
  if (out.pass) out.detail = "color swap exact; pose sets N=1..7";
  return out;
}

Outcome Aggregation() {
  Outcome out;
  scoring::FrameScoreSeries series;
  series.execution_id = "exec-1";
  for (int i = 0; i < 10; ++i) {
    series.scores.push_back(10.0 * i);
    series.frame_indices.push_back(i);
  }
  const double final30 = scoring::Aggregate(series, scoring::AggregateMethod::kFinal30).value;
  out.Check(final30 == 80.0, Fmt("FINAL_30 = %.17g", final30));
  const std::vector<double> values{1.0, 2.0, 3.0};
  const double sem = scoring::Sem(values);
  out.Check(std::abs(sem - 0.57735) < 1e-5, Fmt("SEM = %.9f", sem));
  if (out.pass) out.detail = Fmt("FINAL_30 = %g, SEM = %.6f", final30, sem);
  return out;
}

nlohmann::json ExecutionBody(const std::string& policy, int condition) {
  return {{"policy", policy},
          {"environment_id", "kitchen"},
          {"task", "target: carrot, destination: plate"},
          {"perturbation", nullptr},
          {"video_uri", Fmt("videos/%s-%d.mp4", policy.c_str(), condition)},
          {"initial_condition_hash", Fmt("ic-%d", condition)}};
}

Outcome ServiceEndToEnd() {
  Outcome out;
  testing::FakeClock clock;
  service::Arena arena(testing::TestConfig(99, clock));
  service::ArenaServer server(arena);
  testing::ArenaClient client(server.Start());

  for (const char* p : {"A", "B"}) {
    out.Check(client.Post("/policies", {{"policy", p}}).status == 200, "register policy");
    for (int c = 0; c < 4; ++c) {
      out.Check(client.Post("/executions", ExecutionBody(p, c)).status == 200,
                "register execution");
    }
  }
  const auto quiz = client.Qualify("ann-1", 8);
  out.Check(quiz.status == 200 && quiz.body.value("passed", false), "quiz at 8/10 did not pass");
  const std::string token = quiz.body.value("token", "");

  for (int i = 0; i < 4 && out.pass; ++i) {
    const auto pair = client.Get("/pairs/next", token);
    out.Check(pair.status == 200, Fmt("pair %d: status %d", i, pair.status));
    if (!out.pass) break;
    const std::string left = pair.body["left"]["video_uri"];
    const bool a_left = left.rfind("videos/A-", 0) == 0;
    const bool a_wins = i < 3;
    const auto ok = client.Post("/preferences",
                                {{"pair_id", pair.body["pair_id"]},
                                 {"choice", a_left == a_wins ? "LEFT" : "RIGHT"},
                                 {"rationale", "grasped the carrot"}},
                                token);
    out.Check(ok.status == 200, Fmt("preference %d: status %d", i, ok.status));
  }

  const auto board = client.Get("/leaderboard");
  out.Check(board.status == 200, Fmt("leaderboard status %d", board.status));
  double gap = NAN;
  if (board.status == 200 && board.body["ranking"].size() == 2) {
    out.Check(board.body["ranking"][0]["policy"] == "A" &&
                  board.body["ranking"][1]["policy"] == "B",
              "order is not [A, B]");
    gap = board.body["ranking"][0]["beta"].get<double>() -
          board.body["ranking"][1]["beta"].get<double>();
    out.Check(std::abs(gap - std::log(3.0)) < 1e-6, Fmt("gap %.12f", gap));
  } else {
    out.Check(false, "leaderboard does not list two policies");
  }
  server.Stop();

  service::EventLog copy;
  for (const auto& e : arena.events()) copy.Append(e.type, e.payload, e.timestamp);
  service::Arena replayed(testing::TestConfig(99, clock), std::move(copy));
  service::ArenaServer replay_server(replayed);
  testing::ArenaClient replay_client(replay_server.Start());
  const auto replay = replay_client.Get("/leaderboard");
  replay_server.Stop();
  out.Check(replay.status == 200 && replay.body.dump() == board.body.dump(),
            "replayed leaderboard differs");
  if (out.pass) out.detail = Fmt("gap - ln 3 = %.2g, replay identical", gap - std::log(3.0));
  return out;
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace arena

int main() {
  using arena::Criterion;
  const std::vector<Criterion> criteria{
      {"bt_closed_form", arena::BtClosedForm},
      {"bt_grid_oracle", arena::BtOracle},
      {"score_fisher_finite_differences", arena::GradientChecks},
      {"sandwich_properties", arena::SandwichProperties},
      {"ranking_recovery", arena::RankingRecovery},
      {"kabsch_registration", arena::Kabsch},
      {"rotation_distance", arena::RotationDistance},
      {"unproject_project_round_trip", arena::CameraRoundTrip},
      {"sysid_annealing", arena::SysId},
      {"perturbations", arena::Perturbations},
      {"aggregation", arena::Aggregation},
      {"service_end_to_end", arena::ServiceEndToEnd},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    arena::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    if (!outcome.pass) ++failures;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", c.name, outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
