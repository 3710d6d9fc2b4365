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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "arena/common/error.h"
#include "arena/common/random.h"
#include "arena/ranking/bradley_terry.h"
#include "arena/ranking/leaderboard.h"
#include "support/bt_oracle.h"

namespace arena::ranking {
namespace {

using testing::Cmp;
using testing::PolicyName;
using testing::ThreeToOne;

constexpr double kLn3 = 1.0986122886681098;

Eigen::VectorXd Vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(values.size());
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an arena::Error");
  return ErrorCode::kIoError;
}

// Random connected dataset over n policies with random true abilities.
std::vector<ComparisonRecord> RandomDataset(Rng& rng, int n, int count,
                                            double tie_rate = 0.0) {
  while (true) {
    Eigen::VectorXd truth(n);
    for (int i = 0; i < n; ++i) truth[i] = 2.0 * rng.Normal() * 0.5;
    auto records = testing::SampleRecords(rng, truth, count, tie_rate);
    if (testing::Connected(records, n)) return records;
  }
}

TEST_CASE("BtProbability closed forms") {
  CHECK(BtProbability(0.0, 0.0) == 0.5);
  CHECK(BtProbability(std::log(3.0), 0.0) == doctest::Approx(0.75).epsilon(1e-15));
  for (double c : {-5.0, 0.3, 17.0}) {
    CHECK(BtProbability(c + 0.4, c - 1.1) ==
          doctest::Approx(BtProbability(0.4, -1.1)).epsilon(1e-13));
  }
  CHECK(BtProbability(0.7, -0.2) + BtProbability(-0.2, 0.7) ==
        doctest::Approx(1.0).epsilon(1e-15));
  CHECK(CodeOf([] { BtProbability(NAN, 0.0); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { BtProbability(0.0, INFINITY); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("LogLikelihood examples") {
  const PolicySet ab({"A", "B"});
  const std::vector<ComparisonRecord> one{Cmp("A", "B", +1)};
  CHECK(LogLikelihood(ab, one, Vec({0, 0})) ==
        doctest::Approx(-0.6931471805599453).epsilon(1e-15));

  const std::vector<ComparisonRecord> ties{Cmp("A", "B", 0), Cmp("B", "A", 0)};
  CHECK(LogLikelihood(ab, ties, Vec({0.3, -0.3})) == 0.0);

  // beta_A - beta_B = ln 3 gives p = 0.75.
  CHECK(LogLikelihood(ab, ThreeToOne(), Vec({kLn3 / 2, -kLn3 / 2})) ==
        doctest::Approx(-2.249340578475233).epsilon(1e-13));

  const std::vector<ComparisonRecord> unknown{Cmp("A", "C", +1)};
  CHECK(CodeOf([&] { LogLikelihood(ab, unknown, Vec({0, 0})); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { LogLikelihood(ab, one, Vec({0, 0, 0})); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("LogLikelihood is invariant under a global shift") {
  Rng rng(11);
  const auto records = RandomDataset(rng, 4, 40);
  const PolicySet policies = PolicySet::FromDecisive(records);
  const Eigen::VectorXd betas = Vec({0.5, -0.25, 1.0, -1.25});
  // Dyadic values keep every difference exact.
  CHECK(LogLikelihood(policies, records, betas.array() + 8.0) ==
        LogLikelihood(policies, records, betas));
  for (double c : {-3.7, 0.1, 12.9}) {
    CHECK(LogLikelihood(policies, records, betas.array() + c) ==
          doctest::Approx(LogLikelihood(policies, records, betas)).epsilon(1e-12));
  }
}

TEST_CASE("ScoreFunction") {
  const PolicySet abc({"A", "B", "C"});
  CHECK(ScoreFunction(abc, {}, Vec({0.1, 0.2, 0.3})).isZero(0.0));

  SUBCASE("matches finite differences on random 4-policy data") {
    Rng rng(2024);
    for (int draw = 0; draw < 100; ++draw) {
      const auto records = RandomDataset(rng, 4, 5 + draw % 20, 0.1);
      const PolicySet policies({"p0", "p1", "p2", "p3"});
      Eigen::VectorXd betas(4);
      for (int i = 0; i < 4; ++i) betas[i] = rng.Normal();
      const Eigen::VectorXd analytic = ScoreFunction(policies, records, betas);
      const Eigen::VectorXd numeric =
          testing::FiniteDifferenceGradient(records, betas);
      CHECK((analytic - numeric).norm() <=
            1e-6 * std::max(1.0, numeric.norm()));
      CHECK(std::abs(analytic.sum()) < 1e-12);
    }
  }
}

TEST_CASE("FisherInformation") {
  const PolicySet ab({"A", "B"});
  const Eigen::MatrixXd h =
      FisherInformation(ab, std::vector{Cmp("A", "B", +1)}, Vec({0, 0}));
  CHECK(h(0, 0) == 0.25);
  CHECK(h(1, 1) == 0.25);
  CHECK(h(0, 1) == -0.25);
  CHECK(h(1, 0) == -0.25);

  Rng rng(99);
  for (int draw = 0; draw < 50; ++draw) {
    const auto records = RandomDataset(rng, 4, 12, 0.2);
    const PolicySet policies({"p0", "p1", "p2", "p3"});
    Eigen::VectorXd betas(4);
    for (int i = 0; i < 4; ++i) betas[i] = rng.Normal();
    const Eigen::MatrixXd fisher = FisherInformation(policies, records, betas);
    CHECK((fisher * Eigen::VectorXd::Ones(4)).lpNorm<Eigen::Infinity>() < 1e-14);
    CHECK((fisher - fisher.transpose()).isZero(0.0));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(fisher);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    const Eigen::MatrixXd numeric =
        testing::FiniteDifferenceFisher(records, betas);
    CHECK((fisher - numeric).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("FitBradleyTerry on two policies") {
  SUBCASE("3-1 split recovers ln 3") {
    const FitReport fit = FitBradleyTerry(ThreeToOne());
    const auto& e = fit.estimate;
    REQUIRE(e.policies.ids() == std::vector<PolicyId>{"A", "B"});
    CHECK(std::abs(e.betas[0] - e.betas[1] - kLn3) < 1e-8);
    CHECK(std::abs(e.betas.sum()) < 1e-12);
    CHECK(fit.final_gradient_norm <= 1e-10);
    CHECK(fit.flags.empty());
    CHECK(e.thetas[0] == doctest::Approx(std::exp(e.betas[0])));
  }
  SUBCASE("2-2 split is symmetric") {
    std::vector<ComparisonRecord> records{Cmp("A", "B", 1), Cmp("A", "B", 1),
                                          Cmp("B", "A", 1), Cmp("A", "B", -1)};
    const FitReport fit = FitBradleyTerry(records);
    CHECK(std::abs(fit.estimate.betas[0]) < 1e-12);
    CHECK(std::abs(fit.estimate.betas[1]) < 1e-12);
  }
}

TEST_CASE("FitBradleyTerry beats a grid search on 3 policies") {
  Rng rng(5);
  for (int trial = 0; trial < 3; ++trial) {
    const auto records = RandomDataset(rng, 3, 30);
    const FitReport fit = FitBradleyTerry(records);
    const double fitted = testing::OracleLogLikelihood(records, fit.estimate.betas);
    CHECK(fitted >= testing::GridSearchMaximum3(records) - 1e-6);
  }
}

TEST_CASE("FitBradleyTerry error paths and flags") {
  CHECK(CodeOf([] { FitBradleyTerry(std::vector<ComparisonRecord>{}); }) ==
        ErrorCode::kEmptyDecisiveSet);
  CHECK(CodeOf([] {
          FitBradleyTerry(std::vector{Cmp("A", "B", 0), Cmp("B", "C", 0)});
        }) == ErrorCode::kEmptyDecisiveSet);

  const std::vector<ComparisonRecord> split{Cmp("A", "B", 1), Cmp("B", "A", 1),
                                            Cmp("C", "D", 1), Cmp("D", "C", 1)};
  try {
    FitBradleyTerry(split);
    FAIL("expected GraphDisconnectedError");
  } catch (const GraphDisconnectedError& e) {
    CHECK(e.code() == ErrorCode::kGraphDisconnected);
    REQUIRE(e.components().size() == 2);
    CHECK(e.components()[0] == std::vector<PolicyId>{"A", "B"});
    CHECK(e.components()[1] == std::vector<PolicyId>{"C", "D"});
  }

  // A policy registered explicitly but only ever tied is isolated.
  CHECK(CodeOf([] {
          FitBradleyTerry(PolicySet({"A", "B", "C"}),
                          std::vector{Cmp("A", "B", 1), Cmp("A", "B", -1),
                                      Cmp("A", "C", 0)});
        }) == ErrorCode::kGraphDisconnected);

  SUBCASE("separation is flagged but betas are returned") {
    const std::vector<ComparisonRecord> sweep{Cmp("A", "B", 1), Cmp("A", "B", 1)};
    const FitReport fit = FitBradleyTerry(sweep);
    CHECK(fit.has_flag(FitFlag::kSeparated));
    CHECK(fit.estimate.betas[0] > fit.estimate.betas[1]);
    CHECK(fit.estimate.betas.allFinite());
  }
  SUBCASE("a partially separated cycle") {
    // A and B trade wins; both always beat C.
    const std::vector<ComparisonRecord> records{
        Cmp("A", "B", 1), Cmp("B", "A", 1), Cmp("A", "C", 1), Cmp("C", "B", -1)};
    CHECK(IsSeparated(PolicySet::FromDecisive(records), records));
    CHECK(FitBradleyTerry(records).has_flag(FitFlag::kSeparated));
  }
  SUBCASE("iteration cap reports DIVERGED") {
    Rng rng(3);
    const auto records = RandomDataset(rng, 4, 40);
    FitConfig config;
    config.max_iterations = 1;
    const FitReport fit = FitBradleyTerry(records, config);
    CHECK(fit.has_flag(FitFlag::kDiverged));
    CHECK(fit.iterations == 1);
    CHECK(fit.final_gradient_norm > config.tolerance);
  }
  CHECK(CodeOf([] { FitBradleyTerry(std::vector{Cmp("A", "A", 1)}); }) ==
        ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { FitBradleyTerry(std::vector{Cmp("A", "B", 2)}); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("FitBradleyTerry invariants") {
  Rng rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    auto records = RandomDataset(rng, 5, 60);
    const FitReport base = FitBradleyTerry(records);
    REQUIRE(!base.has_flag(FitFlag::kDiverged));

    SUBCASE("deterministic") {
      const FitReport again = FitBradleyTerry(records);
      CHECK((again.estimate.betas - base.estimate.betas).isZero(0.0));
    }
    SUBCASE("swapping sides negates betas") {
      auto swapped = records;
      for (auto& r : swapped) {
        std::swap(r.policy_a, r.policy_b);
        r.outcome = -r.outcome;
      }
      auto mirrored = records;
      for (auto& r : mirrored) r.outcome = -r.outcome;
      const FitReport same = FitBradleyTerry(swapped);
      CHECK((same.estimate.betas - base.estimate.betas).cwiseAbs().maxCoeff() < 1e-8);
      const FitReport negated = FitBradleyTerry(mirrored);
      CHECK((negated.estimate.betas + base.estimate.betas).cwiseAbs().maxCoeff() < 1e-8);
    }
    SUBCASE("ties are inert") {
      const AbilityEstimate& e = base.estimate;
      const Eigen::MatrixXd cov = SandwichCovariance(e.policies, records, e.betas);
      auto with_ties = records;
      for (int k = 0; k < 25; ++k) {
        const int a = static_cast<int>(rng.UniformIndex(5));
        with_ties.insert(with_ties.begin() + static_cast<long>(rng.UniformIndex(with_ties.size())),
                         Cmp(PolicyName(a), PolicyName((a + 1) % 5), 0));
      }
      // Insertion order of decisive records is preserved, so results match
      // bit for bit.
      const FitReport tied = FitBradleyTerry(with_ties);
      CHECK((tied.estimate.betas - e.betas).isZero(0.0));
      const Eigen::MatrixXd tied_cov =
          SandwichCovariance(e.policies, with_ties, tied.estimate.betas);
      CHECK((tied_cov - cov).isZero(0.0));
    }
  }
}

TEST_CASE("SandwichCovariance") {
  SUBCASE("centering projector identities") {
    for (size_t n : {1u, 2u, 5u}) {
      const Eigen::MatrixXd a = CenteringProjector(n);
      const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
      CHECK((a * ones).lpNorm<Eigen::Infinity>() < 1e-15);
      CHECK((a * a - a).cwiseAbs().maxCoeff() < 1e-15);
    }
  }
  SUBCASE("two-policy 3-1 data reduces to the model covariance") {
    const auto records = ThreeToOne();
    const FitReport fit = FitBradleyTerry(records);
    const auto& e = fit.estimate;
    const Eigen::MatrixXd v = SandwichCovariance(e.policies, records, e.betas);
    const Eigen::MatrixXd a = CenteringProjector(2);
    const Eigen::MatrixXd model =
        a * SymmetricPseudoInverse(FisherInformation(e.policies, records, e.betas)) *
        a.transpose();
    CHECK((v - model).cwiseAbs().maxCoeff() < 1e-9);
    const Eigen::Vector2d contrast(1.0, -1.0);
    CHECK(std::abs(contrast.dot(v * contrast) - 4.0 / 3.0) < 1e-8);
  }
  SUBCASE("structure on random data") {
    Rng rng(8);
    for (int trial = 0; trial < 20; ++trial) {
      const auto records = RandomDataset(rng, 4, 80, 0.1);
      const FitReport fit = FitBradleyTerry(records);
      if (fit.has_flag(FitFlag::kSeparated)) continue;
      const auto& e = fit.estimate;
      const Eigen::MatrixXd v = SandwichCovariance(e.policies, records, e.betas);
      CHECK((v - v.transpose()).isZero(0.0));
      CHECK((v * Eigen::VectorXd::Ones(4)).lpNorm<Eigen::Infinity>() < 1e-10);
      CHECK(v.diagonal().minCoeff() >= -1e-12);
    }
  }
  SUBCASE("rejects betas away from the optimum") {
    const PolicySet ab({"A", "B"});
    CHECK(CodeOf([&] { SandwichCovariance(ab, ThreeToOne(), Vec({0, 0})); }) ==
          ErrorCode::kPreconditionViolation);
  }
}

TEST_CASE("ConfidenceIntervals") {
  CHECK(NormalQuantile(0.05) == doctest::Approx(1.959963984540054).epsilon(1e-12));
  CHECK(std::abs(NormalQuantile(0.05) - 1.959964) < 1e-5);
  CHECK(CodeOf([] { NormalQuantile(0.0); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { NormalQuantile(1.0); }) == ErrorCode::kInvalidArgument);

  AbilityEstimate e;
  e.policies = PolicySet({"A", "B", "C"});
  e.betas = Vec({0.5, 0.0, -0.5});
  e.thetas = e.betas.array().exp();
  e.centered_covariance = Eigen::MatrixXd::Zero(3, 3);
  e.centered_covariance(0, 0) = 0.04;
  e.centered_covariance(2, 2) = 0.09;

  const ConfidenceBand wide = ConfidenceIntervals(e, 0.05);
  CHECK(wide.lower[1] == 0.0);
  CHECK(wide.upper[1] == 0.0);
  CHECK(wide.upper[0] - wide.lower[0] ==
        doctest::Approx(2.0 * 1.959963984540054 * 0.2).epsilon(1e-12));
  const ConfidenceBand narrow = ConfidenceIntervals(e, 0.32);
  for (int i : {0, 2}) {
    CHECK(narrow.upper[i] - narrow.lower[i] < wide.upper[i] - wide.lower[i]);
    CHECK(narrow.lower[i] <= e.betas[i]);
    CHECK(e.betas[i] <= narrow.upper[i]);
  }
  CHECK(CodeOf([&] { ConfidenceIntervals(e, 1.5); }) == ErrorCode::kInvalidArgument);
  AbilityEstimate bare = e;
  bare.centered_covariance.resize(0, 0);
  CHECK(CodeOf([&] { ConfidenceIntervals(bare, 0.05); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("GlobalRanking") {
  AbilityEstimate e;
  e.policies = PolicySet({"p1", "p2", "p3"});
  e.betas = Vec({1.0, 0.0, -1.0});
  ConfidenceBand band;
  band.lower = {0.8, -0.1, -1.2};
  band.upper = {1.2, 0.1, -0.8};
  auto ranking = GlobalRanking(e, band);
  REQUIRE(ranking.size() == 3);
  CHECK(ranking[0].policy == "p1");
  CHECK(ranking[1].policy == "p2");
  CHECK(ranking[2].policy == "p3");
  CHECK(ranking[0].decisive);
  CHECK(ranking[1].decisive);
  CHECK(!ranking[2].decisive);
  CHECK(ranking[2].rank == 3);

  band.lower[0] = 0.05;  // overlaps p2's band
  ranking = GlobalRanking(e, band);
  CHECK(!ranking[0].decisive);
  CHECK(ranking[1].decisive);

  e.betas = Vec({0.0, 0.0, 0.0});
  ranking = GlobalRanking(e, band);
  CHECK(ranking[0].policy == "p1");
  CHECK(ranking[1].policy == "p2");

  band.lower.pop_back();
  CHECK(CodeOf([&] { GlobalRanking(e, band); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("Relabeling every winner reverses the ranking") {
  Rng rng(31);
  const Eigen::VectorXd truth = Vec({1.2, 0.4, -0.3, -1.3});
  auto records = testing::SampleRecords(rng, truth, 200);
  REQUIRE(testing::Connected(records, 4));
  auto flipped = records;
  for (auto& r : flipped) r.outcome = -r.outcome;
  const Leaderboard forward = BuildLeaderboard(records);
  const Leaderboard backward = BuildLeaderboard(flipped);
  REQUIRE(forward.ranking.size() == 4);
  for (size_t k = 0; k < 4; ++k) {
    CHECK(forward.ranking[k].policy == backward.ranking[3 - k].policy);
  }
}

TEST_CASE("BuildLeaderboard counts") {
  auto records = ThreeToOne();
  records.push_back(Cmp("A", "B", 0));
  const Leaderboard board = BuildLeaderboard(records);
  CHECK(board.decisive_records == 4);
  CHECK(board.tie_records == 1);
  CHECK(board.counts.at("A").wins == 3);
  CHECK(board.counts.at("A").losses == 1);
  CHECK(board.counts.at("B").ties == 1);
  CHECK(board.ranking[0].policy == "A");
}

}  // namespace
}  // namespace arena::ranking
