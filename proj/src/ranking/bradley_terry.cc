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

#include "arena/ranking/bradley_terry.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/distributions/normal.hpp>

#include "arena/common/error.h"

namespace arena::ranking {
namespace {

// One decisive comparison resolved to policy indices. `won` is 1 when the
// first index won.
struct IndexedComparison {
  size_t first;
  size_t second;
  double won;
};

std::vector<IndexedComparison> IndexDecisive(
    const PolicySet& policies, std::span<const ComparisonRecord> records) {
  std::vector<IndexedComparison> out;
  out.reserve(records.size());
  for (const ComparisonRecord& record : records) {
    ValidateRecord(record);
    const size_t a = policies.index(record.policy_a);
    const size_t b = policies.index(record.policy_b);
    if (!record.decisive()) continue;
    out.push_back({a, b, record.outcome > 0 ? 1.0 : 0.0});
  }
  return out;
}

void CheckBetas(const PolicySet& policies, const Eigen::VectorXd& betas) {
  Require(static_cast<size_t>(betas.size()) == policies.size(),
          "beta vector length " + std::to_string(betas.size()) +
              " does not match " + std::to_string(policies.size()) +
              " policies");
  Require(betas.allFinite(), "beta vector must be finite");
}

// log(1 + exp(x)) without overflow.
double Softplus(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double LogLikelihoodIndexed(std::span<const IndexedComparison> comparisons,
                            const Eigen::VectorXd& betas) {
  double total = 0.0;
  for (const IndexedComparison& c : comparisons) {
    const double margin = betas[c.first] - betas[c.second];
    // log P(winner beats loser) = -softplus(beta_loser - beta_winner)
    total -= Softplus(c.won > 0.5 ? -margin : margin);
  }
  return total;
}

Eigen::VectorXd ScoreIndexed(std::span<const IndexedComparison> comparisons,
                             const Eigen::VectorXd& betas) {
  Eigen::VectorXd score = Eigen::VectorXd::Zero(betas.size());
  for (const IndexedComparison& c : comparisons) {
    const double residual =
        c.won - BtProbability(betas[c.first], betas[c.second]);
    score[c.first] += residual;
    score[c.second] -= residual;
  }
  return score;
}

Eigen::MatrixXd FisherIndexed(std::span<const IndexedComparison> comparisons,
                              const Eigen::VectorXd& betas) {
  const Eigen::Index n = betas.size();
  Eigen::MatrixXd fisher = Eigen::MatrixXd::Zero(n, n);
  for (const IndexedComparison& c : comparisons) {
    const double p = BtProbability(betas[c.first], betas[c.second]);
    const double w = p * (1.0 - p);
    fisher(c.first, c.first) += w;
    fisher(c.second, c.second) += w;
    fisher(c.first, c.second) -= w;
    fisher(c.second, c.first) -= w;
  }
  return fisher;
}

void Recenter(Eigen::VectorXd& betas) {
  betas.array() -= betas.mean();
}

// Nodes reachable from `start` following adjacency lists.
std::vector<bool> Reachable(const std::vector<std::vector<size_t>>& adjacency,
                            size_t start) {
  std::vector<bool> seen(adjacency.size(), false);
  std::deque<size_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const size_t node = queue.front();
    queue.pop_front();
    for (size_t next : adjacency[node]) {
      if (!seen[next]) {
        seen[next] = true;
        queue.push_back(next);
      }
    }
  }
  return seen;
}

}  // namespace

void ValidateRecord(const ComparisonRecord& record) {
  Require(!record.policy_a.empty() && !record.policy_b.empty(),
          "policy ids must be non-empty");
  Require(record.policy_a != record.policy_b,
          "record compares policy '" + record.policy_a + "' with itself");
  Require(record.outcome >= -1 && record.outcome <= 1,
          "outcome must be -1, 0 or +1, got " +
              std::to_string(record.outcome));
}

PolicySet::PolicySet(std::vector<PolicyId> ids) {
  std::set<PolicyId> unique;
  for (PolicyId& id : ids) {
    Require(!id.empty(), "policy ids must be non-empty");
    Require(unique.insert(std::move(id)).second, "duplicate policy id");
  }
  ids_.assign(unique.begin(), unique.end());
  for (size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
}

PolicySet PolicySet::FromDecisive(std::span<const ComparisonRecord> records) {
  std::set<PolicyId> ids;
  for (const ComparisonRecord& record : records) {
    ValidateRecord(record);
    if (!record.decisive()) continue;
    ids.insert(record.policy_a);
    ids.insert(record.policy_b);
  }
  return PolicySet(std::vector<PolicyId>(ids.begin(), ids.end()));
}

size_t PolicySet::index(const PolicyId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    Fail(ErrorCode::kInvalidArgument, "unknown policy id '" + id + "'");
  }
  return it->second;
}

bool FitReport::has_flag(FitFlag flag) const {
  return std::find(flags.begin(), flags.end(), flag) != flags.end();
}

double BtProbability(double beta_i, double beta_j) {
  Require(std::isfinite(beta_i) && std::isfinite(beta_j),
          "log-abilities must be finite");
  return 1.0 / (1.0 + std::exp(beta_j - beta_i));
}

double LogLikelihood(const PolicySet& policies,
                     std::span<const ComparisonRecord> records,
                     const Eigen::VectorXd& betas) {
  CheckBetas(policies, betas);
  return LogLikelihoodIndexed(IndexDecisive(policies, records), betas);
}

Eigen::VectorXd ScoreFunction(const PolicySet& policies,
                              std::span<const ComparisonRecord> records,
                              const Eigen::VectorXd& betas) {
  CheckBetas(policies, betas);
  return ScoreIndexed(IndexDecisive(policies, records), betas);
}

Eigen::MatrixXd FisherInformation(const PolicySet& policies,
                                  std::span<const ComparisonRecord> records,
                                  const Eigen::VectorXd& betas) {
  CheckBetas(policies, betas);
  return FisherIndexed(IndexDecisive(policies, records), betas);
}

std::vector<std::vector<PolicyId>> DecisiveComponents(
    const PolicySet& policies, std::span<const ComparisonRecord> records) {
  std::vector<size_t> parent(policies.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (const IndexedComparison& c : IndexDecisive(policies, records)) {
    const size_t ra = find(c.first);
    const size_t rb = find(c.second);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  // Roots are the smallest index of each component, and ids are sorted, so
  // iterating in index order yields components ordered by smallest member.
  std::map<size_t, std::vector<PolicyId>> grouped;
  for (size_t i = 0; i < policies.size(); ++i) {
    grouped[find(i)].push_back(policies.id(i));
  }
  std::vector<std::vector<PolicyId>> components;
  for (auto& [root, members] : grouped) components.push_back(std::move(members));
  return components;
}

bool IsSeparated(const PolicySet& policies,
                 std::span<const ComparisonRecord> records) {
  if (policies.size() < 2) return false;
  std::vector<std::vector<size_t>> beat(policies.size());
  std::vector<std::vector<size_t>> beaten_by(policies.size());
  for (const IndexedComparison& c : IndexDecisive(policies, records)) {
    const size_t winner = c.won > 0.5 ? c.first : c.second;
    const size_t loser = c.won > 0.5 ? c.second : c.first;
    beat[winner].push_back(loser);
    beaten_by[loser].push_back(winner);
  }
  const std::vector<bool> forward = Reachable(beat, 0);
  const std::vector<bool> backward = Reachable(beaten_by, 0);
  for (size_t i = 0; i < policies.size(); ++i) {
    if (!forward[i] || !backward[i]) return true;
  }
  return false;
}

std::vector<ComparisonRecord> DecisiveOnly(
    std::span<const ComparisonRecord> records) {
  std::vector<ComparisonRecord> out;
  for (const ComparisonRecord& record : records) {
    ValidateRecord(record);
    if (record.decisive()) out.push_back(record);
  }
  return out;
}

FitReport FitBradleyTerry(std::span<const ComparisonRecord> records,
                          const FitConfig& config) {
  const std::vector<ComparisonRecord> decisive = DecisiveOnly(records);
  return FitBradleyTerry(PolicySet::FromDecisive(decisive), decisive, config);
}

FitReport FitBradleyTerry(const PolicySet& policies,
                          std::span<const ComparisonRecord> records,
                          const FitConfig& config) {
  Require(config.tolerance > 0.0, "tolerance must be positive");
  Require(config.max_iterations >= 0, "max_iterations must be non-negative");
  const std::vector<IndexedComparison> comparisons =
      IndexDecisive(policies, records);
  if (comparisons.empty()) {
    Fail(ErrorCode::kEmptyDecisiveSet,
         "no decisive comparisons to fit (ties are excluded)");
  }
  auto components = DecisiveComponents(policies, records);
  if (components.size() > 1) throw GraphDisconnectedError(std::move(components));

  FitReport report;
  if (IsSeparated(policies, records)) report.flags.push_back(FitFlag::kSeparated);

  const Eigen::Index n = static_cast<Eigen::Index>(policies.size());
  const Eigen::MatrixXd gauge =
      Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::VectorXd betas = Eigen::VectorXd::Zero(n);
  double loglik = LogLikelihoodIndexed(comparisons, betas);
  Eigen::VectorXd score = ScoreIndexed(comparisons, betas);
  int iteration = 0;
  bool stalled = false;
  while (score.lpNorm<Eigen::Infinity>() > config.tolerance &&
         iteration < config.max_iterations && !stalled) {
    // H + (1/N)11^T is positive definite on a connected graph and agrees with
    // H on the sum-zero subspace, where the score always lives.
    const Eigen::MatrixXd system = FisherIndexed(comparisons, betas) + gauge;
    Eigen::VectorXd step = system.ldlt().solve(score);
    ++iteration;

    // Rounding near the optimum can make a good step look a few ulps worse.
    const double slack = 16.0 * std::numeric_limits<double>::epsilon() *
                         (1.0 + std::abs(loglik));
    stalled = true;
    for (int halving = 0; halving <= config.max_step_halvings; ++halving) {
      Eigen::VectorXd trial = betas + step;
      Recenter(trial);
      const double trial_loglik = LogLikelihoodIndexed(comparisons, trial);
      if (trial_loglik >= loglik - slack) {
        betas = std::move(trial);
        loglik = trial_loglik;
        stalled = false;
        break;
      }
      step *= 0.5;
    }
    score = ScoreIndexed(comparisons, betas);
  }

  report.iterations = iteration;
  report.final_gradient_norm = score.lpNorm<Eigen::Infinity>();
  if (report.final_gradient_norm > config.tolerance) {
    report.flags.push_back(FitFlag::kDiverged);
  }
  report.estimate.policies = policies;
  report.estimate.thetas = betas.array().exp();
  report.estimate.betas = std::move(betas);
  return report;
}

Eigen::MatrixXd CenteringProjector(size_t n) {
  Require(n > 0, "projector dimension must be positive");
  const Eigen::Index dim = static_cast<Eigen::Index>(n);
  return Eigen::MatrixXd::Identity(dim, dim) -
         Eigen::MatrixXd::Constant(dim, dim, 1.0 / static_cast<double>(n));
}

Eigen::MatrixXd SymmetricPseudoInverse(const Eigen::MatrixXd& matrix,
                                       double relative_cutoff) {
  Require(matrix.rows() == matrix.cols(), "matrix must be square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix);
  const Eigen::VectorXd& values = solver.eigenvalues();
  const double largest = values.cwiseAbs().maxCoeff();
  Eigen::VectorXd inverted = Eigen::VectorXd::Zero(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] > relative_cutoff * largest) inverted[i] = 1.0 / values[i];
  }
  const Eigen::MatrixXd& vectors = solver.eigenvectors();
  return vectors * inverted.asDiagonal() * vectors.transpose();
}

Eigen::MatrixXd SandwichCovariance(const PolicySet& policies,
                                   std::span<const ComparisonRecord> records,
                                   const Eigen::VectorXd& betas_at_mle,
                                   double max_gradient_norm) {
  CheckBetas(policies, betas_at_mle);
  const std::vector<IndexedComparison> comparisons =
      IndexDecisive(policies, records);
  const double gradient_norm =
      ScoreIndexed(comparisons, betas_at_mle).lpNorm<Eigen::Infinity>();
  if (gradient_norm > max_gradient_norm) {
    Fail(ErrorCode::kPreconditionViolation,
         "betas are not at a maximum-likelihood point (score norm " +
             std::to_string(gradient_norm) + ")");
  }

  const Eigen::Index n = betas_at_mle.size();
  Eigen::MatrixXd meat = Eigen::MatrixXd::Zero(n, n);
  for (const IndexedComparison& c : comparisons) {
    const double residual =
        c.won - BtProbability(betas_at_mle[c.first], betas_at_mle[c.second]);
    const double w = residual * residual;
    meat(c.first, c.first) += w;
    meat(c.second, c.second) += w;
    meat(c.first, c.second) -= w;
    meat(c.second, c.first) -= w;
  }
  const Eigen::MatrixXd bread =
      SymmetricPseudoInverse(FisherIndexed(comparisons, betas_at_mle));
  const Eigen::MatrixXd raw = bread * meat * bread;
  const Eigen::MatrixXd centering = CenteringProjector(policies.size());
  const Eigen::MatrixXd centered = centering * raw * centering.transpose();
  return 0.5 * (centered + centered.transpose());
}

double NormalQuantile(double alpha) {
  Require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  const boost::math::normal standard;
  return boost::math::quantile(boost::math::complement(standard, alpha / 2.0));
}

ConfidenceBand ConfidenceIntervals(const AbilityEstimate& estimate,
                                   double alpha) {
  const Eigen::Index n = estimate.betas.size();
  Require(estimate.centered_covariance.rows() == n &&
              estimate.centered_covariance.cols() == n,
          "estimate has no covariance matching its policies");
  ConfidenceBand band;
  band.alpha = alpha;
  band.z = NormalQuantile(alpha);
  band.lower.resize(n);
  band.upper.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // Clamp rounding noise on a variance that is analytically zero.
    const double variance = std::max(0.0, estimate.centered_covariance(i, i));
    const double half_width = band.z * std::sqrt(variance);
    band.lower[i] = estimate.betas[i] - half_width;
    band.upper[i] = estimate.betas[i] + half_width;
  }
  return band;
}

std::vector<RankEntry> GlobalRanking(const AbilityEstimate& estimate,
                                     const ConfidenceBand& band) {
  const size_t n = estimate.policies.size();
  Require(static_cast<size_t>(estimate.betas.size()) == n &&
              band.lower.size() == n && band.upper.size() == n,
          "estimate and confidence band cover different policy sets");
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (estimate.betas[a] != estimate.betas[b]) {
      return estimate.betas[a] > estimate.betas[b];
    }
    return estimate.policies.id(a) < estimate.policies.id(b);
  });
  std::vector<RankEntry> ranking;
  ranking.reserve(n);
  for (size_t k = 0; k < n; ++k) {
    const size_t i = order[k];
    RankEntry entry;
    entry.policy = estimate.policies.id(i);
    entry.rank = static_cast<int>(k) + 1;
    entry.beta = estimate.betas[i];
    entry.decisive = k + 1 < n && band.lower[i] > band.upper[order[k + 1]];
    ranking.push_back(std::move(entry));
  }
  return ranking;
}

}  // namespace arena::ranking
