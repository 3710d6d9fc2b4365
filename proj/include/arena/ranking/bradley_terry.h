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

#ifndef ARENA_RANKING_BRADLEY_TERRY_H_
#define ARENA_RANKING_BRADLEY_TERRY_H_

// Batch Bradley-Terry fitting over pairwise preferences.
//
// Each policy i carries a log-ability beta_i and P(i beats j) is
// exp(beta_i) / (exp(beta_i) + exp(beta_j)). The log-likelihood over decisive
// comparisons is concave in beta and invariant under beta -> beta + c*1, so
// every estimate here is reported in the sum-zero gauge. Ties are recorded by
// callers but never enter the objective.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace arena::ranking {

using PolicyId = std::string;

// Outcome is +1 when policy_a was preferred, -1 when policy_b was, 0 for a tie.
struct ComparisonRecord {
  PolicyId policy_a;
  PolicyId policy_b;
  int outcome = 0;
  std::string task;
  std::string annotator;
  std::string rationale;
  std::string timestamp;  // RFC 3339, UTC

  bool decisive() const { return outcome != 0; }
  friend bool operator==(const ComparisonRecord&,
                         const ComparisonRecord&) = default;
};

// Throws kInvalidArgument on a self-comparison or an outcome outside {-1,0,1}.
void ValidateRecord(const ComparisonRecord& record);

// Ordered set of policy ids with index lookup. Indices follow lexicographic id
// order so that fits do not depend on which policy happened to appear first.
class PolicySet {
 public:
  PolicySet() = default;
  explicit PolicySet(std::vector<PolicyId> ids);

  // Policies that appear in at least one decisive record.
  static PolicySet FromDecisive(std::span<const ComparisonRecord> records);

  size_t size() const { return ids_.size(); }
  const std::vector<PolicyId>& ids() const { return ids_; }
  const PolicyId& id(size_t index) const { return ids_[index]; }
  bool contains(const PolicyId& id) const { return index_.contains(id); }
  // Throws kInvalidArgument for unknown ids.
  size_t index(const PolicyId& id) const;

  friend bool operator==(const PolicySet& a, const PolicySet& b) {
    return a.ids_ == b.ids_;
  }

 private:
  std::vector<PolicyId> ids_;
  std::map<PolicyId, size_t> index_;
};

enum class FitFlag { kDiverged, kSeparated };

struct AbilityEstimate {
  PolicySet policies;
  Eigen::VectorXd betas;   // sum-zero log-abilities
  Eigen::VectorXd thetas;  // exp(betas)
  Eigen::MatrixXd centered_covariance;  // empty until a covariance is attached
};

struct FitConfig {
  double tolerance = 1e-10;  // on the infinity norm of the score
  int max_iterations = 200;
  int max_step_halvings = 30;
};

struct FitReport {
  AbilityEstimate estimate;
  int iterations = 0;
  double final_gradient_norm = 0.0;
  std::vector<FitFlag> flags;

  bool has_flag(FitFlag flag) const;
};

struct ConfidenceBand {
  double alpha = 0.05;
  double z = 0.0;
  std::vector<double> lower;
  std::vector<double> upper;
};

struct RankEntry {
  PolicyId policy;
  int rank = 0;          // 1-based
  double beta = 0.0;
  // True when this policy's band lies strictly above the next entry's band.
  bool decisive = false;
};

double BtProbability(double beta_i, double beta_j);

double LogLikelihood(const PolicySet& policies,
                     std::span<const ComparisonRecord> records,
                     const Eigen::VectorXd& betas);

Eigen::VectorXd ScoreFunction(const PolicySet& policies,
                              std::span<const ComparisonRecord> records,
                              const Eigen::VectorXd& betas);

Eigen::MatrixXd FisherInformation(const PolicySet& policies,
                                  std::span<const ComparisonRecord> records,
                                  const Eigen::VectorXd& betas);

// Connected components of the decisive comparison graph, each sorted, listed
// by their smallest member.
std::vector<std::vector<PolicyId>> DecisiveComponents(
    const PolicySet& policies, std::span<const ComparisonRecord> records);

// True when some nonempty proper subset of policies never loses to its
// complement, i.e. the directed "beat" graph is not strongly connected. The
// likelihood then has no finite maximizer.
bool IsSeparated(const PolicySet& policies,
                 std::span<const ComparisonRecord> records);

std::vector<ComparisonRecord> DecisiveOnly(
    std::span<const ComparisonRecord> records);

// Newton-Raphson maximum likelihood over the policies that appear in decisive
// records; ties may mention any policy. Throws kEmptyDecisiveSet or GraphDisconnectedError.
FitReport FitBradleyTerry(std::span<const ComparisonRecord> records,
                          const FitConfig& config = {});

// Same, over an explicit policy set; a policy without decisive records makes
// the graph disconnected.
FitReport FitBradleyTerry(const PolicySet& policies,
                          std::span<const ComparisonRecord> records,
                          const FitConfig& config = {});

// I - (1/N) 11^T.
Eigen::MatrixXd CenteringProjector(size_t n);

// Moore-Penrose inverse through the symmetric eigendecomposition; eigenvalues
// at or below relative_cutoff * lambda_max are treated as zero.
Eigen::MatrixXd SymmetricPseudoInverse(const Eigen::MatrixXd& matrix,
                                       double relative_cutoff = 1e-12);

// Centered robust covariance A H^+ S H^+ A^T at an MLE. Throws
// kPreconditionViolation when the score infinity norm exceeds
// max_gradient_norm.
Eigen::MatrixXd SandwichCovariance(const PolicySet& policies,
                                   std::span<const ComparisonRecord> records,
                                   const Eigen::VectorXd& betas_at_mle,
                                   double max_gradient_norm = 1e-6);

// Upper (1 - alpha/2) quantile of the standard normal.
double NormalQuantile(double alpha);

ConfidenceBand ConfidenceIntervals(const AbilityEstimate& estimate,
                                   double alpha = 0.05);

std::vector<RankEntry> GlobalRanking(const AbilityEstimate& estimate,
                                     const ConfidenceBand& band);

}  // namespace arena::ranking

#endif  // ARENA_RANKING_BRADLEY_TERRY_H_
