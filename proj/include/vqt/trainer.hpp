// Copyright 2026 The vqt Authors
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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vqt/cost.hpp"
#include "vqt/problems.hpp"

namespace vqt {

struct TrainConfig {
  std::size_t iterations = 300;
  double lr0 = 0.1;
  double clip_threshold = 1.0;
  /// Cost whose gradient drives the update.
  CostVariant step_cost = CostVariant::C2Reg;
  /// Regularizers for C2Reg; also used for the logged c2 column.
  double alpha = 0.1;
  double beta = 0.1;
  double fd_eps = 1e-2;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  /// Starting parameters; drawn uniformly from [0, 2pi) when empty.
  std::vector<double> initial_theta;
  /// Redraw the start until C1 is defined and the regularized C2
  /// denominator Tr(rho O2') + alpha is at least alpha / 2. Runs that differ
  /// only in step_cost then share their starting point.
  bool require_admissible_start = true;
  std::size_t max_init_attempts = 1000;
  /// Step halvings tried when a C2 step would leave the admissible region
  /// (Tr(rho O2') + alpha >= alpha / 2 for C2Reg, Tr(rho O2') > 0 for C2Raw).
  int max_backtracks = 10;

  CostKind step_kind() const { return {step_cost, alpha, beta}; }
  CostKind logged_c2_kind() const { return CostKind::c2reg(alpha, beta); }
  /// Linear decay lr0 (1 - t / T).
  double learning_rate(std::size_t t) const;
  void validate() const;
};

struct IterationRecord {
  std::size_t iter = 0;
  std::uint64_t theta_hash = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  double grad_l2 = 0.0;    // before clipping
  double grad_linf = 0.0;  // before clipping
  double subspace_weight = 0.0;
  double metric = 0.0;
  bool clipped = false;
  int backtracks = 0;
};

struct TrainRecord {
  std::vector<IterationRecord> iterations;
  std::vector<double> initial_theta;
  std::vector<double> final_theta;
  double final_c1 = 0.0;
  double final_subspace_weight = 0.0;
  double final_metric = 0.0;
  double parameter_quality = 0.0;
  std::size_t init_attempts = 0;
  std::size_t evaluations = 0;
  bool aborted = false;
  std::string abort_reason;
};

/// Uniform [0, 2pi)^P from a seeded stream; portable across standard libraries.
std::vector<double> uniform_parameters(std::size_t count, std::mt19937_64& rng);

/// FNV-1a over the IEEE bytes of theta.
std::uint64_t hash_parameters(std::span<const double> theta);

/// Probability mass on the instance's solution indices (no renormalization).
double success_rate(const DensityMatrix& rho, const ProblemInstance& p);
/// Success rate for combinatorial instances, fidelity to the target otherwise.
double benchmark_metric(const DensityMatrix& rho, const ProblemInstance& p);
/// benchmark_metric of the noise-free state prepared with theta.
double parameter_quality(std::span<const double> theta, const AnsatzSpec& ansatz, const ProblemInstance& p);

/// Gradient descent on the configured stepping cost while logging C1.
TrainRecord train(const ProblemInstance& p, const AnsatzSpec& ansatz, const NoiseModel& nm, const TrainConfig& cfg);

/// One row per iteration: iter,c1,c2,grad_l2,grad_linf,subspace_weight,metric.
void write_train_csv(std::ostream& out, const TrainRecord& record);

struct SurveyOptions {
  CostKind baseline = CostKind::c1();
  CostKind candidate = CostKind::c2raw();
  double fd_eps = 1e-3;
  unsigned threads = 1;
};

struct SurveySample {
  double baseline_norm = 0.0;
  double candidate_norm = 0.0;
  bool applicable = true;
};

struct SurveyResult {
  std::vector<SurveySample> samples;
  std::size_t applicable = 0;
  /// Mean over applicable samples of candidate_norm / baseline_norm.
  double mean_ratio = 0.0;
  double median_ratio = 0.0;
  /// mean(candidate_norm) / mean(baseline_norm).
  double ratio_of_means = 0.0;
  /// Set when the candidate cost cannot be evaluated on this configuration.
  std::optional<std::string> inapplicable_reason;
};

/// Gradient 2-norms of two costs at uniformly random parameters.
SurveyResult gradient_norm_survey(const ProblemInstance& p, const AnsatzSpec& ansatz, const NoiseModel& nm,
                                  std::size_t samples, std::uint64_t seed, const SurveyOptions& options = {});

}  // namespace vqt
