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
#include <limits>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "vqt/cost.hpp"

namespace vqt {

/// Outcome of one numerical bound check.
struct BoundReport {
  std::string claim;
  /// Applicable instances that were tested.
  std::size_t instances = 0;
  /// Instances excluded by the claim's applicability filter.
  std::size_t inapplicable = 0;
  /// Individual inequalities evaluated (one instance may hold several).
  std::size_t checks = 0;
  std::size_t violations = 0;
  /// Smallest signed bound - observed over all checks; +inf when none ran.
  double min_slack = std::numeric_limits<double>::infinity();
  /// Per-instance minimum slack, in instance order.
  std::vector<double> slacks;
  std::map<std::string, double> parameters;
  std::string note;

  bool passed() const { return violations == 0; }
  /// Records one inequality with the given slack; negative slack beyond
  /// `tolerance` counts as a violation.
  void record(double slack, double tolerance = 0.0);
  /// Closes the current instance, storing its minimum slack.
  void close_instance();

 private:
  double instance_slack_ = std::numeric_limits<double>::infinity();
};

/// Claim ids accepted by the bounds-check command.
const std::vector<std::string>& claim_ids();

/// ||a^l||_2 <= q^l sqrt(2^n - 1) at every layer of random circuits.
BoundReport check_state_decay(const AnsatzSpec& ansatz, const NoiseModel& nm, std::size_t samples,
                              std::uint64_t seed);
/// Same over random circuits with 1..max_qubits qubits, 1..max_blocks blocks
/// and random noise rates in [0, 0.1].
BoundReport check_state_decay_random(std::size_t circuits, int max_qubits, int max_blocks, std::uint64_t seed);

/// ||g||_2 <= sqrt(2^{n+1} - 2) N ||eta||_inf q^{L+1} per parameter, with g
/// from central differences of rho at eps = 1e-4; also |dC0| <= ||w||_2 times
/// that bound.
BoundReport check_gradient_bound_c0(const AnsatzSpec& ansatz, const NoiseModel& nm, const PauliObservable& o,
                                    std::size_t samples, std::uint64_t seed);

/// |dC1| <= sqrt(2^{n+1} - 2) h q^{L+1} on samples with |Tr(O2 rho)| >= |k2|.
BoundReport check_gradient_bound_c1(const AnsatzSpec& ansatz, const NoiseModel& nm, const TruncatedObservables& t,
                                    std::size_t samples, std::uint64_t seed);

/// Smallest L0 >= 0 with q^L0 sqrt(2^n - 1) ||w2||_2 (1 + eps) <= |k2|, or -1.
int amplification_depth(const TruncatedObservables& t, double q, double epsilon);
/// The constant s multiplying |dC1| / q^{L+1}; +inf terms are dropped.
double amplification_constant(const TruncatedObservables& t, double q, int l0, double epsilon,
                              const GeneratorConstants& gc);

/// |dC2| >= s / q^{L+1} |dC1| - 1, applicable when L > 2 L0 + 1.
BoundReport check_amplification(const AnsatzSpec& ansatz, const NoiseModel& nm, const TruncatedObservables& t,
                                std::size_t samples, double epsilon, std::uint64_t seed);

/// Closed-form minimum of raw C2 at subspace weight m.
double singular_profile(double lambda, double k1, double k2, double m);
/// Grid m_j = k2 + (1 - k2) 10^{-6 j / (points - 1)}, from 1 down toward k2.
std::vector<double> singular_grid(double k2, std::size_t points);
/// Raw C2 on diagonal states with weight m on the minimizer and 1 - m outside
/// S matches the closed form within 1e-8; values decrease monotonically as m
/// approaches k2 when lambda_min < k1 / k2.
BoundReport check_singularity_profile(const TruncatedObservables& t, std::size_t points = 50);

/// States c |i*> + (components outside S) give C1 = lambda_min within 1e-10,
/// and moving weight onto a higher S state raises C1.
BoundReport check_solution_space(const TruncatedObservables& t, std::size_t samples, std::uint64_t seed);

/// |Tr(rho(theta + eps) - rho(theta - eps))| < 1e-12 for every parameter.
BoundReport check_traceless_derivative(const AnsatzSpec& ansatz, const NoiseModel& nm, std::size_t samples,
                                       std::uint64_t seed);

/// C1 from dense traces versus (k1 + a.w1) / (k2 + a.w2) on random states,
/// observables and subspaces, within 1e-10.
BoundReport check_dominating_term(std::size_t samples, int max_qubits, std::uint64_t seed);

/// Coefficient-formula C1 and raw C2 gradients versus central differences of
/// the cost at eps = 1e-4 (tolerance 1e-6) on random 2-qubit instances with
/// unit-norm observables. The observed order from eps = 1e-2 and 5e-3 is
/// stored as parameters "order_c1" and "order_c2".
BoundReport check_gradient_formulas(std::size_t samples, std::uint64_t seed);

/// Random density matrix of full rank (normalized G G^dagger).
DensityMatrix random_density_matrix(int num_qubits, std::mt19937_64& rng);

}  // namespace vqt
