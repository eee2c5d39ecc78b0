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

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "vqt/ansatz.hpp"
#include "vqt/subspace.hpp"

namespace vqt {

/// Denominators below this magnitude are treated as singular.
inline constexpr double kDenominatorFloor = 1e-12;

enum class CostVariant { C0, C1, C2Raw, C2Reg };

struct CostKind {
  CostVariant variant = CostVariant::C2Reg;
  double alpha = 0.1;  // added to the C2 denominator
  double beta = 0.1;   // added to the C2 numerator

  static CostKind c0() { return {CostVariant::C0, 0.0, 0.0}; }
  static CostKind c1() { return {CostVariant::C1, 0.0, 0.0}; }
  static CostKind c2raw() { return {CostVariant::C2Raw, 0.0, 0.0}; }
  static CostKind c2reg(double alpha = 0.1, double beta = 0.1) { return {CostVariant::C2Reg, alpha, beta}; }

  void validate() const;
  bool is_c2() const { return variant == CostVariant::C2Raw || variant == CostVariant::C2Reg; }
};

/// Accepts c0, c1, c2raw, c2reg.
CostVariant parse_cost_variant(const std::string& text);
std::string to_string(CostVariant v);

/// Tr(rho O)
double eval_c0(const DensityMatrix& rho, const PauliObservable& o);
/// Tr(rho O1)
double trace_o1(const DensityMatrix& rho, const TruncatedObservables& t);
/// Tr(rho O1) / Tr(rho O2); throws VanishingSubspaceWeight.
double eval_c1(const DensityMatrix& rho, const TruncatedObservables& t);
/// Raw: Tr(rho O1') / Tr(rho O2'), throws SingularDenominator.
/// Regularized: (Tr(rho O1') + beta) / (Tr(rho O2') + alpha).
double eval_c2(const DensityMatrix& rho, const TruncatedObservables& t, const CostKind& kind);
double eval_cost(const DensityMatrix& rho, const TruncatedObservables& t, const CostKind& kind);

struct GradientResult {
  std::vector<double> grad;
  std::size_t evaluations = 0;
  bool clipped = false;
};

using ScalarFunction = std::function<double(std::span<const double>)>;

/// Central differences (C(theta + eps e_k) - C(theta - eps e_k)) / (2 eps).
/// Evaluations run on up to `threads` workers; results are independent of
/// the thread count. A failing component is rethrown with its index.
GradientResult grad_central_difference(const ScalarFunction& cost, std::span<const double> theta, double eps,
                                       unsigned threads = 1);

/// If ||g||_inf exceeds threshold, rescales g to have ||g||_inf == threshold.
std::vector<double> clip_gradient(std::vector<double> g, double threshold);
/// Same, recording whether clipping happened.
void clip_gradient(GradientResult& g, double threshold);

/// Non-identity Pauli coefficients of d rho_L / d theta_k, by central
/// differences on the output state.
std::vector<double> state_derivative_coefficients(const BoundCircuit& c, const NoiseModel& nm,
                                                  const DensityMatrix& input, std::size_t k, double eps = 1e-4);

/// Closed-form truncated-cost derivatives from Pauli coefficients a (state)
/// and g (state derivative).
double c1_derivative(std::span<const double> a, std::span<const double> g, const TruncatedObservables& t);
double c2_derivative(std::span<const double> a, std::span<const double> g, const TruncatedObservables& t);

/// d C1 / d theta_k and raw d C2 / d theta_k from the coefficient formulas,
/// with g from state_derivative_coefficients.
double analytic_grad_c1(const BoundCircuit& c, const NoiseModel& nm, const DensityMatrix& input,
                        const TruncatedObservables& t, std::size_t k, double eps = 1e-4);
double analytic_grad_c2(const BoundCircuit& c, const NoiseModel& nm, const DensityMatrix& input,
                        const TruncatedObservables& t, std::size_t k, double eps = 1e-4);

/// Runs f(0) ... f(count - 1) on up to `threads` workers.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f);

}  // namespace vqt
