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

#include "vqt/cost.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "vqt/errors.hpp"

namespace vqt {

void CostKind::validate() const {
  if (variant == CostVariant::C2Reg && !(alpha > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "regularized C2 needs alpha > 0");
  }
  if (alpha < 0.0 || beta < 0.0) throw Error(ErrorCode::InvalidArgument, "alpha and beta must be >= 0");
}

CostVariant parse_cost_variant(const std::string& text) {
  if (text == "c0") return CostVariant::C0;
  if (text == "c1") return CostVariant::C1;
  if (text == "c2raw") return CostVariant::C2Raw;
  if (text == "c2reg") return CostVariant::C2Reg;
  throw Error(ErrorCode::ConfigError, "cost must be one of c0, c1, c2raw, c2reg (got '" + text + "')");
}

std::string to_string(CostVariant v) {
  switch (v) {
    case CostVariant::C0: return "c0";
    case CostVariant::C1: return "c1";
    case CostVariant::C2Raw: return "c2raw";
    case CostVariant::C2Reg: return "c2reg";
  }
  return "?";
}

double eval_c0(const DensityMatrix& rho, const PauliObservable& o) {
  if (rho.num_qubits() != o.num_qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "state and observable act on different registers");
  }
  if (o.is_diagonal()) {
    const auto p = basis_probabilities(rho);
    double acc = 0.0;
    for (const auto& [s, c] : o.terms()) {
      std::uint64_t zmask = 0;
      for (int q = 0; q < s.num_qubits(); ++q) {
        if (s.letter(q) == 'Z') zmask |= 1ULL << q;
      }
      double e = 0.0;
      for (std::size_t x = 0; x < p.size(); ++x) e += (std::popcount(x & zmask) & 1) ? -p[x] : p[x];
      acc += c * e;
    }
    return acc;
  }
  const CMatrix m = materialize(o);
  return rho.matrix().cwiseProduct(m.transpose()).sum().real();
}

double trace_o1(const DensityMatrix& rho, const TruncatedObservables& t) {
  if (rho.num_qubits() != t.subspace.num_qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "state and observables act on different registers");
  }
  if (t.o1_diagonal) {
    double acc = 0.0;
    for (auto i : t.subspace.indices()) {
      const auto ii = static_cast<Eigen::Index>(i);
      acc += (*t.o1_diagonal)[i] * rho.matrix()(ii, ii).real();
    }
    return acc;
  }
  return rho.matrix().cwiseProduct(t.o1_dense.transpose()).sum().real();
}

double eval_c1(const DensityMatrix& rho, const TruncatedObservables& t) {
  const double weight = subspace_weight(rho, t.subspace);
  if (weight < kDenominatorFloor) {
    throw Error(ErrorCode::VanishingSubspaceWeight, "subspace weight " + std::to_string(weight));
  }
  return trace_o1(rho, t) / weight;
}

double eval_c2(const DensityMatrix& rho, const TruncatedObservables& t, const CostKind& kind) {
  const double num = trace_o1(rho, t) - t.k1;
  const double den = subspace_weight(rho, t.subspace) - t.k2;
  if (kind.variant == CostVariant::C2Reg) {
    kind.validate();
    return (num + kind.beta) / (den + kind.alpha);
  }
  if (std::abs(den) < kDenominatorFloor) {
    throw Error(ErrorCode::SingularDenominator, "Tr(rho O2') = " + std::to_string(den));
  }
  return num / den;
}

double eval_cost(const DensityMatrix& rho, const TruncatedObservables& t, const CostKind& kind) {
  switch (kind.variant) {
    case CostVariant::C0: return eval_c0(rho, t.observable);
    case CostVariant::C1: return eval_c1(rho, t);
    case CostVariant::C2Raw:
    case CostVariant::C2Reg: return eval_c2(rho, t, kind);
  }
  throw Error(ErrorCode::Internal, "unknown cost variant");
}

void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& f) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  {
    std::vector<std::jthread> workers;
    const auto worker_count = std::min<std::size_t>(threads, count);
    for (std::size_t w = 0; w < worker_count; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (i < error_index) {
              error_index = i;
              error = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

GradientResult grad_central_difference(const ScalarFunction& cost, std::span<const double> theta, double eps,
                                       unsigned threads) {
  if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "finite-difference step must be positive");
  const std::size_t p = theta.size();
  std::vector<double> values(2 * p);
  parallel_for(2 * p, threads, [&](std::size_t job) {
    const std::size_t k = job / 2;
    std::vector<double> shifted(theta.begin(), theta.end());
    shifted[k] += (job % 2 == 0) ? eps : -eps;
    try {
      values[job] = cost(shifted);
    } catch (const Error& e) {
      throw Error(e.code(), "gradient component " + std::to_string(k) + ": " + e.what());
    }
  });
  GradientResult out;
  out.grad.resize(p);
  for (std::size_t k = 0; k < p; ++k) out.grad[k] = (values[2 * k] - values[2 * k + 1]) / (2.0 * eps);
  out.evaluations = 2 * p;
  return out;
}

std::vector<double> clip_gradient(std::vector<double> g, double threshold) {
  if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "clip threshold must be positive");
  double inf_norm = 0.0;
  for (double v : g) inf_norm = std::max(inf_norm, std::abs(v));
  if (inf_norm > threshold) {
    const double scale = threshold / inf_norm;
    for (double& v : g) v *= scale;
  }
  return g;
}

void clip_gradient(GradientResult& g, double threshold) {
  double inf_norm = 0.0;
  for (double v : g.grad) inf_norm = std::max(inf_norm, std::abs(v));
  g.clipped = inf_norm > threshold;
  g.grad = clip_gradient(std::move(g.grad), threshold);
}

std::vector<double> state_derivative_coefficients(const BoundCircuit& c, const NoiseModel& nm,
                                                  const DensityMatrix& input, std::size_t k, double eps) {
  const DensityMatrix plus = execute_final(c.shifted(k, eps), nm, input);
  const DensityMatrix minus = execute_final(c.shifted(k, -eps), nm, input);
  const DensityMatrix diff((plus.matrix() - minus.matrix()) / (2.0 * eps));
  // The difference is traceless, so the identity slot carries no information.
  return pauli_coefficients(diff);
}

namespace {

void check_lengths(std::span<const double> a, std::span<const double> g, const TruncatedObservables& t) {
  if (a.size() != t.w1.size() || g.size() != t.w1.size()) {
    throw Error(ErrorCode::DimensionMismatch, "coefficient vectors do not match the observables");
  }
}

}  // namespace

double c1_derivative(std::span<const double> a, std::span<const double> g, const TruncatedObservables& t) {
  check_lengths(a, g, t);
  const double den = t.k2 + pauli_inner(a, t.w2);
  if (den < kDenominatorFloor) {
    throw Error(ErrorCode::VanishingSubspaceWeight, "Tr(rho O2) = " + std::to_string(den));
  }
  const double ratio = (t.k1 + pauli_inner(a, t.w1)) / den;
  return pauli_inner(g, t.w1) / den - ratio * pauli_inner(g, t.w2) / den;
}

double c2_derivative(std::span<const double> a, std::span<const double> g, const TruncatedObservables& t) {
  check_lengths(a, g, t);
  const double den = pauli_inner(a, t.w2);
  if (std::abs(den) < kDenominatorFloor) {
    throw Error(ErrorCode::SingularDenominator, "a . w2 = " + std::to_string(den));
  }
  const double ratio = pauli_inner(a, t.w1) / den;
  return pauli_inner(g, t.w1) / den - ratio * pauli_inner(g, t.w2) / den;
}

double analytic_grad_c1(const BoundCircuit& c, const NoiseModel& nm, const DensityMatrix& input,
                        const TruncatedObservables& t, std::size_t k, double eps) {
  const auto a = pauli_coefficients(execute_final(c, nm, input));
  return c1_derivative(a, state_derivative_coefficients(c, nm, input, k, eps), t);
}

double analytic_grad_c2(const BoundCircuit& c, const NoiseModel& nm, const DensityMatrix& input,
                        const TruncatedObservables& t, std::size_t k, double eps) {
  const auto a = pauli_coefficients(execute_final(c, nm, input));
  return c2_derivative(a, state_derivative_coefficients(c, nm, input, k, eps), t);
}

}  // namespace vqt
