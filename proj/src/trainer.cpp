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

#include "vqt/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <ostream>

#include "vqt/errors.hpp"

namespace vqt {

double TrainConfig::learning_rate(std::size_t t) const {
  return lr0 * (1.0 - static_cast<double>(t) / static_cast<double>(iterations));
}

void TrainConfig::validate() const {
  if (iterations < 1) throw Error(ErrorCode::ConfigError, "iterations must be >= 1");
  if (!(lr0 >= 0.0)) throw Error(ErrorCode::ConfigError, "lr0 must be >= 0");
  if (!(clip_threshold > 0.0)) throw Error(ErrorCode::ConfigError, "clip_threshold must be > 0");
  if (!(fd_eps > 0.0)) throw Error(ErrorCode::ConfigError, "fd_eps must be > 0");
  if (!(alpha > 0.0) || beta < 0.0) throw Error(ErrorCode::ConfigError, "need alpha > 0 and beta >= 0");
}

std::vector<double> uniform_parameters(std::size_t count, std::mt19937_64& rng) {
  std::vector<double> theta(count);
  for (double& t : theta) t = static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
  return theta;
}

std::uint64_t hash_parameters(std::span<const double> theta) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : theta) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof v);
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

double success_rate(const DensityMatrix& rho, const ProblemInstance& p) {
  if (p.kind != BenchmarkKind::Qaoa) {
    throw Error(ErrorCode::WrongBenchmarkKind, "success rate needs a combinatorial instance");
  }
  if (rho.num_qubits() != p.num_qubits) throw Error(ErrorCode::DimensionMismatch, "state size differs from instance");
  const auto probs = basis_probabilities(rho);
  double acc = 0.0;
  for (auto i : p.solutions) acc += probs[i];
  return acc;
}

double benchmark_metric(const DensityMatrix& rho, const ProblemInstance& p) {
  return p.kind == BenchmarkKind::Qaoa ? success_rate(rho, p) : fidelity_to_pure(rho, p.target_state);
}

double parameter_quality(std::span<const double> theta, const AnsatzSpec& ansatz, const ProblemInstance& p) {
  const BoundCircuit c(ansatz, std::vector<double>(theta.begin(), theta.end()));
  return benchmark_metric(execute_noiseless(c, initial_state(ansatz)), p);
}

namespace {

double l2_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc += x * x;
  return std::sqrt(acc);
}

double linf_norm(std::span<const double> v) {
  double acc = 0.0;
  for (double x : v) acc = std::max(acc, std::abs(x));
  return acc;
}

void check_shapes(const ProblemInstance& p, const AnsatzSpec& ansatz) {
  if (ansatz.num_qubits() != p.num_qubits) {
    throw Error(ErrorCode::DimensionMismatch, "ansatz has " + std::to_string(ansatz.num_qubits()) +
                                                  " qubits, instance has " + std::to_string(p.num_qubits));
  }
}

}  // namespace

TrainRecord train(const ProblemInstance& p, const AnsatzSpec& ansatz, const NoiseModel& nm, const TrainConfig& cfg) {
  cfg.validate();
  nm.validate();
  check_shapes(p, ansatz);
  const TruncatedObservables t = build_truncated_observables(p.observable, p.subspace);
  const DensityMatrix input = initial_state(ansatz);
  const CostKind step_kind = cfg.step_kind();
  const CostKind c2_kind = cfg.logged_c2_kind();
  const std::size_t num_params = ansatz.parameter_count();

  const auto run = [&](std::span<const double> theta) {
    return execute_final(BoundCircuit(ansatz, std::vector<double>(theta.begin(), theta.end())), nm, input);
  };
  const auto o2p_trace = [&](const DensityMatrix& rho) { return subspace_weight(rho, t.subspace) - t.k2; };
  const auto admissible = [&](const DensityMatrix& rho, CostVariant v) {
    if (v == CostVariant::C2Reg) return o2p_trace(rho) + cfg.alpha >= 0.5 * cfg.alpha;
    if (v == CostVariant::C2Raw) return o2p_trace(rho) > kDenominatorFloor;
    return true;
  };

  TrainRecord record;
  if (!cfg.initial_theta.empty()) {
    if (cfg.initial_theta.size() != num_params) {
      throw Error(ErrorCode::DimensionMismatch, "initial_theta has the wrong length");
    }
    record.initial_theta = cfg.initial_theta;
    record.init_attempts = 1;
  } else {
    std::mt19937_64 rng(cfg.seed);
    for (std::size_t attempt = 1;; ++attempt) {
      if (attempt > cfg.max_init_attempts) {
        throw Error(ErrorCode::VanishingSubspaceWeight,
                    "no admissible starting point after " + std::to_string(cfg.max_init_attempts) +
                        " draws");
      }
      auto theta = uniform_parameters(num_params, rng);
      const DensityMatrix rho = run(theta);
      const bool defined = subspace_weight(rho, t.subspace) > kDenominatorFloor;
      if (defined && (!cfg.require_admissible_start || admissible(rho, CostVariant::C2Reg))) {
        record.initial_theta = std::move(theta);
        record.init_attempts = attempt;
        break;
      }
    }
  }

  const ScalarFunction step_cost = [&](std::span<const double> theta) {
    return eval_cost(run(theta), t, step_kind);
  };

  std::vector<double> theta = record.initial_theta;
  record.iterations.reserve(cfg.iterations);
  try {
    for (std::size_t it = 0; it < cfg.iterations; ++it) {
      const DensityMatrix rho = run(theta);
      ++record.evaluations;
      IterationRecord row;
      row.iter = it;
      row.theta_hash = hash_parameters(theta);
      row.subspace_weight = subspace_weight(rho, t.subspace);
      row.c1 = eval_c1(rho, t);
      row.c2 = eval_c2(rho, t, c2_kind);
      row.metric = benchmark_metric(rho, p);

      GradientResult g = grad_central_difference(step_cost, theta, cfg.fd_eps, cfg.threads);
      record.evaluations += g.evaluations;
      row.grad_l2 = l2_norm(g.grad);
      row.grad_linf = linf_norm(g.grad);
      clip_gradient(g, cfg.clip_threshold);
      row.clipped = g.clipped;

      const double lr = cfg.learning_rate(it);
      std::vector<double> candidate(theta.size());
      double scale = 1.0;
      bool accepted = false;
      for (int attempt = 0; attempt <= cfg.max_backtracks; ++attempt) {
        for (std::size_t k = 0; k < theta.size(); ++k) candidate[k] = theta[k] - scale * lr * g.grad[k];
        if (!step_kind.is_c2()) {
          accepted = true;
          break;
        }
        const DensityMatrix next = run(candidate);
        ++record.evaluations;
        if (admissible(next, step_kind.variant)) {
          accepted = true;
          break;
        }
        ++row.backtracks;
        scale *= 0.5;
      }
      if (accepted) theta = candidate;
      record.iterations.push_back(row);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::VanishingSubspaceWeight && e.code() != ErrorCode::SingularDenominator) throw;
    record.aborted = true;
    record.abort_reason = e.what();
  }

  record.final_theta = theta;
  const DensityMatrix final_rho = run(theta);
  record.final_subspace_weight = subspace_weight(final_rho, t.subspace);
  record.final_c1 = record.final_subspace_weight > kDenominatorFloor ? eval_c1(final_rho, t) : std::nan("");
  record.final_metric = benchmark_metric(final_rho, p);
  record.parameter_quality = parameter_quality(theta, ansatz, p);
  return record;
}

void write_train_csv(std::ostream& out, const TrainRecord& record) {
  out << "iter,c1,c2,grad_l2,grad_linf,subspace_weight,metric\n";
  char buf[256];
  for (const auto& r : record.iterations) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", r.iter, r.c1, r.c2, r.grad_l2,
                  r.grad_linf, r.subspace_weight, r.metric);
    out << buf;
  }
}

SurveyResult gradient_norm_survey(const ProblemInstance& p, const AnsatzSpec& ansatz, const NoiseModel& nm,
                                  std::size_t samples, std::uint64_t seed, const SurveyOptions& options) {
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "survey needs at least one sample");
  nm.validate();
  check_shapes(p, ansatz);
  const TruncatedObservables t = build_truncated_observables(p.observable, p.subspace);
  SurveyResult result;
  const auto o2p_vanishes = [&] {
    return std::all_of(t.w2.begin(), t.w2.end(), [](double w) { return w == 0.0; });
  };
  for (const CostKind* kind : {&options.baseline, &options.candidate}) {
    if (kind->variant == CostVariant::C2Raw && o2p_vanishes()) {
      result.inapplicable_reason = "the subspace is the full space, so O2' = 0 and raw C2 is undefined";
      return result;
    }
  }
  const DensityMatrix input = initial_state(ansatz);
  const auto make_cost = [&](const CostKind& kind) -> ScalarFunction {
    return [&, kind](std::span<const double> theta) {
      return eval_cost(execute_final(BoundCircuit(ansatz, std::vector<double>(theta.begin(), theta.end())), nm, input),
                       t, kind);
    };
  };
  const ScalarFunction baseline = make_cost(options.baseline);
  const ScalarFunction candidate = make_cost(options.candidate);
  std::mt19937_64 rng(seed);
  std::vector<double> ratios;
  double sum_baseline = 0.0, sum_candidate = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const auto theta = uniform_parameters(ansatz.parameter_count(), rng);
    SurveySample sample;
    try {
      sample.baseline_norm = l2_norm(grad_central_difference(baseline, theta, options.fd_eps, options.threads).grad);
      sample.candidate_norm = l2_norm(grad_central_difference(candidate, theta, options.fd_eps, options.threads).grad);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::VanishingSubspaceWeight && e.code() != ErrorCode::SingularDenominator) throw;
      sample.applicable = false;
    }
    if (sample.applicable && sample.baseline_norm > 0.0) {
      ++result.applicable;
      ratios.push_back(sample.candidate_norm / sample.baseline_norm);
      sum_baseline += sample.baseline_norm;
      sum_candidate += sample.candidate_norm;
    } else {
      sample.applicable = false;
    }
    result.samples.push_back(sample);
  }
  if (!ratios.empty()) {
    double total = 0.0;
    for (double r : ratios) total += r;
    result.mean_ratio = total / static_cast<double>(ratios.size());
    std::sort(ratios.begin(), ratios.end());
    const std::size_t mid = ratios.size() / 2;
    result.median_ratio = ratios.size() % 2 ? ratios[mid] : 0.5 * (ratios[mid - 1] + ratios[mid]);
    result.ratio_of_means = sum_candidate / sum_baseline;
  }
  return result;
}

}  // namespace vqt
