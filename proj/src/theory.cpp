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

#include "vqt/theory.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vqt/errors.hpp"
#include "vqt/trainer.hpp"

namespace vqt {

void BoundReport::record(double slack, double tolerance) {
  ++checks;
  if (slack < -tolerance || std::isnan(slack)) ++violations;
  min_slack = std::min(min_slack, slack);
  instance_slack_ = std::min(instance_slack_, slack);
}

void BoundReport::close_instance() {
  ++instances;
  slacks.push_back(instance_slack_);
  instance_slack_ = std::numeric_limits<double>::infinity();
}

const std::vector<std::string>& claim_ids() {
  static const std::vector<std::string> ids = {
      "state-decay",         "gradient-bound-c0", "gradient-bound-c1", "amplification",      "dominating-term",
      "singularity-profile", "solution-space",    "traceless-derivative", "gradient-formulas",
  };
  return ids;
}

namespace {

double norm2(std::span<const double> v) { return std::sqrt(pauli_inner(v, v)); }

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t count) {
  return static_cast<std::size_t>(uniform01(rng) * static_cast<double>(count)) % count;
}

NoiseModel random_noise(std::mt19937_64& rng) {
  return {0.1 * uniform01(rng), 0.1 * uniform01(rng), 0.1 * uniform01(rng)};
}

Complex gaussian(std::mt19937_64& rng) {
  // Box-Muller on our own uniforms keeps draws identical across standard libraries.
  const double u1 = 1.0 - uniform01(rng), u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(2.0 * std::numbers::pi * u2), r * std::sin(2.0 * std::numbers::pi * u2)};
}

CMatrix random_hermitian(int n, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << n;
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = gaussian(rng);
  return (g + g.adjoint()) / 2.0;
}

std::vector<BasisIndex> random_subset(int n, std::mt19937_64& rng, bool proper) {
  const BasisIndex d = BasisIndex{1} << n;
  for (;;) {
    std::vector<BasisIndex> idx;
    for (BasisIndex i = 0; i < d; ++i)
      if (rng() & 1) idx.push_back(i);
    if (!idx.empty() && (!proper || idx.size() < d)) return idx;
  }
}

double lemma_gradient_bound(int n, int blocks, double q, const GeneratorConstants& gc) {
  return std::sqrt(std::ldexp(1.0, n + 1) - 2.0) * gc.nonzero_terms * gc.max_coefficient * std::pow(q, blocks + 1);
}

std::vector<double> theta_sample(const AnsatzSpec& ansatz, std::mt19937_64& rng) {
  return uniform_parameters(ansatz.parameter_count(), rng);
}

}  // namespace

DensityMatrix random_density_matrix(int num_qubits, std::mt19937_64& rng) {
  const Eigen::Index d = Eigen::Index{1} << num_qubits;
  CMatrix g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = gaussian(rng);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

BoundReport check_state_decay(const AnsatzSpec& ansatz, const NoiseModel& nm, std::size_t samples,
                              std::uint64_t seed) {
  nm.validate();
  BoundReport r;
  r.claim = "state-decay";
  const int n = ansatz.num_qubits();
  const double q = noise_strength(nm);
  r.parameters = {{"q", q}, {"n", n}, {"L", ansatz.blocks()}};
  std::mt19937_64 rng(seed);
  const DensityMatrix input = initial_state(ansatz);
  const double root = std::sqrt(std::ldexp(1.0, n) - 1.0);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto run = execute_noisy(BoundCircuit(ansatz, theta_sample(ansatz, rng)), nm, input);
    for (std::size_t l = 0; l < run.trajectory.size(); ++l) {
      const double bound = std::pow(q, static_cast<double>(l + 1)) * root;
      r.record(bound - norm2(pauli_coefficients(run.trajectory[l])), 1e-9);
    }
    r.close_instance();
  }
  return r;
}

BoundReport check_state_decay_random(std::size_t circuits, int max_qubits, int max_blocks, std::uint64_t seed) {
  BoundReport r;
  r.claim = "state-decay";
  r.parameters = {{"max_qubits", max_qubits}, {"max_blocks", max_blocks}};
  std::mt19937_64 rng(seed);
  for (std::size_t c = 0; c < circuits; ++c) {
    const int n = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(max_qubits)));
    const int blocks = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(max_blocks)));
    const NoiseModel nm = random_noise(rng);
    const BoundReport one = check_state_decay(build_hea(n, blocks), nm, 1, rng());
    r.checks += one.checks;
    r.violations += one.violations;
    r.min_slack = std::min(r.min_slack, one.min_slack);
    r.slacks.push_back(one.min_slack);
    ++r.instances;
  }
  return r;
}

BoundReport check_gradient_bound_c0(const AnsatzSpec& ansatz, const NoiseModel& nm, const PauliObservable& o,
                                    std::size_t samples, std::uint64_t seed) {
  nm.validate();
  if (o.num_qubits() != ansatz.num_qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "observable and ansatz act on different registers");
  }
  BoundReport r;
  r.claim = "gradient-bound-c0";
  const GeneratorConstants gc = generator_constants(ansatz);
  const double q = noise_strength(nm);
  const double bound = lemma_gradient_bound(ansatz.num_qubits(), ansatz.blocks(), q, gc);
  const auto w = o.coefficient_vector(false);
  const double wnorm = norm2(w);
  r.parameters = {{"q", q},
                  {"L", ansatz.blocks()},
                  {"N_lm", gc.nonzero_terms},
                  {"eta_inf", gc.max_coefficient},
                  {"bound", bound}};
  std::mt19937_64 rng(seed);
  const DensityMatrix input = initial_state(ansatz);
  for (std::size_t s = 0; s < samples; ++s) {
    const BoundCircuit c(ansatz, theta_sample(ansatz, rng));
    for (std::size_t k = 0; k < ansatz.parameter_count(); ++k) {
      const auto g = state_derivative_coefficients(c, nm, input, k, 1e-4);
      const double gnorm = norm2(g);
      r.record(bound - gnorm, 1e-9);
      r.record(wnorm * bound - std::abs(pauli_inner(g, w)), 1e-9);
    }
    r.close_instance();
  }
  return r;
}

BoundReport check_gradient_bound_c1(const AnsatzSpec& ansatz, const NoiseModel& nm, const TruncatedObservables& t,
                                    std::size_t samples, std::uint64_t seed) {
  nm.validate();
  BoundReport r;
  r.claim = "gradient-bound-c1";
  const GeneratorConstants gc = generator_constants(ansatz);
  const double q = noise_strength(nm);
  const double h = (norm2(t.w1) / t.k2 + t.lambda_abs_max * norm2(t.w2) / (t.k2 * t.k2)) * gc.nonzero_terms *
                   gc.max_coefficient;
  const double bound = std::sqrt(std::ldexp(1.0, ansatz.num_qubits() + 1) - 2.0) * h *
                       std::pow(q, ansatz.blocks() + 1);
  r.parameters = {{"q", q}, {"L", ansatz.blocks()}, {"h", h}, {"bound", bound}};
  std::mt19937_64 rng(seed);
  const DensityMatrix input = initial_state(ansatz);
  for (std::size_t s = 0; s < samples; ++s) {
    const BoundCircuit c(ansatz, theta_sample(ansatz, rng));
    const DensityMatrix rho = execute_final(c, nm, input);
    if (std::abs(subspace_weight(rho, t.subspace)) < std::abs(t.k2)) {
      ++r.inapplicable;
      continue;
    }
    const auto a = pauli_coefficients(rho);
    for (std::size_t k = 0; k < ansatz.parameter_count(); ++k) {
      const double d1 = c1_derivative(a, state_derivative_coefficients(c, nm, input, k, 1e-4), t);
      r.record(bound - std::abs(d1), 1e-9);
    }
    r.close_instance();
  }
  return r;
}

int amplification_depth(const TruncatedObservables& t, double q, double epsilon) {
  const double lhs = std::sqrt(std::ldexp(1.0, t.subspace.num_qubits()) - 1.0) * norm2(t.w2) * (1.0 + epsilon);
  const double rhs = std::abs(t.k2);
  if (lhs <= rhs) return 0;
  if (!(q < 1.0) || q <= 0.0) return -1;
  int l0 = static_cast<int>(std::ceil(std::log(rhs / lhs) / std::log(q)));
  // Guard the floating-point ceiling in both directions.
  while (l0 > 0 && std::pow(q, l0 - 1) * lhs <= rhs) --l0;
  while (std::pow(q, l0) * lhs > rhs) ++l0;
  return l0;
}

double amplification_constant(const TruncatedObservables& t, double q, int l0, double epsilon,
                              const GeneratorConstants& gc) {
  const int n = t.subspace.num_qubits();
  std::vector<double> cross(t.w1.size());
  for (std::size_t i = 0; i < cross.size(); ++i) cross[i] = t.w1[i] * t.k2 - t.w2[i] * t.k1;
  const double cross_norm = norm2(cross);
  const double first = cross_norm > 0.0
                           ? epsilon * epsilon * t.k2 * t.k2 /
                                 ((1.0 + epsilon) * (1.0 + epsilon) * std::sqrt(std::ldexp(1.0, n + 1) - 2.0) *
                                  gc.nonzero_terms * gc.max_coefficient * cross_norm)
                           : std::numeric_limits<double>::infinity();
  const double w2n = norm2(t.w2);
  double second = std::numeric_limits<double>::infinity();
  if (w2n > 0.0) {
    const double base = std::abs(t.k2) / (std::pow(q, l0) * std::sqrt(std::ldexp(1.0, n) - 1.0) * w2n) -
                        std::pow(q, l0 + 1);
    second = base * base;
  }
  return std::min(first, second);
}

BoundReport check_amplification(const AnsatzSpec& ansatz, const NoiseModel& nm, const TruncatedObservables& t,
                                std::size_t samples, double epsilon, std::uint64_t seed) {
  nm.validate();
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  BoundReport r;
  r.claim = "amplification";
  const GeneratorConstants gc = generator_constants(ansatz);
  const double q = noise_strength(nm);
  const int blocks = ansatz.blocks();
  const int l0 = amplification_depth(t, q, epsilon);
  r.parameters = {{"q", q}, {"L", blocks}, {"L0", l0}, {"epsilon", epsilon}};
  if (l0 < 0 || blocks <= 2 * l0 + 1) {
    r.inapplicable = samples;
    r.note = l0 < 0 ? "no finite L0 at this noise level" : "depth must exceed 2 L0 + 1";
    return r;
  }
  const double s = amplification_constant(t, q, l0, epsilon, gc);
  const double scale = s / std::pow(q, blocks + 1);
  r.parameters["s"] = s;
  std::mt19937_64 rng(seed);
  const DensityMatrix input = initial_state(ansatz);
  for (std::size_t i = 0; i < samples; ++i) {
    const BoundCircuit c(ansatz, theta_sample(ansatz, rng));
    const auto a = pauli_coefficients(execute_final(c, nm, input));
    if (std::abs(pauli_inner(a, t.w2)) < kDenominatorFloor) {
      ++r.inapplicable;
      continue;
    }
    for (std::size_t k = 0; k < ansatz.parameter_count(); ++k) {
      const auto g = state_derivative_coefficients(c, nm, input, k, 1e-4);
      const double d1 = c1_derivative(a, g, t);
      const double d2 = c2_derivative(a, g, t);
      r.record(std::abs(d2) - (scale * std::abs(d1) - 1.0), 1e-9);
    }
    r.close_instance();
  }
  return r;
}

double singular_profile(double lambda, double k1, double k2, double m) {
  return lambda + (lambda - k1 / k2) * k2 / (m - k2);
}

std::vector<double> singular_grid(double k2, std::size_t points) {
  if (points < 2) throw Error(ErrorCode::InvalidArgument, "the grid needs at least two points");
  std::vector<double> m(points);
  for (std::size_t j = 0; j < points; ++j) {
    m[j] = k2 + (1.0 - k2) * std::pow(10.0, -6.0 * static_cast<double>(j) / static_cast<double>(points - 1));
  }
  return m;
}

BoundReport check_singularity_profile(const TruncatedObservables& t, std::size_t points) {
  BoundReport r;
  r.claim = "singularity-profile";
  const int n = t.subspace.num_qubits();
  const BasisIndex dim = BasisIndex{1} << n;
  BasisIndex outside = dim;
  for (BasisIndex i = 0; i < dim && outside == dim; ++i)
    if (!t.subspace.contains(i)) outside = i;
  if (!t.argmin_index || outside == dim) {
    r.inapplicable = points;
    r.note = !t.argmin_index ? "needs an observable diagonal in the computational basis"
                             : "the subspace covers every basis state";
    return r;
  }
  const double lambda = t.lambda_min;
  r.parameters = {{"k1", t.k1}, {"k2", t.k2}, {"lambda_min", lambda}};
  const bool unbounded = lambda < t.k1 / t.k2;
  double previous = std::numeric_limits<double>::infinity();
  double last = 0.0;
  for (double m : singular_grid(t.k2, points)) {
    std::vector<double> p(dim, 0.0);
    p[*t.argmin_index] = m;
    p[outside] = 1.0 - m;
    const double c2 = eval_c2(DensityMatrix::from_diagonal(p), t, CostKind::c2raw());
    r.record(1e-8 - std::abs(c2 - singular_profile(lambda, t.k1, t.k2, m)));
    if (unbounded) r.record(previous - c2);
    previous = c2;
    last = c2;
    r.close_instance();
  }
  r.parameters["c2_nearest"] = last;
  return r;
}

BoundReport check_solution_space(const TruncatedObservables& t, std::size_t samples, std::uint64_t seed) {
  BoundReport r;
  r.claim = "solution-space";
  const int n = t.subspace.num_qubits();
  const BasisIndex dim = BasisIndex{1} << n;
  r.parameters = {{"lambda_min", t.lambda_min}};
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    CVector psi = CVector::Zero(static_cast<Eigen::Index>(dim));
    for (BasisIndex i = 0; i < dim; ++i)
      if (!t.subspace.contains(i)) psi(static_cast<Eigen::Index>(i)) = gaussian(rng);
    Complex c = gaussian(rng);
    psi += c * t.ground_state;
    psi.normalize();
    if (std::norm(c) / psi.squaredNorm() < 1e-6 || std::abs(t.ground_state.dot(psi)) < 1e-3) {
      ++r.inapplicable;
      continue;
    }
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    r.record(1e-10 - std::abs(eval_c1(rho, t) - t.lambda_min));
    if (t.o1_diagonal) {
      for (auto j : t.subspace.indices()) {
        if ((*t.o1_diagonal)[j] <= t.lambda_min + 1e-12) continue;
        CMatrix mixed = 0.9 * rho.matrix();
        mixed(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) += 0.1;
        // Strict increase: a zero gap counts as a violation.
        r.record(eval_c1(DensityMatrix(std::move(mixed)), t) - t.lambda_min, -1e-14);
      }
    }
    r.close_instance();
  }
  return r;
}

BoundReport check_traceless_derivative(const AnsatzSpec& ansatz, const NoiseModel& nm, std::size_t samples,
                                       std::uint64_t seed) {
  nm.validate();
  BoundReport r;
  r.claim = "traceless-derivative";
  const double eps = 1e-4;
  r.parameters = {{"n", ansatz.num_qubits()}, {"L", ansatz.blocks()}, {"eps", eps}, {"q", noise_strength(nm)}};
  std::mt19937_64 rng(seed);
  const DensityMatrix input = initial_state(ansatz);
  double worst = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const BoundCircuit c(ansatz, theta_sample(ansatz, rng));
    for (std::size_t k = 0; k < ansatz.parameter_count(); ++k) {
      const DensityMatrix plus = execute_final(c.shifted(k, eps), nm, input);
      const DensityMatrix minus = execute_final(c.shifted(k, -eps), nm, input);
      const double d = std::abs((plus.matrix() - minus.matrix()).trace());
      worst = std::max(worst, d);
      r.record(1e-12 - d);
    }
    r.close_instance();
  }
  r.parameters["max_abs_trace"] = worst;
  return r;
}

BoundReport check_dominating_term(std::size_t samples, int max_qubits, std::uint64_t seed) {
  BoundReport r;
  r.claim = "dominating-term";
  r.parameters = {{"max_qubits", max_qubits}};
  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const int n = 1 + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(max_qubits)));
    const DensityMatrix rho = random_density_matrix(n, rng);
    const CMatrix o = random_hermitian(n, rng);
    const auto idx = random_subset(n, rng, false);
    const TruncatedObservables t = build_truncated_observables(o, Subspace(n, idx, "random"));

    CMatrix proj = CMatrix::Zero(o.rows(), o.cols());
    for (auto i : idx) proj(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    const CMatrix o1 = proj * o * proj;
    const double dense = (rho.matrix() * o1).trace().real() / (rho.matrix() * proj).trace().real();

    const auto a = pauli_coefficients(rho);
    const double coeff = (t.k1 + pauli_inner(a, t.w1)) / (t.k2 + pauli_inner(a, t.w2));
    r.record(1e-10 - std::abs(dense - coeff));
    r.close_instance();
  }
  return r;
}

BoundReport check_gradient_formulas(std::size_t samples, std::uint64_t seed) {
  BoundReport r;
  r.claim = "gradient-formulas";
  const double eps = 1e-4, coarse = 1e-2, fine = 5e-3;
  r.parameters = {{"eps", eps}};
  std::mt19937_64 rng(seed);
  double coarse_err[2] = {0.0, 0.0}, fine_err[2] = {0.0, 0.0};
  while (r.instances < samples) {
    const int blocks = 1 + static_cast<int>(uniform_index(rng, 4));
    const AnsatzSpec ansatz = build_hea(2, blocks);
    const NoiseModel nm = random_noise(rng);
    // Unit operator norm, so the absolute tolerance means the same thing on
    // every instance.
    CMatrix o = random_hermitian(2, rng);
    o /= Eigen::SelfAdjointEigenSolver<CMatrix>(o).eigenvalues().cwiseAbs().maxCoeff();
    const TruncatedObservables t =
        build_truncated_observables(o, Subspace(2, random_subset(2, rng, true), "random"));
    const BoundCircuit c(ansatz, theta_sample(ansatz, rng));
    const DensityMatrix input = initial_state(ansatz);
    const DensityMatrix rho = execute_final(c, nm, input);
    const double weight = subspace_weight(rho, t.subspace);
    if (weight < 0.05 || std::abs(weight - t.k2) < 0.05) {
      ++r.inapplicable;
      continue;
    }
    const auto a = pauli_coefficients(rho);
    const CostKind kinds[2] = {CostKind::c1(), CostKind::c2raw()};
    for (std::size_t k = 0; k < ansatz.parameter_count(); ++k) {
      const auto g = state_derivative_coefficients(c, nm, input, k, 1e-4);
      const double exact[2] = {c1_derivative(a, g, t), c2_derivative(a, g, t)};
      for (int v = 0; v < 2; ++v) {
        const auto fd = [&](double h) {
          const double up = eval_cost(execute_final(c.shifted(k, h), nm, input), t, kinds[v]);
          const double down = eval_cost(execute_final(c.shifted(k, -h), nm, input), t, kinds[v]);
          return (up - down) / (2.0 * h);
        };
        r.record(1e-6 - std::abs(fd(eps) - exact[v]));
        coarse_err[v] += std::abs(fd(coarse) - exact[v]);
        fine_err[v] += std::abs(fd(fine) - exact[v]);
      }
    }
    r.close_instance();
  }
  const char* names[2] = {"order_c1", "order_c2"};
  for (int v = 0; v < 2; ++v) {
    const double order = std::log2(coarse_err[v] / fine_err[v]);
    r.parameters[names[v]] = order;
    r.record(0.2 - std::abs(order - 2.0));
  }
  return r;
}

}  // namespace vqt
