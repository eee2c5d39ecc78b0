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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "../oracle.hpp"
#include "vqt/cost.hpp"
#include "vqt/errors.hpp"

using namespace vqt;

namespace {

TruncatedObservables example_observables() {
  const std::vector<double> diag = {0.8, 0.0, 0.0, 0.2};
  return build_truncated_observables(decompose_diagonal(diag), Subspace(2, {0, 3}, "example"));
}

DensityMatrix example_state() { return DensityMatrix::from_diagonal(std::vector<double>{0.7, 0.04, 0.0, 0.26}); }

}  // namespace

TEST_CASE("C0 examples") {
  const std::vector<double> diag = {0.8, 0.0, 0.0, 0.2};
  const auto o = decompose_diagonal(diag);
  CHECK(eval_c0(DensityMatrix::basis_state(2, 3), o) == doctest::Approx(0.2));
  CHECK(eval_c0(DensityMatrix::maximally_mixed(2), o) == doctest::Approx(0.25));
  CHECK(eval_c0(example_state(), o) == doctest::Approx(0.612));
  CHECK_THROWS_AS(eval_c0(DensityMatrix::maximally_mixed(3), o), Error);
}

TEST_CASE("C1 examples") {
  const auto t = example_observables();
  CHECK(eval_c1(example_state(), t) == doctest::Approx(0.6375).epsilon(1e-14));
  CHECK(eval_c1(DensityMatrix::basis_state(2, 3), t) == doctest::Approx(0.2));
  CHECK(eval_c1(DensityMatrix::maximally_mixed(2), t) == doctest::Approx(0.5));
  try {
    eval_c1(DensityMatrix::basis_state(2, 1), t);
    FAIL("expected VanishingSubspaceWeight");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::VanishingSubspaceWeight);
  }
}

TEST_CASE("C2 examples") {
  const auto t = example_observables();
  CHECK(eval_c2(example_state(), t, CostKind::c2raw()) == doctest::Approx(0.362 / 0.46).epsilon(1e-14));
  CHECK(eval_c2(example_state(), t, CostKind::c2raw()) == doctest::Approx(0.786957).epsilon(1e-6));
  const auto half = DensityMatrix::from_diagonal(std::vector<double>{0.5, 0.5, 0.0, 0.0});
  try {
    eval_c2(half, t, CostKind::c2raw());
    FAIL("expected SingularDenominator");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SingularDenominator);
  }
  CHECK(eval_c2(half, t, CostKind::c2reg(0.1, 0.0)) == doctest::Approx(1.5));
  CHECK_THROWS_AS(CostKind::c2reg(0.0, 0.1).validate(), Error);
  CHECK(parse_cost_variant("c2reg") == CostVariant::C2Reg);
  CHECK(to_string(CostVariant::C2Raw) == "c2raw");
}

TEST_CASE("C1 range and the coefficient identity on random states") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 3;
    const BasisIndex d = BasisIndex{1} << n;
    std::vector<BasisIndex> idx;
    for (BasisIndex i = 0; i < d; ++i)
      if (rng() & 1) idx.push_back(i);
    if (idx.empty()) idx.push_back(d - 1);
    const auto t = build_truncated_observables(oracle::random_hermitian(n, rng), Subspace(n, idx, "random"));
    const DensityMatrix rho(oracle::random_state(n, rng));
    const double c1 = eval_c1(rho, t);
    CHECK(c1 >= t.lambda_min - 1e-12);
    CHECK(c1 <= t.lambda_max + 1e-12);
    const auto a = pauli_coefficients(rho);
    const double via = (t.k1 + pauli_inner(a, t.w1)) / (t.k2 + pauli_inner(a, t.w2));
    CHECK(std::abs(c1 - via) < 1e-10);
  }
}

TEST_CASE("central differences") {
  const std::vector<double> theta = {1.0, -0.5};
  const auto constant = grad_central_difference([](std::span<const double>) { return 3.0; }, theta, 1e-3);
  CHECK(constant.grad == std::vector<double>{0.0, 0.0});
  CHECK(constant.evaluations == 4);
  for (double eps : {1e-1, 1e-3}) {
    const auto square =
        grad_central_difference([](std::span<const double> t) { return t[0] * t[0]; }, std::vector<double>{1.0}, eps);
    CHECK(square.grad[0] == doctest::Approx(2.0).epsilon(1e-12));
  }
  const auto threaded = grad_central_difference(
      [](std::span<const double> t) { return std::sin(t[0]) * t[1]; }, theta, 1e-4, 3);
  const auto serial =
      grad_central_difference([](std::span<const double> t) { return std::sin(t[0]) * t[1]; }, theta, 1e-4, 1);
  CHECK(threaded.grad == serial.grad);
  CHECK_THROWS_AS(grad_central_difference([](std::span<const double>) { return 0.0; }, theta, 0.0), Error);
}

TEST_CASE("clipping") {
  CHECK(clip_gradient({0.1, -0.2}, 1.0) == std::vector<double>{0.1, -0.2});
  CHECK(clip_gradient({3.0, -4.0}, 1.0) == std::vector<double>{0.75, -1.0});
  CHECK(clip_gradient({0.0, 0.0}, 1.0) == std::vector<double>{0.0, 0.0});
  GradientResult g{{5.0, 1.0, -2.0}, 6, false};
  const auto before = g.grad;
  clip_gradient(g, 0.5);
  CHECK(g.clipped);
  double dot = 0, n1 = 0, n2 = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    dot += before[i] * g.grad[i];
    n1 += before[i] * before[i];
    n2 += g.grad[i] * g.grad[i];
  }
  CHECK(std::abs(dot / std::sqrt(n1 * n2) - 1.0) < 1e-12);
}

TEST_CASE("analytic gradients agree with central differences") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  const auto spec = build_hea(2, 2);
  const NoiseModel nm = NoiseModel::uniform(0.02);
  const auto t = example_observables();
  const DensityMatrix input = initial_state(spec);
  // Draw until the raw C2 denominator is well away from zero.
  std::vector<double> theta(4);
  do {
    for (double& x : theta) x = u(rng);
  } while (std::abs(subspace_weight(execute_final(BoundCircuit(spec, theta), nm, input), t.subspace) - t.k2) < 0.1);
  const BoundCircuit c(spec, theta);
  for (const CostKind kind : {CostKind::c1(), CostKind::c2raw()}) {
    const auto fd = grad_central_difference(
        [&](std::span<const double> th) {
          return eval_cost(execute_final(c.with_theta({th.begin(), th.end()}), nm, input), t, kind);
        },
        theta, 1e-4);
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const double exact = kind.variant == CostVariant::C1 ? analytic_grad_c1(c, nm, input, t, k)
                                                           : analytic_grad_c2(c, nm, input, t, k);
      CHECK(std::abs(exact - fd.grad[k]) < 1e-6);
    }
  }
}

TEST_CASE("gradients vanish at a stationary point and in the decohered limit") {
  const auto spec = build_hea(2, 1);
  const auto t = example_observables();
  const BoundCircuit c(spec, {0.0, 0.0});
  for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(analytic_grad_c1(c, {}, initial_state(spec), t, k)) < 1e-9);
  // Full depolarizing: qx = qy = qz = 1/4 maps every state to I/4 in one layer.
  const BoundCircuit r(spec, {0.4, 1.3});
  const NoiseModel full = NoiseModel::uniform(0.25);
  for (std::size_t k = 0; k < 2; ++k) CHECK(std::abs(analytic_grad_c1(r, full, initial_state(spec), t, k)) < 1e-12);
}

TEST_CASE("C2 gradient vanishes when the subspace has one eigenvalue") {
  // O = 0.3 on S = {00, 11}: w1 = 0.3 w2 and k1 / k2 = 0.3.
  const std::vector<double> diag = {0.3, 0.0, 0.0, 0.3};
  const auto t = build_truncated_observables(decompose_diagonal(diag), Subspace(2, {0, 3}, "flat"));
  const auto spec = build_hea(2, 2);
  const BoundCircuit c(spec, {0.3, 1.1, 2.0, 0.7});
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(std::abs(analytic_grad_c2(c, NoiseModel::uniform(0.01), initial_state(spec), t, k)) < 1e-9);
  }
}

TEST_CASE("one-qubit gradients by hand at pi/4") {
  // Ry(theta)|0>: p0 = cos^2(theta / 2). With O = diag(2, -1) and S = {0},
  // C2 = (2 p0 - 1) / (p0 - 1/2) = 2 for every theta, so dC2 = 0.
  const std::vector<double> diag = {2.0, -1.0};
  const auto spec = build_hea(1, 1);
  const double theta = std::numbers::pi / 4;
  const BoundCircuit c(spec, {theta});
  const auto t = build_truncated_observables(decompose_diagonal(diag), Subspace(1, {0}, "zero"));
  CHECK(eval_c2(execute_final(c, {}, initial_state(spec)), t, CostKind::c2raw()) == doctest::Approx(2.0));
  CHECK(std::abs(analytic_grad_c2(c, {}, initial_state(spec), t, 0)) < 1e-9);
  // Full space: C1 = 2 p0 - p1 = (1 + 3 cos theta) / 2.
  const auto full = build_truncated_observables(decompose_diagonal(diag), Subspace(1, {0, 1}, "all"));
  CHECK(std::abs(analytic_grad_c1(c, {}, initial_state(spec), full, 0) + 1.5 * std::sin(theta)) < 1e-8);
}

TEST_CASE("two-qubit C2 gradient by hand") {
  // Ry(theta) on qubit 0 only; the CX leaves |00> alone, so p00 = cos^2(theta / 2).
  // O = diag(-1, 0, 1, 0) on S = {00, 10}: k1 = 0, k2 = 1/2, C2 = -p00 / (p00 - 1/2).
  const std::vector<double> diag = {-1.0, 0.0, 1.0, 0.0};
  const auto t = build_truncated_observables(decompose_diagonal(diag), Subspace(2, {0, 2}, "pair"));
  const auto spec = build_hea(2, 1);
  const double theta = std::numbers::pi / 4;
  const BoundCircuit c(spec, {theta, 0.0});
  const double p = std::pow(std::cos(theta / 2), 2);
  const double dp = -std::sin(theta) / 2;
  const double expected = 0.5 * dp / ((p - 0.5) * (p - 0.5));
  CHECK(eval_c2(execute_final(c, {}, initial_state(spec)), t, CostKind::c2raw()) ==
        doctest::Approx(-p / (p - 0.5)).epsilon(1e-12));
  CHECK(std::abs(analytic_grad_c2(c, {}, initial_state(spec), t, 0) - expected) < 1e-7);
}
