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
#include <set>

#include "../oracle.hpp"
#include "vqt/ansatz.hpp"
#include "vqt/errors.hpp"

using namespace vqt;

namespace {

std::vector<double> random_theta(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  std::vector<double> t(count);
  for (double& x : t) x = u(rng);
  return t;
}

}  // namespace

TEST_CASE("parameter counts") {
  CHECK(build_hea(4, 5).parameter_count() == 20);
  CHECK(build_hea(6, 5).parameter_count() == 30);
  CHECK(build_hea(8, 5).parameter_count() == 40);
  const auto one = build_hea(1, 1);
  CHECK(one.parameter_count() == 1);
  CHECK(one.entangler_edges().empty());
  CHECK(build_hea(4, 1, {RotationAxis::Y, Entangler::Ring, ""}).entangler_edges().size() == 4);
  CHECK_THROWS_AS(build_hea(0, 1), Error);
  CHECK_THROWS_AS(build_hea(11, 1), Error);
  CHECK_THROWS_AS(build_hea(2, 0), Error);
  CHECK_THROWS_AS(build_hea(2, 1, {RotationAxis::Y, Entangler::Chain, "0a"}), Error);
}

TEST_CASE("every slot maps to one rotation") {
  const auto spec = build_hea(3, 4);
  std::set<std::pair<int, int>> seen;
  for (std::size_t k = 0; k < spec.parameter_count(); ++k) seen.insert(spec.slot_position(k));
  CHECK(seen.size() == spec.parameter_count());
}

TEST_CASE("execute examples") {
  SUBCASE("all zero angles keep |0...0>") {
    const auto spec = build_hea(3, 2);
    const BoundCircuit c(spec, std::vector<double>(6, 0.0));
    const auto out = execute_final(c, {}, initial_state(spec));
    CHECK((out.matrix() - DensityMatrix::basis_state(3, 0).matrix()).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("Ry(pi) flips one qubit") {
    const auto spec = build_hea(1, 1);
    const auto out = execute_final(BoundCircuit(spec, {std::numbers::pi}), {}, initial_state(spec));
    CHECK(std::abs(out.matrix()(1, 1).real() - 1.0) < 1e-15);
  }
  SUBCASE("Ry(pi/2) then noise contracts the X coefficient") {
    const auto spec = build_hea(1, 1);
    const auto out = execute_final(BoundCircuit(spec, {std::numbers::pi / 2}), NoiseModel::uniform(0.03),
                                   initial_state(spec));
    CHECK(pauli_coefficients(out)[0] == doctest::Approx(0.88).epsilon(1e-14));
  }
  SUBCASE("initial bits are prepared before block 1") {
    const auto spec = build_hea(3, 2, {RotationAxis::Y, Entangler::Chain, "100"});
    CHECK(spec.initial_index() == 4);
    const auto out = execute_noiseless(BoundCircuit(spec, std::vector<double>(6, 0.0)), initial_state(spec));
    // CX chain with control 0 leaves |100> alone.
    CHECK(std::abs(out.matrix()(4, 4).real() - 1.0) < 1e-15);
  }
}

TEST_CASE("trajectory has one state per block") {
  std::mt19937_64 rng(1);
  const auto spec = build_hea(2, 4);
  const BoundCircuit c(spec, random_theta(8, rng));
  const auto run = execute_noisy(c, NoiseModel::uniform(0.02), initial_state(spec));
  CHECK(run.trajectory.size() == 4);
  CHECK((run.trajectory.back().matrix() - run.final_state.matrix()).cwiseAbs().maxCoeff() == 0.0);
  for (const auto& rho : run.trajectory) CHECK_NOTHROW(rho.validate());
}

TEST_CASE("noiseless execution equals zero-noise execution") {
  std::mt19937_64 rng(2);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 3;
    const auto spec = build_hea(n, 1 + trial % 4);
    const BoundCircuit c(spec, random_theta(spec.parameter_count(), rng));
    const auto a = execute_noiseless(c, initial_state(spec));
    const auto b = execute_final(c, {}, initial_state(spec));
    worst = std::max(worst, (a.matrix() - b.matrix()).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("circuit matches a dense gate-chain oracle") {
  std::mt19937_64 rng(4);
  for (int n = 2; n <= 3; ++n) {
    const auto spec = build_hea(n, 3);
    const auto theta = random_theta(spec.parameter_count(), rng);
    const NoiseModel nm{0.01, 0.02, 0.03};
    const CMatrix input = DensityMatrix::basis_state(n, 0).matrix();
    const CMatrix expected = oracle::hea_chain(theta, n, 3, input, nm.qx, nm.qy, nm.qz);
    const auto out = execute_final(BoundCircuit(spec, theta), nm, initial_state(spec));
    CHECK((out.matrix() - expected).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("block unitaries are unitary") {
  std::mt19937_64 rng(6);
  const auto spec = build_hea(3, 2, {RotationAxis::XYZ, Entangler::Ring, ""});
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto theta = random_theta(spec.parameter_count(), rng);
    const CMatrix u = block_unitary(spec, trial % 2, theta);
    worst = std::max(worst, (u * u.adjoint() - CMatrix::Identity(8, 8)).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("traceless derivative of the output state") {
  std::mt19937_64 rng(8);
  const auto spec = build_hea(3, 3);
  const BoundCircuit c(spec, random_theta(spec.parameter_count(), rng));
  for (std::size_t k = 0; k < spec.parameter_count(); ++k) {
    const auto plus = execute_final(c.shifted(k, 1e-4), NoiseModel::uniform(0.03), initial_state(spec));
    const auto minus = execute_final(c.shifted(k, -1e-4), NoiseModel::uniform(0.03), initial_state(spec));
    CHECK(std::abs(plus.trace() - minus.trace()) < 1e-12);
  }
}

TEST_CASE("generator constants for single-axis rotations") {
  const auto g = generator_constants(build_hea(4, 5));
  CHECK(g.nonzero_terms == 1);
  CHECK(g.max_coefficient == 0.5);
}

TEST_CASE("bound circuit length must match") {
  CHECK_THROWS_AS(BoundCircuit(build_hea(2, 2), std::vector<double>(3, 0.0)), Error);
}
