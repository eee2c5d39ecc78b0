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
#include <sstream>

#include "vqt/errors.hpp"
#include "vqt/trainer.hpp"

using namespace vqt;

namespace {

ProblemInstance z_toy() {
  PauliObservable z(1);
  z.add_term(PauliString("Z"), 1.0);
  return make_vqe_instance(z, -1, "z-toy");
}

ProblemInstance path2() {
  Graph g;
  g.nodes = 2;
  g.edges = {{0, 1}};
  return encode_maxcut(g, "path2");
}

}  // namespace

TEST_CASE("learning rate decays linearly") {
  TrainConfig cfg;
  cfg.iterations = 10;
  cfg.lr0 = 0.5;
  CHECK(cfg.learning_rate(0) == doctest::Approx(0.5));
  CHECK(cfg.learning_rate(5) == doctest::Approx(0.25));
  CHECK(cfg.learning_rate(9) > 0.0);
  cfg.iterations = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("one-qubit toy reaches the ground state on C2reg") {
  const auto p = z_toy();
  const auto spec = build_hea(1, 1, {RotationAxis::Y, Entangler::Chain, ""});
  TrainConfig cfg;
  cfg.iterations = 200;
  cfg.seed = 3;
  const auto r = train(p, spec, {}, cfg);
  CHECK_FALSE(r.aborted);
  CHECK(r.iterations.size() == 200);
  CHECK(std::abs(r.final_c1 + 1.0) < 1e-3);
  CHECK(r.parameter_quality == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("zero learning rate leaves theta alone") {
  const auto p = path2();
  const auto spec = build_hea(2, 2);
  TrainConfig cfg;
  cfg.iterations = 5;
  cfg.lr0 = 0.0;
  const auto r = train(p, spec, NoiseModel::uniform(0.03), cfg);
  CHECK(r.final_theta == r.initial_theta);
  for (const auto& it : r.iterations) CHECK(it.c1 == r.iterations.front().c1);
}

TEST_CASE("training is deterministic and logs one row per iteration") {
  const auto p = path2();
  const auto spec = build_hea(2, 3);
  TrainConfig cfg;
  cfg.iterations = 20;
  cfg.seed = 9;
  const auto a = train(p, spec, NoiseModel::uniform(0.03), cfg);
  cfg.threads = 2;
  const auto b = train(p, spec, NoiseModel::uniform(0.03), cfg);
  std::ostringstream ca, cb;
  write_train_csv(ca, a);
  write_train_csv(cb, b);
  CHECK(ca.str() == cb.str());
  CHECK(a.final_theta == b.final_theta);
  for (std::size_t i = 0; i < a.iterations.size(); ++i) CHECK(a.iterations[i].iter == i);
  CHECK(ca.str().rfind("iter,c1,c2,grad_l2,grad_linf,subspace_weight,metric\n", 0) == 0);
}

TEST_CASE("paired runs share the initial parameters") {
  const auto p = path2();
  const auto spec = build_hea(2, 2);
  TrainConfig cfg;
  cfg.iterations = 3;
  cfg.seed = 4;
  cfg.step_cost = CostVariant::C1;
  const auto a = train(p, spec, NoiseModel::uniform(0.03), cfg);
  cfg.step_cost = CostVariant::C2Reg;
  const auto b = train(p, spec, NoiseModel::uniform(0.03), cfg);
  CHECK(a.initial_theta == b.initial_theta);
}

TEST_CASE("noise-free toys converge to the subspace minimum") {
  {
    const auto p = z_toy();
    const auto r = train(p, build_hea(1, 1), {}, TrainConfig{.iterations = 200, .seed = 1});
    bool entered = false;
    for (const auto& it : r.iterations) {
      if (std::abs(it.c1 + 1.0) < 1e-2) entered = true;
      if (entered) CHECK(std::abs(it.c1 + 1.0) < 1e-2);
    }
    CHECK(entered);
  }
  {
    const auto p = path2();
    const auto r = train(p, build_hea(2, 1), {}, TrainConfig{.iterations = 200, .seed = 1});
    CHECK(std::abs(r.final_c1 - p.optimum) < 1e-2);
  }
}

TEST_CASE("success rate and fidelity") {
  const auto p = path2();
  CHECK(success_rate(DensityMatrix::basis_state(2, 1), p) == doctest::Approx(1.0));
  CHECK(success_rate(DensityMatrix::maximally_mixed(2), p) == doctest::Approx(0.25));
  CHECK(success_rate(DensityMatrix::from_diagonal(std::vector<double>{0.0, 0.6, 0.4, 0.0}), p) ==
        doctest::Approx(0.6));
  CHECK_THROWS_AS(success_rate(DensityMatrix::maximally_mixed(1), z_toy()), Error);
  CHECK(benchmark_metric(DensityMatrix::basis_state(1, 1), z_toy()) == doctest::Approx(1.0));
}

TEST_CASE("parameter quality re-simulates without noise") {
  const auto p = path2();
  const auto spec = build_hea(2, 2);
  const std::vector<double> theta = {0.3, 2.2, 1.4, 5.0};
  const double expected = success_rate(execute_noiseless(BoundCircuit(spec, theta), initial_state(spec)), p);
  CHECK(parameter_quality(theta, spec, p) == expected);
  CHECK(parameter_quality(std::vector<double>{std::numbers::pi}, build_hea(1, 1), z_toy()) ==
        doctest::Approx(1.0));
}

TEST_CASE("gradient norm survey") {
  SUBCASE("control") {
    const auto p = path2();
    SurveyOptions opts;
    opts.candidate = CostKind::c1();
    const auto r = gradient_norm_survey(p, build_hea(2, 2), {}, 5, 1, opts);
    CHECK(r.mean_ratio == doctest::Approx(1.0));
  }
  SUBCASE("full subspace is inapplicable") {
    const auto r = gradient_norm_survey(z_toy(), build_hea(1, 1), {}, 5, 1);
    CHECK(r.inapplicable_reason.has_value());
    CHECK(r.applicable == 0);
  }
  SUBCASE("max-cut at q = 0.88") {
    const auto p = shipped_instance("qaoa-mc");
    const auto r = gradient_norm_survey(p, build_hea(4, 5), NoiseModel::uniform(0.03), 20, 7);
    CHECK(r.samples.size() == 20);
    CHECK(r.mean_ratio > 5.0);
  }
}

TEST_CASE("uniform parameters lie in [0, 2 pi)") {
  std::mt19937_64 rng(1);
  for (double x : uniform_parameters(1000, rng)) {
    CHECK(x >= 0.0);
    CHECK(x < 2.0 * std::numbers::pi);
  }
  CHECK(hash_parameters(std::vector<double>{1.0, 2.0}) != hash_parameters(std::vector<double>{2.0, 1.0}));
}
