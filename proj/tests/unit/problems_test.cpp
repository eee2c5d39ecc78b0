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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "vqt/errors.hpp"
#include "vqt/problems.hpp"
#include "vqt/subspace.hpp"

using namespace vqt;

namespace {

Graph graph(int nodes, std::vector<std::pair<int, int>> edges) {
  Graph g;
  g.nodes = nodes;
  g.edges = std::move(edges);
  return g;
}

std::vector<double> diagonal(const ProblemInstance& p) {
  const CMatrix m = materialize(p.observable);
  std::vector<double> d(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) d[static_cast<std::size_t>(i)] = m(i, i).real();
  return d;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("max-cut on a two-node path") {
  const auto p = encode_maxcut(graph(2, {{0, 1}}));
  const auto d = diagonal(p);
  CHECK(d[0] == doctest::Approx(0.0));
  CHECK(d[1] == doctest::Approx(-1.0));
  CHECK(d[2] == doctest::Approx(-1.0));
  CHECK(d[3] == doctest::Approx(0.0));
  CHECK(p.subspace.indices() == std::vector<BasisIndex>{1, 3});
  CHECK(p.solutions == std::vector<BasisIndex>{1});
  CHECK(p.shift == 0.0);
  const auto bf = brute_force_solution(p);
  CHECK(bf.min_value == doctest::Approx(-1.0));
  CHECK(bf.solutions == std::vector<BasisIndex>{1});
}

TEST_CASE("max-cut on a triangle") {
  const auto p = encode_maxcut(graph(3, {{0, 1}, {1, 2}, {0, 2}}));
  const auto d = diagonal(p);
  int balanced = 0;
  for (double v : d) balanced += std::abs(v + 2.0) < 1e-12;
  CHECK(balanced == 6);
  CHECK(p.solutions.size() == 3);
  for (auto s : p.solutions) CHECK(p.subspace.contains(s));
}

TEST_CASE("max-cut rejects degenerate graphs") {
  CHECK_THROWS_AS(encode_maxcut(graph(3, {})), Error);
  CHECK_THROWS_AS(encode_maxcut(graph(4, {{0, 1}, {2, 3}})), Error);
  CHECK_THROWS_AS(encode_maxcut(graph(2, {{0, 2}})), Error);
  CHECK_THROWS_AS(Graph::from_json_text("{\"nodes\": 2, \"edges\": [[0]]}"), Error);
}

TEST_CASE("vertex cover examples") {
  SUBCASE("single edge") {
    const auto p = encode_vertex_cover(graph(2, {{0, 1}}), 0.0, -1);
    CHECK(p.solutions == std::vector<BasisIndex>{1, 2});
    const auto d = diagonal(p);
    CHECK(d[1] - p.shift == doctest::Approx(1.0));
  }
  SUBCASE("star with three leaves") {
    const auto p = encode_vertex_cover(graph(4, {{0, 1}, {0, 2}, {0, 3}}));
    CHECK(p.solutions == std::vector<BasisIndex>{1});
    CHECK(p.subspace.origin() == "fixed_bit(2,0)");
  }
  SUBCASE("no edges") {
    const auto p = encode_vertex_cover(graph(3, {}), 0.0, -1);
    CHECK(p.solutions == std::vector<BasisIndex>{0});
    CHECK(diagonal(p)[0] - p.shift == doctest::Approx(0.0));
    CHECK(p.optimum < 0.0);
  }
  CHECK_THROWS_AS(encode_vertex_cover(graph(2, {{0, 1}}), 0.5, -1), Error);
}

TEST_CASE("three-city tours") {
  Eigen::MatrixXd equal(3, 3);
  equal << 0, 1, 1, 1, 0, 1, 1, 1, 0;
  const auto e = encode_tsp(equal);
  CHECK(e.solutions == std::vector<BasisIndex>{24, 36});

  Eigen::MatrixXd d(3, 3);
  d << 0, 1, 2, 1, 0, 3, 2, 3, 0;
  const auto p = encode_tsp(d);
  CHECK(p.solutions == std::vector<BasisIndex>{24, 36});
  const auto values = diagonal(p);
  CHECK(values[24] - p.shift == doctest::Approx(6.0));
  // Every encoding that is not a permutation costs more than any tour.
  const auto city = [](std::size_t x, int pos) { return (x >> (2 * pos)) & 3U; };
  for (std::size_t x = 0; x < values.size(); ++x) {
    const bool valid = city(x, 0) != 3 && city(x, 1) != 3 && city(x, 2) != 3 && city(x, 0) != city(x, 1) &&
                       city(x, 0) != city(x, 2) && city(x, 1) != city(x, 2);
    if (!valid) CHECK(values[x] - p.shift > 6.0);
  }
  CHECK(p.subspace.dim() == 16);
  Eigen::MatrixXd bad = d;
  bad(0, 1) = -1.0;
  CHECK_THROWS_AS(encode_tsp(bad), Error);
}

TEST_CASE("VQE fixtures") {
  const auto h2 = load_vqe_hamiltonian(data_directory() / "instances" / "h2_jw.txt");
  CHECK(h2.num_qubits == 4);
  CHECK(h2.subspace.dim() == 6);
  CHECK(h2.optimum - h2.shift == doctest::Approx(-1.137306035753).epsilon(1e-9));

  const auto toy = load_vqe_hamiltonian(write_temp("vqt_toy_z.txt", "1.0 Z\n"));
  CHECK(toy.num_qubits == 1);
  CHECK(toy.optimum == doctest::Approx(-1.0));
  CHECK(std::abs(toy.target_state(1)) == doctest::Approx(1.0));
  const auto bf = brute_force_solution(toy);
  CHECK(bf.min_value == doctest::Approx(-1.0));

  try {
    load_vqe_hamiltonian(write_temp("vqt_bad.txt", "0.5 ZZ\nabc ZZ\n"));
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(load_vqe_hamiltonian(write_temp("vqt_wrong.txt", "# ground_energy=-3.0\n1.0 Z\n")), Error);
}

TEST_CASE("shipped instances") {
  for (const auto& id : shipped_instance_ids()) {
    CAPTURE(id);
    const auto p = shipped_instance(id);
    const auto t = build_truncated_observables(p.observable, p.subspace);
    CHECK(t.lambda_min < 0.0);
    if (p.kind == BenchmarkKind::Qaoa) {
      CHECK_FALSE(p.solutions.empty());
      for (auto s : p.solutions) CHECK(p.subspace.contains(s));
      CHECK(p.observable.is_diagonal());
      const CMatrix m = materialize(p.observable);
      CHECK((m - CMatrix(m.diagonal().asDiagonal())).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(brute_force_solution(p).solutions == p.solutions);
    } else {
      CHECK(p.target_state.norm() == doctest::Approx(1.0));
      for (Eigen::Index i = 0; i < p.target_state.size(); ++i) {
        if (!p.subspace.contains(static_cast<BasisIndex>(i))) CHECK(std::abs(p.target_state(i)) < 1e-12);
      }
      const auto bf = brute_force_solution(p);
      CHECK(std::abs(std::abs(bf.ground_state.dot(p.target_state)) - 1.0) < 1e-9);
    }
    CHECK(brute_force_solution(p).min_value == doctest::Approx(p.optimum));
  }
  CHECK(shipped_instance("qaoa-mc").num_qubits == 4);
  CHECK(shipped_instance("qaoa-tsp").num_qubits == 6);
  CHECK(shipped_instance("vqe-lih").num_qubits == 6);
  CHECK(shipped_instance("vqe-beh2").num_qubits == 8);
  CHECK_THROWS_AS(shipped_instance("qaoa-nope"), Error);
}
