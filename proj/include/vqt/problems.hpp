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

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "vqt/subspace.hpp"

namespace vqt {

enum class BenchmarkKind { Qaoa, Vqe };

struct Graph {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> edge_weights;    // empty means all 1
  std::vector<double> vertex_weights;  // empty means all 1

  /// JSON with `nodes`, `edges` (pairs) and optional `weights` (per edge)
  /// and `vertex_weights`. Throws InvalidGraph.
  static Graph from_json_text(const std::string& text);
  static Graph load(const std::filesystem::path& path);
};

struct ProblemInstance {
  std::string name;
  BenchmarkKind kind = BenchmarkKind::Qaoa;
  int num_qubits = 0;
  /// The observable to minimize, shift included.
  PauliObservable observable{0};
  Subspace subspace{0, {0}, "all"};
  /// Optimal basis indices inside the subspace (combinatorial problems).
  std::vector<BasisIndex> solutions;
  /// Lowest-energy eigenvector within the subspace (chemistry problems).
  CVector target_state;
  /// Multiple of the identity added so the minimum inside S is negative.
  double shift = 0.0;
  /// Minimum of the shifted observable inside S.
  double optimum = 0.0;
  /// Suggested ansatz input bitstring.
  std::string initial_bits;
};

/// sum_{(i,j)} w_ij (Z_i Z_j - I) / 2, i.e. minus the cut weight; S fixes qubit 0 to 1.
ProblemInstance encode_maxcut(const Graph& g, std::string name = "maxcut");

/// sum_v w_v z_v + penalty sum_{(u,v)} (1 - z_u)(1 - z_v). S fixes
/// `symmetry_qubit` to 0 (no constraint when negative). A non-positive
/// penalty selects 2 * nodes.
ProblemInstance encode_vertex_cover(const Graph& g, double penalty = 0.0, int symmetry_qubit = 2,
                                    std::string name = "vertex-cover");

/// Three-city tour over a 6-qubit position encoding: position p stores its
/// city index in qubits {2p, 2p+1}. Invalid codes (city 3 or repeats) cost
/// `penalty` per violation on top of the partial tour length; a
/// non-positive penalty selects 1 + sum of distances. S fixes position 0
/// to city 0.
ProblemInstance encode_tsp(const Eigen::MatrixXd& distances, double penalty = 0.0, std::string name = "tsp");

/// Chemistry Hamiltonian from a Pauli-term fixture. `electrons` < 0 takes
/// the count from the `electrons=` header, or the whole space if absent.
/// A `ground_energy=` header is checked against exact diagonalization.
ProblemInstance load_vqe_hamiltonian(const std::filesystem::path& path, int electrons = -1,
                                     std::string name = {});
ProblemInstance make_vqe_instance(const PauliObservable& h, int electrons, std::string name,
                                  std::string initial_bits = {});

struct BruteForceResult {
  double min_value = 0.0;
  std::vector<BasisIndex> solutions;
  CVector ground_state;
};

/// Exhaustive minimum over the subspace (diagonal observables) or a dense
/// eigensolve restricted to it.
BruteForceResult brute_force_solution(const ProblemInstance& p);

/// qaoa-mc, qaoa-vc, qaoa-tsp, vqe-h2, vqe-lih, vqe-beh2.
ProblemInstance shipped_instance(const std::string& id);
std::vector<std::string> shipped_instance_ids();
std::filesystem::path data_directory();

}  // namespace vqt
