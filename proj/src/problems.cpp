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

#include "vqt/problems.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "vqt/errors.hpp"

namespace vqt {
namespace {

constexpr double kTieTolerance = 1e-9;

void validate_graph(const Graph& g, std::size_t max_nodes) {
  if (g.nodes < 1 || static_cast<std::size_t>(g.nodes) > max_nodes) {
    throw Error(ErrorCode::InvalidGraph, "graph needs 1.." + std::to_string(max_nodes) + " nodes");
  }
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.nodes || v >= g.nodes || u == v) {
      throw Error(ErrorCode::InvalidGraph, "bad edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
    }
  }
  if (!g.edge_weights.empty() && g.edge_weights.size() != g.edges.size()) {
    throw Error(ErrorCode::InvalidGraph, "weights must have one entry per edge");
  }
  if (!g.vertex_weights.empty() && g.vertex_weights.size() != static_cast<std::size_t>(g.nodes)) {
    throw Error(ErrorCode::InvalidGraph, "vertex_weights must have one entry per node");
  }
}

bool connected(const Graph& g) {
  std::vector<int> parent(static_cast<std::size_t>(g.nodes));
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& [u, v] : g.edges) parent[find(u)] = find(v);
  for (int v = 1; v < g.nodes; ++v) {
    if (find(v) != find(0)) return false;
  }
  return true;
}

struct DiagonalSummary {
  double min = std::numeric_limits<double>::infinity();
  std::vector<BasisIndex> argmins;
};

DiagonalSummary minimize_over(const std::vector<double>& values, const Subspace& s) {
  DiagonalSummary out;
  for (auto i : s.indices()) out.min = std::min(out.min, values[i]);
  for (auto i : s.indices()) {
    if (values[i] <= out.min + kTieTolerance) out.argmins.push_back(i);
  }
  return out;
}

// Shift that moves the subspace minimum to -1 when it is not already negative.
double negativity_shift(double subspace_min) { return subspace_min < 0.0 ? 0.0 : -subspace_min - 1.0; }

ProblemInstance diagonal_instance(std::string name, std::vector<double> values, Subspace s,
                                  std::string initial_bits) {
  const DiagonalSummary summary = minimize_over(values, s);
  const double shift = negativity_shift(summary.min);
  for (double& v : values) v += shift;
  ProblemInstance p;
  p.name = std::move(name);
  p.kind = BenchmarkKind::Qaoa;
  p.num_qubits = s.num_qubits();
  p.observable = decompose_diagonal(values);
  p.solutions = summary.argmins;
  p.shift = shift;
  p.optimum = summary.min + shift;
  p.initial_bits = std::move(initial_bits);
  p.target_state = CVector::Zero(static_cast<Eigen::Index>(values.size()));
  p.subspace = std::move(s);
  return p;
}

std::vector<double> diagonal_of(const PauliObservable& o) {
  const std::size_t dim = std::size_t{1} << o.num_qubits();
  std::vector<double> values(dim, 0.0);
  for (const auto& [s, c] : o.terms()) {
    std::uint64_t zmask = 0;
    for (int q = 0; q < s.num_qubits(); ++q) {
      if (s.letter(q) == 'Z') zmask |= 1ULL << q;
    }
    for (std::size_t x = 0; x < dim; ++x) values[x] += (std::popcount(x & zmask) & 1) ? -c : c;
  }
  return values;
}

}  // namespace

Graph Graph::from_json_text(const std::string& text) {
  Graph g;
  try {
    const auto j = nlohmann::json::parse(text);
    g.nodes = j.at("nodes").get<int>();
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::InvalidGraph, "edges must be pairs");
      g.edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    if (j.contains("weights")) g.edge_weights = j["weights"].get<std::vector<double>>();
    if (j.contains("vertex_weights")) g.vertex_weights = j["vertex_weights"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidGraph, e.what());
  }
  return g;
}

Graph Graph::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidGraph, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json_text(buffer.str());
}

ProblemInstance encode_maxcut(const Graph& g, std::string name) {
  validate_graph(g, kMaxTransformQubits);
  if (g.edges.empty()) throw Error(ErrorCode::InvalidGraph, "max-cut needs at least one edge");
  if (!connected(g)) throw Error(ErrorCode::InvalidGraph, "max-cut graph must be connected");
  const std::size_t dim = std::size_t{1} << g.nodes;
  std::vector<double> values(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) {
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      const auto [u, v] = g.edges[e];
      const double w = g.edge_weights.empty() ? 1.0 : g.edge_weights[e];
      if (((x >> u) & 1U) != ((x >> v) & 1U)) values[x] -= w;
    }
  }
  Subspace s = subspace_from_predicate(g.nodes, predicates::fixed_bit(0, 1), "fixed_bit(0,1)");
  return diagonal_instance(std::move(name), std::move(values), std::move(s), std::string(g.nodes, '0'));
}

ProblemInstance encode_vertex_cover(const Graph& g, double penalty, int symmetry_qubit, std::string name) {
  validate_graph(g, kMaxTransformQubits);
  if (symmetry_qubit >= g.nodes) throw Error(ErrorCode::InvalidGraph, "symmetry qubit outside the graph");
  if (penalty <= 0.0) penalty = 2.0 * g.nodes;
  const double max_weight =
      g.vertex_weights.empty() ? 1.0 : *std::max_element(g.vertex_weights.begin(), g.vertex_weights.end());
  if (penalty <= max_weight) throw Error(ErrorCode::InvalidGraph, "penalty must exceed the largest vertex weight");
  const std::size_t dim = std::size_t{1} << g.nodes;
  std::vector<double> values(dim, 0.0);
  for (std::size_t x = 0; x < dim; ++x) {
    for (int v = 0; v < g.nodes; ++v) {
      if ((x >> v) & 1U) values[x] += g.vertex_weights.empty() ? 1.0 : g.vertex_weights[v];
    }
    for (const auto& [u, v] : g.edges) {
      if (!((x >> u) & 1U) && !((x >> v) & 1U)) values[x] += penalty;
    }
  }
  Subspace s = symmetry_qubit < 0
                   ? subspace_from_predicate(g.nodes, predicates::all(), "all")
                   : subspace_from_predicate(g.nodes, predicates::fixed_bit(symmetry_qubit, 0),
                                             "fixed_bit(" + std::to_string(symmetry_qubit) + ",0)");
  return diagonal_instance(std::move(name), std::move(values), std::move(s), std::string(g.nodes, '0'));
}

ProblemInstance encode_tsp(const Eigen::MatrixXd& d, double penalty, std::string name) {
  if (d.rows() != 3 || d.cols() != 3) throw Error(ErrorCode::InvalidInstance, "only three-city tours are supported");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i != j && (!(d(i, j) > 0.0) || std::abs(d(i, j) - d(j, i)) > 1e-12)) {
        throw Error(ErrorCode::InvalidInstance, "distances must be symmetric and positive");
      }
    }
  }
  if (penalty <= 0.0) penalty = 1.0 + d(0, 1) + d(0, 2) + d(1, 2);
  constexpr int kPositions = 3;
  const auto city = [](std::size_t x, int p) { return static_cast<int>((x >> (2 * p)) & 3U); };
  std::vector<double> values(std::size_t{1} << (2 * kPositions), 0.0);
  for (std::size_t x = 0; x < values.size(); ++x) {
    int violations = 0;
    for (int p = 0; p < kPositions; ++p) {
      const int a = city(x, p), b = city(x, (p + 1) % kPositions);
      if (a == 3) ++violations;
      if (a < 3 && b < 3) values[x] += d(a, b);
      for (int r = p + 1; r < kPositions; ++r) violations += (a == city(x, r));
    }
    values[x] += penalty * violations;
  }
  Subspace s = subspace_from_predicate(2 * kPositions, predicates::fixed_bits(3, 0), "fixed_bits(3,0)");
  return diagonal_instance(std::move(name), std::move(values), std::move(s), "000000");
}

ProblemInstance make_vqe_instance(const PauliObservable& h, int electrons, std::string name,
                                  std::string initial_bits) {
  const int n = h.num_qubits();
  if (n < 1 || n > kMaxTransformQubits) throw Error(ErrorCode::InvalidInstance, "unsupported register size");
  Subspace s = electrons < 0 ? subspace_from_predicate(n, predicates::all(), "all")
                             : subspace_from_predicate(n, predicates::hamming_weight(electrons),
                                                       "hamming_weight(" + std::to_string(electrons) + ")");
  if (initial_bits.empty()) {
    // Lowest `electrons` orbitals occupied.
    initial_bits.assign(static_cast<std::size_t>(n), '0');
    for (int q = 0; q < std::max(electrons, 0); ++q) initial_bits[static_cast<std::size_t>(n - 1 - q)] = '1';
  }
  ProblemInstance p;
  p.name = std::move(name);
  p.kind = BenchmarkKind::Vqe;
  p.num_qubits = n;
  p.subspace = std::move(s);
  p.observable = h;
  const BruteForceResult exact = brute_force_solution(p);
  p.shift = negativity_shift(exact.min_value);
  p.observable = h.shifted(p.shift);
  p.optimum = exact.min_value + p.shift;
  p.target_state = exact.ground_state;
  p.initial_bits = std::move(initial_bits);
  return p;
}

ProblemInstance load_vqe_hamiltonian(const std::filesystem::path& path, int electrons, std::string name) {
  const PauliFile file = read_pauli_file(path);
  const auto header_value = [&](const std::string& key) -> const std::string* {
    const auto it = file.header.find(key);
    return it == file.header.end() ? nullptr : &it->second;
  };
  if (electrons < 0) {
    if (const auto* e = header_value("electrons")) {
      try {
        electrons = std::stoi(*e);
      } catch (const std::exception&) {
        throw Error(ErrorCode::ParseError, path.string() + ": bad electrons header '" + *e + "'");
      }
    }
  }
  std::string bits;
  if (const auto* b = header_value("initial_bits")) bits = *b;
  if (name.empty()) name = path.stem().string();
  ProblemInstance p = make_vqe_instance(file.observable, electrons, std::move(name), std::move(bits));
  if (const auto* g = header_value("ground_energy")) {
    double expected = 0.0;
    try {
      expected = std::stod(*g);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, path.string() + ": bad ground_energy header '" + *g + "'");
    }
    const double computed = p.optimum - p.shift;
    if (std::abs(computed - expected) > 1e-6) {
      throw Error(ErrorCode::InvalidInstance, path.string() + ": header ground energy " + *g +
                                                  " disagrees with diagonalization " + std::to_string(computed));
    }
  }
  return p;
}

BruteForceResult brute_force_solution(const ProblemInstance& p) {
  BruteForceResult out;
  if (p.observable.is_diagonal()) {
    const auto values = diagonal_of(p.observable);
    const DiagonalSummary summary = minimize_over(values, p.subspace);
    out.min_value = summary.min;
    out.solutions = summary.argmins;
    out.ground_state = CVector::Zero(static_cast<Eigen::Index>(values.size()));
    out.ground_state(static_cast<Eigen::Index>(summary.argmins.front())) = 1.0;
    return out;
  }
  const TruncatedObservables t = build_truncated_observables(p.observable, p.subspace);
  out.min_value = t.lambda_min;
  out.ground_state = t.ground_state;
  if (t.argmin_index) out.solutions.push_back(*t.argmin_index);
  return out;
}

std::filesystem::path data_directory() {
  if (const char* env = std::getenv("VQT_DATA_DIR")) return env;
#ifdef VQT_DATA_DIR
  return VQT_DATA_DIR;
#else
  return "data";
#endif
}

std::vector<std::string> shipped_instance_ids() {
  return {"qaoa-mc", "qaoa-vc", "qaoa-tsp", "vqe-h2", "vqe-lih", "vqe-beh2"};
}

ProblemInstance shipped_instance(const std::string& id) {
  const auto dir = data_directory() / "instances";
  if (id == "qaoa-mc") return encode_maxcut(Graph::load(dir / "mc_cycle4.json"), id);
  if (id == "qaoa-vc") return encode_vertex_cover(Graph::load(dir / "vc_path4.json"), 0.0, 2, id);
  if (id == "qaoa-tsp") {
    Eigen::MatrixXd d(3, 3);
    d << 0, 1, 2, 1, 0, 3, 2, 3, 0;
    return encode_tsp(d, 0.0, id);
  }
  if (id == "vqe-h2") return load_vqe_hamiltonian(dir / "h2_jw.txt", -1, id);
  if (id == "vqe-lih") return load_vqe_hamiltonian(dir / "lih_jw.txt", -1, id);
  if (id == "vqe-beh2") return load_vqe_hamiltonian(dir / "beh2_jw.txt", -1, id);
  std::string valid;
  for (const auto& v : shipped_instance_ids()) valid += (valid.empty() ? "" : ", ") + v;
  throw Error(ErrorCode::ConfigError, "unknown benchmark '" + id + "' (valid: " + valid + ")");
}

}  // namespace vqt
