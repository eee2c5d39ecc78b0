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

#include "vqt/subspace.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>
#include <limits>

#include "vqt/errors.hpp"

namespace vqt {

Subspace::Subspace(int num_qubits, std::vector<BasisIndex> indices, std::string origin)
    : num_qubits_(num_qubits), indices_(std::move(indices)), origin_(std::move(origin)) {
  if (num_qubits < 0 || num_qubits > kMaxDenseQubits) {
    throw Error(ErrorCode::DimensionOverflow, "unsupported register size " + std::to_string(num_qubits));
  }
  if (indices_.empty()) throw Error(ErrorCode::EmptySubspace, "subspace '" + origin_ + "' is empty");
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
  const BasisIndex dim = BasisIndex{1} << num_qubits;
  if (indices_.back() >= dim) throw Error(ErrorCode::InvalidArgument, "subspace index out of range");
  member_.assign(static_cast<std::size_t>(dim), false);
  for (auto i : indices_) member_[i] = true;
}

namespace predicates {

BasisPredicate all() {
  return [](BasisIndex) { return true; };
}

BasisPredicate fixed_bit(int position, int value) {
  return [position, value](BasisIndex i) { return static_cast<int>((i >> position) & 1U) == value; };
}

BasisPredicate fixed_bits(BasisIndex mask, BasisIndex value) {
  return [mask, value](BasisIndex i) { return (i & mask) == (value & mask); };
}

BasisPredicate hamming_weight(int weight) {
  return [weight](BasisIndex i) { return std::popcount(i) == weight; };
}

BasisPredicate conjunction(std::vector<BasisPredicate> parts) {
  return [parts = std::move(parts)](BasisIndex i) {
    return std::all_of(parts.begin(), parts.end(), [i](const BasisPredicate& p) { return p(i); });
  };
}

}  // namespace predicates

Subspace subspace_from_predicate(int num_qubits, const BasisPredicate& predicate, std::string origin) {
  if (num_qubits < 0 || num_qubits > kMaxDenseQubits) {
    throw Error(ErrorCode::DimensionOverflow, "unsupported register size " + std::to_string(num_qubits));
  }
  std::vector<BasisIndex> indices;
  const BasisIndex dim = BasisIndex{1} << num_qubits;
  for (BasisIndex i = 0; i < dim; ++i) {
    if (predicate(i)) indices.push_back(i);
  }
  if (indices.empty()) throw Error(ErrorCode::EmptySubspace, "no basis state satisfies '" + origin + "'");
  return Subspace(num_qubits, std::move(indices), std::move(origin));
}

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::vector<long long> parse_args(const std::string& term, const std::string& name) {
  const auto open = term.find('(');
  if (term.back() != ')' || open == std::string::npos) {
    throw Error(ErrorCode::ConfigError, "malformed subspace term '" + term + "'");
  }
  std::vector<long long> args;
  std::string body = term.substr(open + 1, term.size() - open - 2);
  std::size_t start = 0;
  while (start <= body.size()) {
    const auto comma = body.find(',', start);
    const std::string piece = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      args.push_back(std::stoll(piece, &used, 0));
      if (used != piece.size()) throw std::invalid_argument(piece);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ConfigError, "bad integer '" + piece + "' in " + name);
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return args;
}

BasisPredicate parse_term(int n, const std::string& term) {
  if (term == "all") return predicates::all();
  const std::string name = term.substr(0, term.find('('));
  const auto args = parse_args(term, name);
  const auto expect = [&](std::size_t count) {
    if (args.size() != count) {
      throw Error(ErrorCode::ConfigError, name + " takes " + std::to_string(count) + " argument(s)");
    }
  };
  if (name == "fixed_bit") {
    expect(2);
    if (args[0] < 0 || args[0] >= n || (args[1] != 0 && args[1] != 1)) {
      throw Error(ErrorCode::ConfigError, "fixed_bit(pos, val) needs 0 <= pos < n and val in {0,1}");
    }
    return predicates::fixed_bit(static_cast<int>(args[0]), static_cast<int>(args[1]));
  }
  if (name == "fixed_bits") {
    expect(2);
    return predicates::fixed_bits(static_cast<BasisIndex>(args[0]), static_cast<BasisIndex>(args[1]));
  }
  if (name == "hamming_weight") {
    expect(1);
    return predicates::hamming_weight(static_cast<int>(args[0]));
  }
  throw Error(ErrorCode::ConfigError, "unknown subspace predicate '" + name + "'");
}

struct Spectrum {
  double min = 0.0, max = 0.0, abs_max = 0.0;
  std::optional<BasisIndex> argmin;
  CVector ground;
};

TruncatedObservables assemble(const Subspace& s, PauliObservable o, PauliObservable o1, CMatrix o1_dense,
                              std::optional<std::vector<double>> o1_diag, const Spectrum& spec) {
  const int n = s.num_qubits();
  std::vector<double> indicator(std::size_t{1} << n, 0.0);
  for (auto i : s.indices()) indicator[i] = 1.0;
  PauliObservable o2 = decompose_diagonal(indicator);
  TruncatedObservables t{.subspace = s,
                         .observable = std::move(o),
                         .o1 = o1,
                         .o2 = o2,
                         .o1_traceless = o1.traceless(),
                         .o2_traceless = o2.traceless()};
  t.k1 = o1.identity_coefficient();
  t.k2 = static_cast<double>(s.dim()) / static_cast<double>(std::size_t{1} << n);
  t.w1 = o1.coefficient_vector(false);
  t.w2 = o2.coefficient_vector(false);
  t.lambda_min = spec.min;
  t.lambda_max = spec.max;
  t.lambda_abs_max = spec.abs_max;
  t.argmin_index = spec.argmin;
  t.ground_state = spec.ground;
  t.o1_dense = std::move(o1_dense);
  t.o1_diagonal = std::move(o1_diag);
  return t;
}

std::vector<double> diagonal_values(const PauliObservable& o) {
  const int n = o.num_qubits();
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> values(dim, 0.0);
  for (const auto& [str, c] : o.terms()) {
    std::uint64_t zmask = 0;
    for (int q = 0; q < n; ++q) {
      if (str.letter(q) == 'Z') zmask |= 1ULL << q;
    }
    for (std::size_t x = 0; x < dim; ++x) values[x] += (std::popcount(x & zmask) & 1) ? -c : c;
  }
  return values;
}

Spectrum restricted_spectrum(const CMatrix& o, const Subspace& s) {
  const auto m = static_cast<Eigen::Index>(s.dim());
  CMatrix block(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) {
      block(a, b) = o(static_cast<Eigen::Index>(s.indices()[a]), static_cast<Eigen::Index>(s.indices()[b]));
    }
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(block);
  const auto& ev = solver.eigenvalues();
  Spectrum spec;
  spec.min = ev(0);
  spec.max = ev(m - 1);
  spec.abs_max = std::max(std::abs(spec.min), std::abs(spec.max));
  CVector v = solver.eigenvectors().col(0);
  // Fix the global phase so the largest amplitude is real and positive.
  Eigen::Index big = 0;
  v.cwiseAbs().maxCoeff(&big);
  v *= std::conj(v(big)) / std::abs(v(big));
  spec.ground = CVector::Zero(o.rows());
  for (Eigen::Index a = 0; a < m; ++a) spec.ground(static_cast<Eigen::Index>(s.indices()[a])) = v(a);
  if (std::abs(std::abs(v(big)) - 1.0) < 1e-12) spec.argmin = s.indices()[static_cast<std::size_t>(big)];
  return spec;
}

}  // namespace

Subspace parse_subspace(int num_qubits, const std::string& text) {
  const std::string compact = strip(text);
  if (compact.empty()) throw Error(ErrorCode::ConfigError, "empty subspace description");
  std::vector<BasisPredicate> parts;
  std::size_t start = 0;
  while (true) {
    const auto amp = compact.find('&', start);
    parts.push_back(parse_term(num_qubits, compact.substr(start, amp == std::string::npos ? std::string::npos
                                                                                          : amp - start)));
    if (amp == std::string::npos) break;
    start = amp + 1;
  }
  return subspace_from_predicate(num_qubits, predicates::conjunction(std::move(parts)), text);
}

TruncatedObservables build_truncated_observables(const PauliObservable& o, const Subspace& s) {
  if (o.num_qubits() != s.num_qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "observable and subspace act on different registers");
  }
  if (!o.is_diagonal()) {
    TruncatedObservables t = build_truncated_observables(materialize(o), s);
    t.observable = o;
    return t;
  }
  const std::vector<double> lambda = diagonal_values(o);
  std::vector<double> restricted(lambda.size(), 0.0);
  Spectrum spec;
  spec.min = std::numeric_limits<double>::infinity();
  spec.max = -std::numeric_limits<double>::infinity();
  for (auto i : s.indices()) {
    restricted[i] = lambda[i];
    if (lambda[i] < spec.min) {  // strict: ties keep the lowest index
      spec.min = lambda[i];
      spec.argmin = i;
    }
    spec.max = std::max(spec.max, lambda[i]);
    spec.abs_max = std::max(spec.abs_max, std::abs(lambda[i]));
  }
  spec.ground = CVector::Zero(static_cast<Eigen::Index>(lambda.size()));
  spec.ground(static_cast<Eigen::Index>(*spec.argmin)) = 1.0;
  PauliObservable o1 = decompose_diagonal(restricted);
  return assemble(s, o, std::move(o1), CMatrix{}, std::move(restricted), spec);
}

TruncatedObservables build_truncated_observables(const CMatrix& o, const Subspace& s) {
  const int n = qubits_for_dimension(static_cast<std::size_t>(o.rows()));
  if (n != s.num_qubits() || o.rows() != o.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "observable and subspace act on different registers");
  }
  if ((o - o.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorCode::NonHermitian, "observable is not Hermitian");
  }
  Eigen::VectorXd mask = Eigen::VectorXd::Zero(o.rows());
  for (auto i : s.indices()) mask(static_cast<Eigen::Index>(i)) = 1.0;
  CMatrix o1 = mask.asDiagonal() * o * mask.asDiagonal();
  const Spectrum spec = restricted_spectrum(o, s);
  PauliObservable o1_pauli = decompose(o1);
  return assemble(s, decompose(o), std::move(o1_pauli), std::move(o1), std::nullopt, spec);
}

double subspace_weight(const DensityMatrix& rho, const Subspace& s) {
  if (rho.num_qubits() != s.num_qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "state and subspace act on different registers");
  }
  double w = 0.0;
  for (auto i : s.indices()) {
    w += rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return w;
}

}  // namespace vqt
