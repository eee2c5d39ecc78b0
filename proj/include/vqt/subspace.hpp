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

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vqt/density.hpp"

namespace vqt {

using BasisPredicate = std::function<bool(BasisIndex)>;

/// Set of computational-basis indices selected by a symmetry.
class Subspace {
 public:
  Subspace(int num_qubits, std::vector<BasisIndex> indices, std::string origin);

  int num_qubits() const { return num_qubits_; }
  const std::vector<BasisIndex>& indices() const { return indices_; }
  std::size_t dim() const { return indices_.size(); }
  const std::string& origin() const { return origin_; }
  bool contains(BasisIndex i) const { return i < member_.size() && member_[i]; }

 private:
  int num_qubits_;
  std::vector<BasisIndex> indices_;
  std::vector<bool> member_;
  std::string origin_;
};

namespace predicates {
BasisPredicate all();
BasisPredicate fixed_bit(int position, int value);
BasisPredicate fixed_bits(BasisIndex mask, BasisIndex value);
BasisPredicate hamming_weight(int weight);
BasisPredicate conjunction(std::vector<BasisPredicate> parts);
}  // namespace predicates

/// Throws EmptySubspace when no index satisfies the predicate.
Subspace subspace_from_predicate(int num_qubits, const BasisPredicate& predicate, std::string origin = {});

/// Parses `fixed_bit(0,1)`, `hamming_weight(2)`, `fixed_bits(3,0)`, `all`,
/// joined by `&`.
Subspace parse_subspace(int num_qubits, const std::string& text);

/// The observables used by the truncated cost functions:
///   O1 = P_S O P_S, O2 = P_S, and their traceless parts.
/// For an observable diagonal in the computational basis O1 is
/// sum_{i in S} lambda_i |i><i|.
struct TruncatedObservables {
  Subspace subspace;
  PauliObservable observable;  // the original O
  PauliObservable o1, o2, o1_traceless, o2_traceless;
  double k1 = 0.0;  // Tr(O1) / 2^n
  double k2 = 0.0;  // Tr(O2) / 2^n = dim S / 2^n
  std::vector<double> w1{}, w2{};  // non-identity coefficient vectors
  double lambda_min = 0.0;     // smallest eigenvalue of O restricted to S
  double lambda_max = 0.0;
  double lambda_abs_max = 0.0;
  /// Basis index attaining lambda_min (lowest on ties); set when O is diagonal.
  std::optional<BasisIndex> argmin_index{};
  /// Eigenvector of lambda_min, embedded in the full register.
  CVector ground_state{};
  /// Dense O1 and the diagonal of O1 when O is diagonal.
  CMatrix o1_dense{};
  std::optional<std::vector<double>> o1_diagonal{};
};

TruncatedObservables build_truncated_observables(const PauliObservable& o, const Subspace& s);
/// For a dense Hermitian observable; throws NonHermitian.
TruncatedObservables build_truncated_observables(const CMatrix& o, const Subspace& s);

/// sum_{i in S} p_i, i.e. Tr(rho O2).
double subspace_weight(const DensityMatrix& rho, const Subspace& s);

}  // namespace vqt
