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

// Pauli-string algebra over n qubits.
//
// Bit convention used throughout the library: qubit 0 is the least
// significant bit of a computational-basis index and the rightmost
// character of a bitstring or Pauli-string literal. "ZI" therefore acts
// with Z on qubit 1.

#include <complex>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vqt {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using BasisIndex = std::uint64_t;

/// Largest register that may be materialized as a dense matrix.
inline constexpr int kMaxDenseQubits = 12;
/// Largest register for full 4^n coefficient extraction.
inline constexpr int kMaxTransformQubits = 10;
/// Coefficients with magnitude below this are dropped.
inline constexpr double kPruneTolerance = 1e-12;

class PauliString {
 public:
  /// `letters` over {I,X,Y,Z}; the rightmost letter acts on qubit 0.
  explicit PauliString(std::string letters);

  static PauliString identity(int num_qubits);
  /// Inverse of index().
  static PauliString from_index(std::uint64_t index, int num_qubits);

  int num_qubits() const { return static_cast<int>(letters_.size()); }
  char letter(int qubit) const { return letters_[letters_.size() - 1 - qubit]; }
  const std::string& str() const { return letters_; }

  /// Base-4 code with I=0, X=1, Y=2, Z=3 and qubit 0 least significant.
  /// This is the position of the string in every dense coefficient vector.
  std::uint64_t index() const;
  bool is_identity() const;
  bool is_diagonal() const;
  int weight() const;

  auto operator<=>(const PauliString&) const = default;

 private:
  std::string letters_;
};

/// Sparse real combination of Pauli strings, including the identity term.
class PauliObservable {
 public:
  explicit PauliObservable(int num_qubits);

  int num_qubits() const { return num_qubits_; }
  const std::map<PauliString, double>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  /// Accumulates onto any existing coefficient; results below the prune
  /// tolerance are removed.
  void add_term(const PauliString& s, double coefficient);
  double coefficient(const PauliString& s) const;
  /// Tr(H) / 2^n.
  double identity_coefficient() const;
  bool is_diagonal() const;

  /// Returns a copy with `shift` added to the identity coefficient.
  PauliObservable shifted(double shift) const;
  /// Returns a copy with the identity term removed.
  PauliObservable traceless() const;

  /// Dense coefficient vector indexed by PauliString::index(). With
  /// include_identity = false the identity slot is dropped, so entry i
  /// holds the string with index i + 1.
  std::vector<double> coefficient_vector(bool include_identity) const;

 private:
  int num_qubits_;
  std::map<PauliString, double> terms_;
};

/// Number of non-zero Pauli coefficients (identity included).
std::size_t rank(const PauliObservable& p);

CMatrix materialize(const PauliObservable& p, int max_qubits = kMaxDenseQubits);

/// Pauli representation of a Hermitian matrix: coefficient of s is Tr(H s) / 2^n.
PauliObservable decompose(const CMatrix& h, double hermitian_tolerance = 1e-10);

/// Pauli representation of diag(values); only I/Z strings appear.
PauliObservable decompose_diagonal(std::span<const double> values);

/// Tr(M s) for every Pauli string s, indexed by PauliString::index().
/// Runs in O(n 4^n).
std::vector<Complex> pauli_transform(const CMatrix& m);

double pauli_inner(std::span<const double> a, std::span<const double> b);

/// log2 of a power-of-two dimension, or -1.
int qubits_for_dimension(std::size_t dim);

/// Pauli-term text file: `<coefficient> <letters>` per line, `#` comments.
/// Header comments of the form `# key=value key=value` are collected.
struct PauliFile {
  PauliObservable observable{0};
  std::map<std::string, std::string> header;
};

PauliFile parse_pauli_terms(std::istream& in);
PauliFile read_pauli_file(const std::filesystem::path& path);
void write_pauli_terms(std::ostream& out, const PauliObservable& p);

}  // namespace vqt
