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

#include <iosfwd>
#include <vector>

#include "vqt/pauli.hpp"

namespace vqt {

/// Single-qubit Pauli error rates, applied identically on every wire.
struct NoiseModel {
  double qx = 0.0;
  double qy = 0.0;
  double qz = 0.0;

  static NoiseModel uniform(double rate) { return {rate, rate, rate}; }

  /// Throws InvalidNoiseModel unless all rates are >= 0 and sum to <= 1.
  void validate() const;
  bool is_noiseless() const { return qx == 0.0 && qy == 0.0 && qz == 0.0; }

  // Multipliers applied to the X, Y and Z single-qubit coefficients.
  double x_factor() const { return 1.0 - 2.0 * qy - 2.0 * qz; }
  double y_factor() const { return 1.0 - 2.0 * qx - 2.0 * qz; }
  double z_factor() const { return 1.0 - 2.0 * qx - 2.0 * qy; }
};

/// Contraction parameter q: the largest of the three coefficient multipliers.
double noise_strength(const NoiseModel& nm);

class DensityMatrix {
 public:
  /// Takes ownership of `data`; checks shape only. Use validate() for the
  /// physical invariants.
  explicit DensityMatrix(CMatrix data);

  static DensityMatrix basis_state(int num_qubits, BasisIndex index);
  static DensityMatrix maximally_mixed(int num_qubits);
  static DensityMatrix from_pure(const CVector& psi);
  /// sum_i p_i |i><i|.
  static DensityMatrix from_diagonal(std::span<const double> probabilities);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return data_.rows(); }
  const CMatrix& matrix() const { return data_; }
  Complex trace() const { return data_.trace(); }

  /// Throws Internal if the state is not Hermitian, trace one and PSD
  /// within the given tolerances.
  void validate(double tolerance = 1e-10, double eigen_tolerance = 1e-9) const;
  double min_eigenvalue() const;

  // In-place kernels used by the circuit engine. Each costs O(4^n).
  void apply_one_qubit_gate(int qubit, const Eigen::Matrix2cd& u);
  void apply_cx(int control, int target);
  void apply_pauli_channel(const NoiseModel& nm);
  void apply_pauli_channel(int qubit, const NoiseModel& nm);

 private:
  int num_qubits_;
  CMatrix data_;
};

/// U rho U^dagger for a dense unitary on the full register.
DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& u, double tolerance = 1e-10);
/// The local Pauli channel applied independently to every qubit.
DensityMatrix apply_local_pauli_channel(const DensityMatrix& rho, const NoiseModel& nm);

/// a_i = Tr(rho s_i) over the 4^n - 1 non-identity strings; entry i holds
/// the string with PauliString::index() == i + 1.
std::vector<double> pauli_coefficients(const DensityMatrix& rho);

/// Computational-basis probabilities. Values in [-1e-9, 0) are clamped to
/// zero; anything more negative throws Internal.
std::vector<double> basis_probabilities(const DensityMatrix& rho);

/// <psi| rho |psi> for a normalized pure target.
double fidelity_to_pure(const DensityMatrix& rho, const CVector& target);

/// Row-major JSON array of [re, im] pairs.
void write_json(std::ostream& out, const DensityMatrix& rho);

}  // namespace vqt
