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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vqt/density.hpp"

namespace vqt {

enum class RotationAxis { Y, Z, XYZ };
enum class Entangler { Chain, Ring };

RotationAxis parse_rotation_axis(const std::string& text);
Entangler parse_entangler(const std::string& text);
std::string to_string(RotationAxis axis);
std::string to_string(Entangler e);

struct HeaOptions {
  RotationAxis rotation_axis = RotationAxis::Y;
  Entangler entangler = Entangler::Chain;
  /// Bitstring prepared by X gates before the first block (qubit 0 rightmost).
  /// Empty means all zeros.
  std::string initial_bits;
};

/// Hardware-efficient ansatz: each block is one rotation per qubit followed
/// by a CX entangler, with parameter (block, qubit) at slot block * n + qubit.
class AnsatzSpec {
 public:
  AnsatzSpec(int num_qubits, int blocks, HeaOptions options);

  int num_qubits() const { return num_qubits_; }
  int blocks() const { return blocks_; }
  std::size_t parameter_count() const { return static_cast<std::size_t>(num_qubits_) * blocks_; }
  const HeaOptions& options() const { return options_; }
  BasisIndex initial_index() const { return initial_index_; }

  /// 'X', 'Y' or 'Z' for the rotation in the given block.
  char axis_of_block(int block) const;
  /// (control, target) CX pairs applied in order after each rotation layer.
  const std::vector<std::pair<int, int>>& entangler_edges() const { return edges_; }
  std::pair<int, int> slot_position(std::size_t slot) const;

 private:
  int num_qubits_;
  int blocks_;
  HeaOptions options_;
  BasisIndex initial_index_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

/// Throws InvalidSize unless 1 <= n <= 10 and blocks >= 1.
AnsatzSpec build_hea(int num_qubits, int blocks, HeaOptions options = {});

/// Constants of the rotation generators H = P/2 for a single Pauli P: one
/// non-zero coefficient of magnitude 1/2.
struct GeneratorConstants {
  int nonzero_terms = 1;
  double max_coefficient = 0.5;
};
GeneratorConstants generator_constants(const AnsatzSpec& spec);

class BoundCircuit {
 public:
  BoundCircuit(AnsatzSpec spec, std::vector<double> theta);

  const AnsatzSpec& spec() const { return spec_; }
  const std::vector<double>& theta() const { return theta_; }
  BoundCircuit with_theta(std::vector<double> theta) const { return {spec_, std::move(theta)}; }
  BoundCircuit shifted(std::size_t slot, double delta) const;

 private:
  AnsatzSpec spec_;
  std::vector<double> theta_;
};

/// Input state for the circuit: |initial_bits><initial_bits|, noiselessly prepared.
DensityMatrix initial_state(const AnsatzSpec& spec);

Eigen::Matrix2cd rotation(char axis, double angle);

/// Dense unitary of one block; used for verification, not for execution.
CMatrix block_unitary(const AnsatzSpec& spec, int block, std::span<const double> theta);

struct NoisyExecution {
  DensityMatrix final_state;
  std::vector<DensityMatrix> trajectory;  // rho_1 ... rho_L
};

/// Alternates block unitary and the noise channel L times.
NoisyExecution execute_noisy(const BoundCircuit& c, const NoiseModel& nm, const DensityMatrix& input);
/// Same as execute_noisy without keeping the trajectory.
DensityMatrix execute_final(const BoundCircuit& c, const NoiseModel& nm, const DensityMatrix& input);
DensityMatrix execute_noiseless(const BoundCircuit& c, const DensityMatrix& input);

}  // namespace vqt
