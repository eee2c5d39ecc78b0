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

#include "vqt/ansatz.hpp"

#include <cmath>

#include "vqt/errors.hpp"

namespace vqt {

RotationAxis parse_rotation_axis(const std::string& text) {
  if (text == "y" || text == "Y") return RotationAxis::Y;
  if (text == "z" || text == "Z") return RotationAxis::Z;
  if (text == "xyz" || text == "XYZ") return RotationAxis::XYZ;
  throw Error(ErrorCode::ConfigError, "rotation_axis must be y, z or xyz (got '" + text + "')");
}

Entangler parse_entangler(const std::string& text) {
  if (text == "chain") return Entangler::Chain;
  if (text == "ring") return Entangler::Ring;
  throw Error(ErrorCode::ConfigError, "entangler must be chain or ring (got '" + text + "')");
}

std::string to_string(RotationAxis axis) {
  switch (axis) {
    case RotationAxis::Y: return "y";
    case RotationAxis::Z: return "z";
    case RotationAxis::XYZ: return "xyz";
  }
  return "?";
}

std::string to_string(Entangler e) { return e == Entangler::Chain ? "chain" : "ring"; }

AnsatzSpec::AnsatzSpec(int num_qubits, int blocks, HeaOptions options)
    : num_qubits_(num_qubits), blocks_(blocks), options_(std::move(options)) {
  if (num_qubits < 1 || num_qubits > kMaxTransformQubits) {
    throw Error(ErrorCode::InvalidSize, "ansatz needs 1..10 qubits, got " + std::to_string(num_qubits));
  }
  if (blocks < 1) throw Error(ErrorCode::InvalidSize, "ansatz needs at least one block");
  const std::string& bits = options_.initial_bits;
  if (!bits.empty()) {
    if (static_cast<int>(bits.size()) != num_qubits) {
      throw Error(ErrorCode::InvalidSize, "initial_bits '" + bits + "' does not have " +
                                              std::to_string(num_qubits) + " characters");
    }
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] != '0' && bits[i] != '1') {
        throw Error(ErrorCode::InvalidArgument, "initial_bits must contain only 0 and 1");
      }
      if (bits[i] == '1') initial_index_ |= BasisIndex{1} << (bits.size() - 1 - i);
    }
  }
  for (int j = 0; j + 1 < num_qubits; ++j) edges_.emplace_back(j, j + 1);
  if (options_.entangler == Entangler::Ring && num_qubits > 2) edges_.emplace_back(num_qubits - 1, 0);
}

char AnsatzSpec::axis_of_block(int block) const {
  switch (options_.rotation_axis) {
    case RotationAxis::Y: return 'Y';
    case RotationAxis::Z: return 'Z';
    case RotationAxis::XYZ: return "XYZ"[block % 3];
  }
  return 'Y';
}

std::pair<int, int> AnsatzSpec::slot_position(std::size_t slot) const {
  return {static_cast<int>(slot / num_qubits_), static_cast<int>(slot % num_qubits_)};
}

AnsatzSpec build_hea(int num_qubits, int blocks, HeaOptions options) {
  return AnsatzSpec(num_qubits, blocks, std::move(options));
}

GeneratorConstants generator_constants(const AnsatzSpec&) { return {}; }

BoundCircuit::BoundCircuit(AnsatzSpec spec, std::vector<double> theta)
    : spec_(std::move(spec)), theta_(std::move(theta)) {
  if (theta_.size() != spec_.parameter_count()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(spec_.parameter_count()) +
                                                  " parameters, got " + std::to_string(theta_.size()));
  }
}

BoundCircuit BoundCircuit::shifted(std::size_t slot, double delta) const {
  std::vector<double> t = theta_;
  t.at(slot) += delta;
  return {spec_, std::move(t)};
}

DensityMatrix initial_state(const AnsatzSpec& spec) {
  return DensityMatrix::basis_state(spec.num_qubits(), spec.initial_index());
}

Eigen::Matrix2cd rotation(char axis, double angle) {
  const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd u;
  switch (axis) {
    case 'X': u << c, -i * s, -i * s, c; break;
    case 'Y': u << c, -s, s, c; break;
    case 'Z': u << std::exp(-i * (angle / 2.0)), 0.0, 0.0, std::exp(i * (angle / 2.0)); break;
    default: throw Error(ErrorCode::InvalidArgument, "rotation axis must be X, Y or Z");
  }
  return u;
}

namespace {

void check_input(const BoundCircuit& c, const DensityMatrix& input) {
  if (input.num_qubits() != c.spec().num_qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "input state has " + std::to_string(input.num_qubits()) +
                                                  " qubits, circuit has " + std::to_string(c.spec().num_qubits()));
  }
}

void apply_block(DensityMatrix& rho, const AnsatzSpec& spec, int block, std::span<const double> theta) {
  const int n = spec.num_qubits();
  const char axis = spec.axis_of_block(block);
  for (int q = 0; q < n; ++q) {
    rho.apply_one_qubit_gate(q, rotation(axis, theta[static_cast<std::size_t>(block * n + q)]));
  }
  for (const auto& [control, target] : spec.entangler_edges()) rho.apply_cx(control, target);
}

}  // namespace

CMatrix block_unitary(const AnsatzSpec& spec, int block, std::span<const double> theta) {
  const int n = spec.num_qubits();
  const auto dim = Eigen::Index{1} << n;
  // Columns of U are U|j>; build them by pushing basis kets through the gates.
  CMatrix u = CMatrix::Identity(dim, dim);
  const char axis = spec.axis_of_block(block);
  for (int q = 0; q < n; ++q) {
    const Eigen::Matrix2cd g = rotation(axis, theta[static_cast<std::size_t>(block * n + q)]);
    const Eigen::Index b = Eigen::Index{1} << q;
    for (Eigen::Index col = 0; col < dim; ++col) {
      for (Eigen::Index r = 0; r < dim; ++r) {
        if (r & b) continue;
        const Complex x0 = u(r, col), x1 = u(r | b, col);
        u(r, col) = g(0, 0) * x0 + g(0, 1) * x1;
        u(r | b, col) = g(1, 0) * x0 + g(1, 1) * x1;
      }
    }
  }
  for (const auto& [control, target] : spec.entangler_edges()) {
    const Eigen::Index cb = Eigen::Index{1} << control, tb = Eigen::Index{1} << target;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if ((r & cb) && !(r & tb)) u.row(r).swap(u.row(r | tb));
    }
  }
  return u;
}

NoisyExecution execute_noisy(const BoundCircuit& c, const NoiseModel& nm, const DensityMatrix& input) {
  check_input(c, input);
  nm.validate();
  NoisyExecution out{input, {}};
  out.trajectory.reserve(static_cast<std::size_t>(c.spec().blocks()));
  for (int l = 0; l < c.spec().blocks(); ++l) {
    apply_block(out.final_state, c.spec(), l, c.theta());
    out.final_state.apply_pauli_channel(nm);
    out.trajectory.push_back(out.final_state);
  }
  return out;
}

DensityMatrix execute_final(const BoundCircuit& c, const NoiseModel& nm, const DensityMatrix& input) {
  check_input(c, input);
  nm.validate();
  DensityMatrix rho = input;
  for (int l = 0; l < c.spec().blocks(); ++l) {
    apply_block(rho, c.spec(), l, c.theta());
    rho.apply_pauli_channel(nm);
  }
  return rho;
}

DensityMatrix execute_noiseless(const BoundCircuit& c, const DensityMatrix& input) {
  return execute_final(c, NoiseModel{}, input);
}

}  // namespace vqt
