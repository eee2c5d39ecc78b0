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

#include "vqt/density.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "vqt/errors.hpp"

namespace vqt {

void NoiseModel::validate() const {
  const auto bad = [](double q) { return !std::isfinite(q) || q < 0.0; };
  if (bad(qx) || bad(qy) || bad(qz)) {
    throw Error(ErrorCode::InvalidNoiseModel, "error rates must be finite and non-negative");
  }
  if (qx + qy + qz > 1.0 + 1e-15) {
    throw Error(ErrorCode::InvalidNoiseModel, "qx + qy + qz exceeds 1");
  }
}

double noise_strength(const NoiseModel& nm) {
  nm.validate();
  return std::max({nm.x_factor(), nm.y_factor(), nm.z_factor()});
}

DensityMatrix::DensityMatrix(CMatrix data) : data_(std::move(data)) {
  num_qubits_ = qubits_for_dimension(static_cast<std::size_t>(data_.rows()));
  if (num_qubits_ < 0 || data_.rows() != data_.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "density matrix must be square with power-of-two dimension");
  }
}

DensityMatrix DensityMatrix::basis_state(int num_qubits, BasisIndex index) {
  if (num_qubits < 0 || num_qubits > kMaxDenseQubits) {
    throw Error(ErrorCode::DimensionOverflow, "unsupported register size " + std::to_string(num_qubits));
  }
  const auto dim = Eigen::Index{1} << num_qubits;
  if (index >= static_cast<BasisIndex>(dim)) {
    throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  }
  CMatrix m = CMatrix::Zero(dim, dim);
  m(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
  if (num_qubits < 0 || num_qubits > kMaxDenseQubits) {
    throw Error(ErrorCode::DimensionOverflow, "unsupported register size " + std::to_string(num_qubits));
  }
  const auto dim = Eigen::Index{1} << num_qubits;
  return DensityMatrix(CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::from_pure(const CVector& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::from_diagonal(std::span<const double> probabilities) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(probabilities.size()),
                            static_cast<Eigen::Index>(probabilities.size()));
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = probabilities[i];
  }
  return DensityMatrix(std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(data_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void DensityMatrix::validate(double tolerance, double eigen_tolerance) const {
  const double herm = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance) throw Error(ErrorCode::Internal, "state is not Hermitian");
  if (std::abs(trace() - Complex(1.0, 0.0)) > tolerance) throw Error(ErrorCode::Internal, "trace is not 1");
  if (min_eigenvalue() < -eigen_tolerance) throw Error(ErrorCode::Internal, "state is not positive semidefinite");
}

void DensityMatrix::apply_one_qubit_gate(int qubit, const Eigen::Matrix2cd& u) {
  const Eigen::Index dim = data_.rows();
  const Eigen::Index b = Eigen::Index{1} << qubit;
  // rows: rho <- U rho
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & b) continue;
      const Complex x0 = data_(r, c), x1 = data_(r | b, c);
      data_(r, c) = u(0, 0) * x0 + u(0, 1) * x1;
      data_(r | b, c) = u(1, 0) * x0 + u(1, 1) * x1;
    }
  }
  // columns: rho <- rho U^dagger
  const Eigen::Matrix2cd ud = u.adjoint();
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & b) continue;
    for (Eigen::Index r = 0; r < dim; ++r) {
      const Complex x0 = data_(r, c), x1 = data_(r, c | b);
      data_(r, c) = x0 * ud(0, 0) + x1 * ud(1, 0);
      data_(r, c | b) = x0 * ud(0, 1) + x1 * ud(1, 1);
    }
  }
}

void DensityMatrix::apply_cx(int control, int target) {
  const Eigen::Index dim = data_.rows();
  const Eigen::Index cb = Eigen::Index{1} << control;
  const Eigen::Index tb = Eigen::Index{1} << target;
  // CX is a permutation P; P rho P^T permutes rows then columns.
  for (Eigen::Index r = 0; r < dim; ++r) {
    if ((r & cb) && !(r & tb)) data_.row(r).swap(data_.row(r | tb));
  }
  for (Eigen::Index c = 0; c < dim; ++c) {
    if ((c & cb) && !(c & tb)) data_.col(c).swap(data_.col(c | tb));
  }
}

void DensityMatrix::apply_pauli_channel(int qubit, const NoiseModel& nm) {
  const double fx = nm.x_factor(), fy = nm.y_factor(), fz = nm.z_factor();
  const Eigen::Index dim = data_.rows();
  const Eigen::Index b = Eigen::Index{1} << qubit;
  for (Eigen::Index c = 0; c < dim; ++c) {
    if (c & b) continue;
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (r & b) continue;
      const Complex m00 = data_(r, c), m01 = data_(r, c | b);
      const Complex m10 = data_(r | b, c), m11 = data_(r | b, c | b);
      const Complex id = 0.5 * (m00 + m11), z = 0.5 * (m00 - m11);
      const Complex x = 0.5 * (m01 + m10), y = 0.5 * (m01 - m10);
      data_(r, c) = id + fz * z;
      data_(r | b, c | b) = id - fz * z;
      data_(r, c | b) = fx * x + fy * y;
      data_(r | b, c) = fx * x - fy * y;
    }
  }
}

void DensityMatrix::apply_pauli_channel(const NoiseModel& nm) {
  if (nm.is_noiseless()) return;
  for (int q = 0; q < num_qubits_; ++q) apply_pauli_channel(q, nm);
}

DensityMatrix apply_unitary(const DensityMatrix& rho, const CMatrix& u, double tolerance) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary and state dimensions differ");
  }
  const double dev = (u * u.adjoint() - CMatrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
  if (dev > tolerance) throw Error(ErrorCode::NonUnitary, "max |U U^dagger - I| = " + std::to_string(dev));
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

DensityMatrix apply_local_pauli_channel(const DensityMatrix& rho, const NoiseModel& nm) {
  nm.validate();
  DensityMatrix out = rho;
  out.apply_pauli_channel(nm);
  return out;
}

std::vector<double> pauli_coefficients(const DensityMatrix& rho) {
  const auto traces = pauli_transform(rho.matrix());
  std::vector<double> a(traces.size() - 1);
  for (std::size_t i = 1; i < traces.size(); ++i) a[i - 1] = traces[i].real();
  return a;
}

std::vector<double> basis_probabilities(const DensityMatrix& rho) {
  std::vector<double> p(static_cast<std::size_t>(rho.dim()));
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    double v = rho.matrix()(i, i).real();
    if (v < 0.0) {
      if (v < -1e-9) throw Error(ErrorCode::Internal, "negative probability " + std::to_string(v));
      v = 0.0;
    }
    p[static_cast<std::size_t>(i)] = v;
  }
  return p;
}

double fidelity_to_pure(const DensityMatrix& rho, const CVector& target) {
  if (target.size() != rho.dim()) throw Error(ErrorCode::DimensionMismatch, "target dimension differs from state");
  if (std::abs(target.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::UnnormalizedTarget, "target norm is " + std::to_string(target.norm()));
  }
  const double f = (target.adjoint() * rho.matrix() * target)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

void write_json(std::ostream& out, const DensityMatrix& rho) {
  const auto old = out.precision(17);
  out << '[';
  for (Eigen::Index r = 0; r < rho.dim(); ++r) {
    for (Eigen::Index c = 0; c < rho.dim(); ++c) {
      if (r || c) out << ',';
      out << '[' << rho.matrix()(r, c).real() << ',' << rho.matrix()(r, c).imag() << ']';
    }
  }
  out << ']';
  out.precision(old);
}

}  // namespace vqt
