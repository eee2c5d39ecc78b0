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

// Naive dense reference implementations used to check the library.
#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M pauli(char p) {
  M m(2, 2);
  switch (p) {
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, C(0, -1), C(0, 1), 0; break;
    case 'Z': m << 1, 0, 0, -1; break;
    default: m << 1, 0, 0, 1; break;
  }
  return m;
}

inline M kron(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Leftmost letter is the most significant tensor factor (highest qubit).
inline M string_matrix(const std::string& letters) {
  M out = M::Identity(1, 1);
  for (char c : letters) out = kron(out, pauli(c));
  return out;
}

inline std::string letters_of(std::uint64_t index, int n) {
  static const char kLetters[4] = {'I', 'X', 'Y', 'Z'};
  std::string s(static_cast<std::size_t>(n), 'I');
  for (int q = 0; q < n; ++q) {
    s[static_cast<std::size_t>(n - 1 - q)] = kLetters[index & 3U];
    index >>= 2;
  }
  return s;
}

// Tr(H s) / 2^n by explicit matrix products, for every string index.
inline std::vector<double> decompose(const M& h) {
  const int n = static_cast<int>(std::log2(static_cast<double>(h.rows())) + 0.5);
  std::vector<double> out(std::size_t{1} << (2 * n));
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = (h * string_matrix(letters_of(i, n))).trace().real() / static_cast<double>(h.rows());
  }
  return out;
}

// Single-qubit operator embedded on `qubit` of an n-qubit register.
inline M embed(const M& u, int qubit, int n) {
  M out = M::Identity(1, 1);
  for (int q = n - 1; q >= 0; --q) out = kron(out, q == qubit ? u : M::Identity(2, 2));
  return out;
}

inline M cx(int control, int target, int n) {
  const Eigen::Index d = Eigen::Index{1} << n;
  M out = M::Zero(d, d);
  for (Eigen::Index x = 0; x < d; ++x) {
    const Eigen::Index y = ((x >> control) & 1) ? (x ^ (Eigen::Index{1} << target)) : x;
    out(y, x) = 1.0;
  }
  return out;
}

inline M ry(double t) {
  M m(2, 2);
  m << std::cos(t / 2), -std::sin(t / 2), std::sin(t / 2), std::cos(t / 2);
  return m;
}

// Kraus sum of the local Pauli channel on every wire.
inline M channel(const M& rho, int n, double qx, double qy, double qz) {
  M out = rho;
  for (int q = 0; q < n; ++q) {
    const M x = embed(pauli('X'), q, n), y = embed(pauli('Y'), q, n), z = embed(pauli('Z'), q, n);
    out = (1 - qx - qy - qz) * out + qx * x * out * x + qy * y * out * y + qz * z * out * z;
  }
  return out;
}

// Default ansatz (Ry layer, CX chain, channel) as a chain of dense matrices.
inline M hea_chain(const std::vector<double>& theta, int n, int blocks, const M& input, double qx, double qy,
                   double qz) {
  M rho = input;
  for (int l = 0; l < blocks; ++l) {
    M u = M::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (int j = 0; j < n; ++j) u = embed(ry(theta[static_cast<std::size_t>(l * n + j)]), j, n) * u;
    for (int j = 0; j + 1 < n; ++j) u = cx(j, j + 1, n) * u;
    rho = channel(u * rho * u.adjoint(), n, qx, qy, qz);
  }
  return rho;
}

inline M random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index d = Eigen::Index{1} << n;
  M a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = C(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

inline M random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const Eigen::Index d = Eigen::Index{1} << n;
  M a(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = C(g(rng), g(rng));
  M rho = a * a.adjoint();
  return rho / rho.trace().real();
}

}  // namespace oracle
