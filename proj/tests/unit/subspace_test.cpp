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

#include <doctest.h>

#include <cmath>
#include <random>

#include "../oracle.hpp"
#include "vqt/errors.hpp"
#include "vqt/subspace.hpp"

using namespace vqt;

namespace {

// 0.8 |00><00| + 0.2 |11><11| restricted to {00, 11}.
TruncatedObservables example_observables() {
  const std::vector<double> diag = {0.8, 0.0, 0.0, 0.2};
  return build_truncated_observables(decompose_diagonal(diag), Subspace(2, {0, 3}, "example"));
}

}  // namespace

TEST_CASE("subspace predicates") {
  const auto odd = subspace_from_predicate(4, predicates::fixed_bit(0, 1));
  CHECK(odd.dim() == 8);
  for (auto i : odd.indices()) CHECK(i % 2 == 1);
  const auto hw = subspace_from_predicate(4, predicates::hamming_weight(2));
  CHECK(hw.indices() == std::vector<BasisIndex>{3, 5, 6, 9, 10, 12});
  CHECK(subspace_from_predicate(2, predicates::all()).dim() == 4);
  CHECK_THROWS_AS(subspace_from_predicate(2, predicates::hamming_weight(3)), Error);
  const auto both = subspace_from_predicate(
      4, predicates::conjunction({predicates::fixed_bits(0b11, 0b00), predicates::hamming_weight(1)}));
  CHECK(both.indices() == std::vector<BasisIndex>{4, 8});
}

TEST_CASE("subspace parsing by name") {
  CHECK(parse_subspace(4, "fixed_bit(0,1)").dim() == 8);
  CHECK(parse_subspace(4, "hamming_weight(2)").dim() == 6);
  CHECK(parse_subspace(6, "fixed_bits(3,0)").dim() == 16);
  CHECK(parse_subspace(3, "all").dim() == 8);
  CHECK(parse_subspace(4, "fixed_bit(0,1) & hamming_weight(2)").dim() == 3);
  CHECK_THROWS_AS(parse_subspace(4, "parity(1)"), Error);
}

TEST_CASE("truncated observables for the two-level example") {
  const auto t = example_observables();
  CHECK(t.k1 == doctest::Approx(0.25));
  CHECK(t.k2 == doctest::Approx(0.5));
  CHECK(t.lambda_min == doctest::Approx(0.2));
  CHECK(t.argmin_index.value() == 3);
}

TEST_CASE("full-space truncation of Z") {
  PauliObservable z(1);
  z.add_term(PauliString("Z"), 1.0);
  const auto t = build_truncated_observables(z, Subspace(1, {0, 1}, "all"));
  CHECK(t.o1.terms() == z.terms());
  CHECK(t.o2.identity_coefficient() == doctest::Approx(1.0));
  CHECK(rank(t.o2) == 1);
  CHECK(t.o2_traceless.empty());
}

TEST_CASE("diag(3,1,4,1) restricted to {1,3}") {
  const std::vector<double> diag = {3, 1, 4, 1};
  const auto t = build_truncated_observables(decompose_diagonal(diag), Subspace(2, {1, 3}, "odd"));
  const CMatrix o1 = materialize(t.o1);
  CHECK(std::abs(o1(0, 0)) < 1e-15);
  CHECK(std::abs(o1(1, 1) - 1.0) < 1e-15);
  CHECK(std::abs(o1(2, 2)) < 1e-15);
  CHECK(std::abs(o1(3, 3) - 1.0) < 1e-15);
  CHECK(t.lambda_min == doctest::Approx(1.0));
  CHECK(t.argmin_index.value() == 1);  // tie broken by lowest index
  CHECK(t.k1 == doctest::Approx(0.5));
  CHECK(t.k2 == doctest::Approx(0.5));
}

TEST_CASE("subspace weight") {
  const Subspace s(2, {0, 3}, "example");
  CHECK(subspace_weight(DensityMatrix::basis_state(2, 3), s) == doctest::Approx(1.0));
  CHECK(subspace_weight(DensityMatrix::maximally_mixed(2), s) == doctest::Approx(0.5));
  const std::vector<double> p = {0.7, 0.04, 0.0, 0.26};
  CHECK(subspace_weight(DensityMatrix::from_diagonal(p), s) == doctest::Approx(0.96));
  CHECK_THROWS_AS(subspace_weight(DensityMatrix::maximally_mixed(3), s), Error);
}

TEST_CASE("structural invariants on random observables and subspaces") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 3;
    const BasisIndex d = BasisIndex{1} << n;
    std::vector<BasisIndex> idx;
    for (BasisIndex i = 0; i < d; ++i)
      if (rng() & 1) idx.push_back(i);
    if (idx.empty()) idx.push_back(0);
    const Subspace s(n, idx, "random");
    const CMatrix o = oracle::random_hermitian(n, rng);
    const auto t = build_truncated_observables(o, s);

    const CMatrix o2 = materialize(t.o2);
    CHECK((o2 * o2 - o2).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(t.o1_traceless.identity_coefficient()) < 1e-12);
    CHECK(std::abs(t.o2_traceless.identity_coefficient()) < 1e-12);
    CHECK(t.k2 == doctest::Approx(static_cast<double>(idx.size()) / static_cast<double>(d)));

    const auto re = decompose(materialize(t.o1));
    CHECK(std::abs(re.identity_coefficient() - t.k1) < 1e-12);
    const auto w1 = re.coefficient_vector(false);
    for (std::size_t i = 0; i < w1.size(); ++i) CHECK(std::abs(w1[i] - t.w1[i]) < 1e-12);

    const CMatrix rho = oracle::random_state(n, rng);
    const DensityMatrix dm(rho);
    const double tr1 = (rho * materialize(t.o1)).trace().real();
    CHECK(std::abs((rho * materialize(t.o1_traceless)).trace().real() - (tr1 - t.k1)) < 1e-10);
    CHECK(std::abs((rho * materialize(t.o2_traceless)).trace().real() - (subspace_weight(dm, s) - t.k2)) < 1e-10);
    CHECK(std::abs(subspace_weight(dm, s) - (rho * o2).trace().real()) < 1e-10);
  }
}
