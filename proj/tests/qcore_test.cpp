// Copyright 2026 The mdiew Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <vector>

#include "mdiew/qcore.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace mdiew {
namespace {

using testing::max_abs_diff;
using testing::random_complex;
using testing::random_hermitian;

TEST(TensorProduct, IdentitiesGiveIdentity) {
  EXPECT_EQ(tensor_product(identity(2), identity(2)), identity(4));
}

TEST(TensorProduct, TraceIsMultiplicative) {
  Rng rng = make_rng(Seed{1});
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_complex(3, 3, rng);
    const ComplexMatrix b = random_complex(2, 2, rng);
    EXPECT_NEAR(std::abs(tensor_product(a, b).trace() - a.trace() * b.trace()), 0.0, 1e-12);
  }
}

TEST(TensorProduct, MatchesIndexFormula) {
  const ComplexMatrix xz = tensor_product(pauli(Pauli::X), pauli(Pauli::Z));
  EXPECT_EQ(xz, oracle::kron(pauli(Pauli::X), pauli(Pauli::Z)));
  // off-diagonal 2x2 blocks only
  EXPECT_EQ(xz.block(0, 0, 2, 2), ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(xz.block(2, 2, 2, 2), ComplexMatrix::Zero(2, 2));
  EXPECT_EQ(xz.block(0, 2, 2, 2), pauli(Pauli::Z));

  Rng rng = make_rng(Seed{2});
  const ComplexMatrix a = random_complex(2, 3, rng);
  const ComplexMatrix b = random_complex(4, 2, rng);
  EXPECT_LT(max_abs_diff(tensor_product(a, b), oracle::kron(a, b)), 1e-15);
}

TEST(TensorProduct, IsAssociative) {
  Rng rng = make_rng(Seed{3});
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = random_complex(2, 2, rng);
    const ComplexMatrix b = random_complex(2, 2, rng);
    const ComplexMatrix c = random_complex(2, 2, rng);
    EXPECT_LT(max_abs_diff(tensor_product(tensor_product(a, b), c), tensor_product(a, tensor_product(b, c))), 1e-12);
    const std::vector<ComplexMatrix> all{a, b, c};
    EXPECT_LT(max_abs_diff(tensor_product(all), oracle::kron_all(all)), 1e-12);
  }
}

TEST(PartialTrace, MaximallyEntangledMarginal) {
  const ComplexVector phi = phi_plus();
  const ComplexMatrix rho = phi * phi.adjoint();
  const std::vector<int> dims{2, 2};
  const std::vector<int> keep{0};
  EXPECT_LT(max_abs_diff(partial_trace(rho, dims, keep), identity(2) / 2.0), 1e-15);
}

TEST(PartialTrace, KeepingEverythingIsIdentity) {
  Rng rng = make_rng(Seed{4});
  const ComplexMatrix m = random_complex(8, 8, rng);
  const std::vector<int> dims{2, 2, 2};
  const std::vector<int> keep{0, 1, 2};
  EXPECT_EQ(partial_trace(m, dims, keep), m);
}

TEST(PartialTrace, FactorizesOnProducts) {
  Rng rng = make_rng(Seed{5});
  for (int t = 0; t < 10; ++t) {
    const ComplexMatrix a = random_complex(2, 2, rng);
    const ComplexMatrix b = random_complex(4, 4, rng);
    const ComplexMatrix ab = tensor_product(a, b);
    const std::vector<int> dims{2, 4};
    EXPECT_LT(max_abs_diff(partial_trace(ab, dims, std::vector<int>{1}), a.trace() * b), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(ab, dims, std::vector<int>{0}), b.trace() * a), 1e-12);
  }
}

TEST(PartialTrace, MatchesDirectSummation) {
  Rng rng = make_rng(Seed{6});
  const ComplexMatrix m = random_complex(8, 8, rng);
  const std::vector<int> dims{2, 4};
  EXPECT_LT(max_abs_diff(partial_trace(m, dims, std::vector<int>{0}), oracle::trace_second(m, 2, 4)), 1e-12);
  EXPECT_LT(max_abs_diff(partial_trace(m, dims, std::vector<int>{1}), oracle::trace_first(m, 2, 4)), 1e-12);
  // middle qubit of three
  const std::vector<int> qubits{2, 2, 2};
  const ComplexMatrix middle = partial_trace(m, qubits, std::vector<int>{1});
  ComplexMatrix expected = ComplexMatrix::Zero(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c) expected(i, j) += m(a * 4 + i * 2 + c, a * 4 + j * 2 + c);
  EXPECT_LT(max_abs_diff(middle, expected), 1e-12);
}

TEST(PartialTrace, RejectsDimensionMismatch) {
  const std::vector<int> dims{2, 3};
  EXPECT_THROW(partial_trace(identity(4), dims, std::vector<int>{0}), DimensionError);
}

TEST(Transpose, PauliYIsAntisymmetric) { EXPECT_EQ(transpose(pauli(Pauli::Y)), -pauli(Pauli::Y)); }

TEST(Transpose, RealDiagonalIsFixed) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1.5;
  d(1, 1) = -2.0;
  d(2, 2) = 0.25;
  EXPECT_EQ(transpose(d), d);
}

TEST(Transpose, DistributesOverTensorProducts) {
  Rng rng = make_rng(Seed{7});
  const ComplexMatrix a = random_complex(2, 2, rng);
  const ComplexMatrix b = random_complex(2, 2, rng);
  EXPECT_LT(max_abs_diff(transpose(tensor_product(a, b)), tensor_product(transpose(a), transpose(b))), 1e-15);
  EXPECT_EQ(transpose(transpose(a)), a);
}

TEST(Pauli, ExplicitMatrices) {
  ComplexMatrix z(2, 2);
  z << 1, 0, 0, -1;
  EXPECT_EQ(pauli(Pauli::I), identity(2));
  EXPECT_EQ(pauli(Pauli::Z), z);
  ComplexMatrix xz(2, 2);
  xz << 0, -1, 1, 0;
  EXPECT_EQ(pauli(Pauli::X) * pauli(Pauli::Z), xz);
}

TEST(BellProjector, FirstOutcomeIsPhiPlus) {
  ComplexVector phi(4);
  phi << 1, 0, 0, 1;
  phi /= std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(bell_projector(BellOutcome::PhiPlus), phi * phi.adjoint()), 1e-15);
}

TEST(BellProjector, FourthOutcomeIsSinglet) {
  ComplexVector psi(4);
  psi << 0, 1, -1, 0;
  psi /= std::sqrt(2.0);
  EXPECT_LT(max_abs_diff(bell_projector(BellOutcome::PsiMinus), psi * psi.adjoint()), 1e-15);
}

TEST(BellProjector, CompleteAndOrthogonal) {
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (int a = 1; a <= 4; ++a) {
    sum += bell_projector(bell_outcome(a));
    for (int b = a + 1; b <= 4; ++b) {
      EXPECT_LT((bell_projector(bell_outcome(a)) * bell_projector(bell_outcome(b))).norm(), 1e-12);
    }
  }
  EXPECT_LT(max_abs_diff(sum, identity(4)), 1e-12);
}

TEST(MinEigenvalue, SimpleCases) {
  EXPECT_NEAR(min_eigenvalue(identity(2)), 1.0, 1e-12);
  EXPECT_NEAR(min_eigenvalue(bell_projector(BellOutcome::PhiPlus)), 0.0, 1e-12);
}

TEST(MinEigenvalue, MatchesBisectionAtTwoByTwo) {
  Rng rng = make_rng(Seed{8});
  for (int t = 0; t < 50; ++t) {
    const ComplexMatrix h = random_hermitian(2, rng);
    EXPECT_NEAR(min_eigenvalue(h), oracle::min_eigenvalue_2x2(h), 1e-10);
  }
}

TEST(MinEigenvalue, RejectsNonHermitian) {
  ComplexMatrix m = identity(2);
  m(0, 1) = 1.0;
  EXPECT_THROW(min_eigenvalue(m), ValidationError);
}

TEST(LabelTuple, IndexRoundTrip) {
  for (std::size_t i = 0; i < tuple_count(3); ++i) EXPECT_EQ(LabelTuple::from_index(i, 3).index(), i);
  EXPECT_EQ(LabelTuple::parse("1,2").index(), 1u);
  EXPECT_EQ(LabelTuple::parse("2,1").index(), 4u);
  EXPECT_EQ(LabelTuple::parse("4,4,4").to_string(), "4,4,4");
  EXPECT_THROW(LabelTuple::parse("1,5"), DomainError);
}

TEST(DensityMatrix, ValidatesInvariants) {
  EXPECT_NO_THROW(DensityMatrix(identity(2) / 2.0));
  EXPECT_THROW(DensityMatrix(identity(2)), ValidationError);
  ComplexMatrix neg(2, 2);
  neg << 1.5, 0, 0, -0.5;
  EXPECT_THROW(DensityMatrix{neg}, ValidationError);
  ComplexMatrix non_h(2, 2);
  non_h << 0.5, 0.1, 0.0, 0.5;
  EXPECT_THROW(DensityMatrix{non_h}, ValidationError);
}

}  // namespace
}  // namespace mdiew
