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

#include "mdiew/states.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace mdiew {
namespace {

using testing::max_abs_diff;

TEST(Rng, StreamsAreReproducibleAndDistinct) {
  Rng a = make_rng(Seed{42}, 3);
  Rng b = make_rng(Seed{42}, 3);
  Rng c = make_rng(Seed{42}, 4);
  const auto first = a();
  EXPECT_EQ(first, b());
  EXPECT_NE(first, c());
  EXPECT_EQ(derive_seed(Seed{9}, 1), derive_seed(Seed{9}, 1));
  EXPECT_NE(derive_seed(Seed{9}, 1), derive_seed(Seed{9}, 2));
}

TEST(Werner, EndpointsAndMixture) {
  const ComplexVector s = singlet_vector();
  EXPECT_LT(max_abs_diff(werner(1.0).matrix(), s * s.adjoint()), 1e-15);
  EXPECT_LT(max_abs_diff(werner(0.0).matrix(), identity(4) / 4.0), 1e-15);
  const ComplexMatrix half = 0.5 * s * s.adjoint() + 0.5 * identity(4) / 4.0;
  EXPECT_LT(max_abs_diff(werner(0.5).matrix(), half), 1e-15);
}

TEST(Werner, RejectsOutOfRangeWeight) {
  EXPECT_THROW(werner(-0.1), DomainError);
  EXPECT_THROW(werner(1.1), DomainError);
}

TEST(WState, AmplitudesAndMarginal) {
  const ComplexVector w = w_state_vector();
  ASSERT_EQ(w.size(), 8);
  const double amp = 1.0 / std::sqrt(3.0);
  EXPECT_NEAR(w(1).real(), amp, 1e-15);  // |001>
  EXPECT_NEAR(w(2).real(), amp, 1e-15);  // |010>
  EXPECT_NEAR(w(4).real(), amp, 1e-15);  // |100>
  EXPECT_NEAR(w.norm(), 1.0, 1e-15);
  // one-party marginal is diag(2/3, 1/3)
  const ComplexMatrix rho = w_state_noise(1.0).matrix();
  const std::vector<int> dims{2, 2, 2};
  const ComplexMatrix m = partial_trace(rho, dims, std::vector<int>{0});
  EXPECT_NEAR(m(0, 0).real(), 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(m(1, 1).real(), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(std::abs(m(0, 1)), 0.0, 1e-12);
}

TEST(Povm, IdealBsmIsTheBellBasis) {
  const Povm p = ideal_bsm_povm();
  EXPECT_NO_THROW(p.validate());
  ASSERT_EQ(p.elements.size(), 4u);
  for (int a = 1; a <= 4; ++a) {
    EXPECT_LT(max_abs_diff(p.elements[static_cast<std::size_t>(a - 1)], bell_projector(bell_outcome(a))), 1e-15);
  }
}

TEST(Povm, NoisyBsmInterpolatesToWhiteNoise) {
  EXPECT_NO_THROW(noisy_bsm(0.3).validate());
  const Povm flat = noisy_bsm(0.0);
  for (const ComplexMatrix& e : flat.elements) EXPECT_LT(max_abs_diff(e, identity(4) / 4.0), 1e-15);
  EXPECT_THROW(noisy_bsm(1.5), DomainError);
}

TEST(Povm, RandomPovmsAreValidAndSeeded) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Povm p = random_povm(4, 4, Seed{s});
    EXPECT_NO_THROW(p.validate());
    EXPECT_EQ(p.dim, 4);
  }
  const Povm a = random_povm(4, 4, Seed{5});
  const Povm b = random_povm(4, 4, Seed{5});
  EXPECT_EQ(a.elements[2], b.elements[2]);
}

TEST(Povm, ValidateRejectsIncompleteSets) {
  Povm p = ideal_bsm_povm();
  p.elements.pop_back();
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(RandomDensity, IsAValidState) {
  Rng rng = make_rng(Seed{11});
  for (int t = 0; t < 20; ++t) {
    const DensityMatrix d = random_density(8, rng);
    EXPECT_NEAR(d.matrix().trace().real(), 1.0, 1e-12);
    EXPECT_GT(min_eigenvalue(d.matrix()), -1e-12);
  }
}

TEST(RandomSeparable, CertificateReassemblesAndFitsBlocks) {
  const std::vector<int> ones{1, 1, 1};
  for (std::uint64_t s = 0; s < 10; ++s) {
    const StructuredState st = random_separable(ones, 4, Seed{s});
    EXPECT_EQ(st.certificate().max_block_size(), 1);
    EXPECT_NEAR(st.certificate().total_weight(), 1.0, 1e-12);
    EXPECT_LT((assemble(st.certificate(), 3) - st.state().matrix()).norm(), 1e-10);
  }
}

TEST(RandomKProducible, RespectsBlockBound) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const StructuredState st = random_k_producible(3, 2, 3, Seed{s});
    EXPECT_LE(st.certificate().max_block_size(), 2);
    EXPECT_LT((assemble(st.certificate(), 3) - st.state().matrix()).norm(), 1e-10);
  }
}

TEST(ProductState, IsTheTensorProduct) {
  const DensityMatrix a = DensityMatrix::from_pure(ComplexVector::Unit(2, 0));
  const DensityMatrix b = DensityMatrix::maximally_mixed(2);
  const StructuredState st = product_state({a, b});
  EXPECT_LT(max_abs_diff(st.state().matrix(), oracle::kron(a.matrix(), b.matrix())), 1e-15);
}

TEST(StructuredState, RejectsInconsistentCertificate) {
  const StructuredState good = product_state({DensityMatrix::maximally_mixed(2), DensityMatrix::maximally_mixed(2)});
  const DensityMatrix other = werner(0.5);
  EXPECT_THROW(StructuredState(other, good.certificate(), 2), ValidationError);
}

}  // namespace
}  // namespace mdiew
