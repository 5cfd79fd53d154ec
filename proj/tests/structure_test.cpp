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

#include "mdiew/structure.hpp"
#include "oracles.hpp"
#include "support.hpp"

namespace mdiew {
namespace {

using testing::max_abs_diff;

std::vector<Povm> random_povms(int n, Rng& rng) {
  std::vector<Povm> out;
  for (int k = 0; k < n; ++k) out.push_back(random_povm(4, 4, rng));
  return out;
}

TEST(Partition, ValidatesAndPrints) {
  EXPECT_EQ(Partition::bipartition(3, 1).to_string(), "{1}{2,3}");
  EXPECT_EQ(Partition::singletons(3).max_block_size(), 1);
  EXPECT_THROW(Partition(3, {{0}, {0, 1, 2}}), ValidationError);
  EXPECT_THROW(Partition(3, {{0}, {1}}), ValidationError);
  EXPECT_THROW(Partition::bipartition(3, 3), DomainError);
}

TEST(SeparableClass, Describe) {
  EXPECT_EQ(SeparableClass::fully_separable().describe(3), "fully-separable");
  EXPECT_EQ(SeparableClass::k_producible(2).describe(3), "2-producible");
  EXPECT_EQ(SeparableClass::bipartition({0, 2}).describe(3), "bipartition{1,3}{2}");
}

TEST(DepthClaim, Bounds) {
  EXPECT_NO_THROW(DepthClaim(2, 3));
  EXPECT_THROW(DepthClaim(0, 3), DomainError);
  EXPECT_THROW(DepthClaim(4, 3), DomainError);
}

TEST(SampleClass, CertificatesFitTheirClass) {
  Rng rng = make_rng(Seed{50});
  const std::vector<SeparableClass> classes{SeparableClass::fully_separable(), SeparableClass::k_producible(2),
                                            SeparableClass::bipartition({1})};
  for (const SeparableClass& cls : classes) {
    for (int t = 0; t < 10; ++t) {
      const StructuredState s = sample_class(cls, 3, 3, rng);
      EXPECT_TRUE(certificate_fits(s.certificate(), cls, 3)) << cls.describe(3);
      EXPECT_LT((assemble(s.certificate(), 3) - s.state().matrix()).norm(), 1e-10);
    }
  }
  const StructuredState sep = sample_class(SeparableClass::fully_separable(), 3, 2, rng);
  EXPECT_EQ(certificate_depth(sep), 1);
  Certificate joint;
  joint.terms.push_back({1.0, {{{0}, identity(2) / 2.0}, {{1, 2}, identity(4) / 4.0}}});
  EXPECT_FALSE(certificate_fits(joint, SeparableClass::fully_separable(), 3));
  EXPECT_TRUE(certificate_fits(joint, SeparableClass::bipartition({0}), 3));
  EXPECT_FALSE(certificate_fits(joint, SeparableClass::bipartition({1}), 3));
}

TEST(MapCertificate, BlockwiseMapEqualsMapOfTheState) {
  Rng rng = make_rng(Seed{51});
  for (int t = 0; t < 10; ++t) {
    const StructuredState s = sample_class(SeparableClass::k_producible(2), 3, 3, rng);
    const std::vector<Povm> povms = random_povms(3, rng);
    const OutcomeTuple o = OutcomeTuple::from_index(static_cast<std::size_t>(t * 7) % 64, 3);
    const Certificate mapped = map_certificate(s.certificate(), povms, o);
    EXPECT_LT(max_abs_diff(assemble(mapped, 3), apply_map_m(s.state(), povms, o)), 1e-10);
    EXPECT_LE(mapped.max_block_size(), 2);
    for (const CertificateTerm& term : mapped.terms) {
      for (const CertificateBlock& b : term.blocks) EXPECT_GT(min_eigenvalue(b.op), -1e-12);
    }
  }
}

TEST(Harness, NoViolationsOnDeclaredClasses) {
  const std::vector<Witness> witnesses{werner_witness(), w_state_witness(2.0 / 3.0), w_state_witness(4.0 / 9.0)};
  for (const Witness& w : witnesses) {
    for (DeviceModel d : {DeviceModel::Ideal, DeviceModel::RandomPovm}) {
      const HarnessReport r = structure_witness_check(w, 100, Seed{52}, d);
      EXPECT_EQ(r.violations, 0) << w.name();
      EXPECT_GE(r.min_value, -kViolationTolerance) << w.name();
      EXPECT_EQ(r.trials, 100);
    }
  }
}

TEST(Harness, IsSeedDeterministic) {
  const HarnessReport a = structure_witness_check(werner_witness(), 20, Seed{9});
  const HarnessReport b = structure_witness_check(werner_witness(), 20, Seed{9});
  EXPECT_EQ(a.min_value, b.min_value);
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Harness, UndercutWitnessIsNegativeOnABiseparableState) {
  // |0> (x) (|01> + |10>)/sqrt2 has W fidelity 2/3, beyond the 4/9 offset.
  ComplexVector psi = ComplexVector::Zero(8);
  psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
  const DensityMatrix rho = DensityMatrix::from_pure(psi);
  const AncillaBasis basis = default_basis(3);
  const double value =
      mdiew_value(probability_table(rho, basis, IdealBsm{}), outcome_coefficients(w_state_witness(4.0 / 9.0), basis));
  EXPECT_NEAR(value, 8.0 * (4.0 / 9.0 - 2.0 / 3.0), 1e-9);
  const double safe =
      mdiew_value(probability_table(rho, basis, IdealBsm{}), outcome_coefficients(w_state_witness(2.0 / 3.0), basis));
  EXPECT_GE(safe, -1e-9);
}

TEST(DepthDetection, Verdicts) {
  const DepthVerdict deep = depth_detection(w_state_noise(0.65), 2.0 / 3.0);
  EXPECT_TRUE(deep.detected);
  EXPECT_EQ(deep.depth_lower_bound, 3);
  EXPECT_NEAR(deep.value, 16.0 / 3.0 - 1.0 - 7.0 * 0.65, 1e-9);
  EXPECT_EQ(deep.statement, "genuinely tripartite entangled, depth 3");

  const DepthVerdict shallow = depth_detection(w_state_noise(0.5), 4.0 / 9.0);
  EXPECT_TRUE(shallow.detected);
  EXPECT_EQ(shallow.depth_lower_bound, 2);

  const DepthVerdict none = depth_detection(w_state_noise(0.6), 2.0 / 3.0);
  EXPECT_FALSE(none.detected);
  EXPECT_EQ(none.statement, "not detected");

  EXPECT_NEAR(depth_detection(w_state_noise(13.0 / 21.0), 2.0 / 3.0).value, 0.0, 1e-9);
  EXPECT_NEAR(depth_detection(w_state_noise(23.0 / 63.0), 4.0 / 9.0).value, 0.0, 1e-9);
  EXPECT_THROW(depth_detection(werner(0.5), 2.0 / 3.0), DimensionError);
}

}  // namespace
}  // namespace mdiew
