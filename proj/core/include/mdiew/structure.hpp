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

// Entanglement structure and depth. Membership in a class is only ever known
// through the certificate a state was generated with.

#ifndef MDIEW_STRUCTURE_HPP
#define MDIEW_STRUCTURE_HPP

#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdiew/partition.hpp"
#include "mdiew/protocol.hpp"
#include "mdiew/states.hpp"
#include "mdiew/witness.hpp"

namespace mdiew {

/// The state is k-producible, so its depth is at most k.
class DepthClaim {
 public:
  DepthClaim(int k, int party_count);
  [[nodiscard]] int k() const { return k_; }
  [[nodiscard]] int party_count() const { return party_count_; }

 private:
  int k_;
  int party_count_;
};

/// Largest block over all certificate terms.
int certificate_depth(const StructuredState& s);

/// Certificate of the mapped operator for `outcome`: every block is sent
/// through the map restricted to its own parties, weights are kept.
Certificate map_certificate(const Certificate& cert, std::span<const Povm> povms, const OutcomeTuple& outcome);

/// A random certificate-bearing state of `cls` on `party_count` qubits.
StructuredState sample_class(const SeparableClass& cls, int party_count, int term_count, Rng& rng);

/// Whether every term of `cert` fits `cls` (blocks inside one side of the
/// bipartition, single parties, or at most k parties).
bool certificate_fits(const Certificate& cert, const SeparableClass& cls, int party_count);

enum class DeviceModel { Ideal, RandomPovm };

struct HarnessReport {
  std::string witness;
  std::string cls;
  DeviceModel devices = DeviceModel::RandomPovm;
  int trials = 0;
  double min_value = 0.0;
  int violations = 0;
  Seed seed;
};

inline constexpr double kViolationTolerance = 1e-7;

/// For each trial samples a state of the witness's declared class and, for
/// DeviceModel::RandomPovm, one random four-outcome POVM per party; records
/// the all-outcome value. A value below -kViolationTolerance is a violation.
HarnessReport structure_witness_check(const Witness& w, int trials, Seed seed,
                                      DeviceModel devices = DeviceModel::RandomPovm, int term_count = 3);

nlohmann::json to_json(const HarnessReport& report);

struct DepthVerdict {
  double alpha = 0.0;
  double value = 0.0;
  bool detected = false;
  /// Depth implied by a detection: 3 for alpha >= 2/3, 2 for alpha >= 4/9.
  int depth_lower_bound = 0;
  std::string statement;
};

/// Ideal-measurement value of alpha I - |W><W| on a three-qubit state.
DepthVerdict depth_detection(const DensityMatrix& state, double alpha);

nlohmann::json to_json(const DepthVerdict& verdict);

}  // namespace mdiew

#endif  // MDIEW_STRUCTURE_HPP
