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

#ifndef MDIEW_PARTITION_HPP
#define MDIEW_PARTITION_HPP

#include <string>
#include <utility>
#include <vector>

namespace mdiew {

/// Disjoint, nonempty blocks of 0-based party indices covering 0..N-1.
class Partition {
 public:
  Partition(int party_count, std::vector<std::vector<int>> blocks);

  /// {0..k-1}{k..N-1}.
  static Partition bipartition(int party_count, int first_block_size);
  static Partition singletons(int party_count);

  [[nodiscard]] int party_count() const { return party_count_; }
  [[nodiscard]] const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  [[nodiscard]] int max_block_size() const;
  [[nodiscard]] std::string to_string() const;

 private:
  int party_count_;
  std::vector<std::vector<int>> blocks_;
};

/// The class of states a witness is guaranteed nonnegative on.
struct SeparableClass {
  enum class Kind { FullySeparable, Bipartition, KProducible };

  Kind kind = Kind::FullySeparable;
  /// Parties of side A for Kind::Bipartition (0-based).
  std::vector<int> side_a;
  /// Block bound for Kind::KProducible.
  int k = 1;

  static SeparableClass fully_separable() { return {}; }
  static SeparableClass bipartition(std::vector<int> side_a) {
    return {Kind::Bipartition, std::move(side_a), 0};
  }
  static SeparableClass k_producible(int k) { return {Kind::KProducible, {}, k}; }

  /// "fully-separable", "bipartition{1,2}{3}" or "2-producible"; parties are
  /// printed 1-based.
  [[nodiscard]] std::string describe(int party_count) const;
};

}  // namespace mdiew

#endif  // MDIEW_PARTITION_HPP
