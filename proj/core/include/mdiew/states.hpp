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

#ifndef MDIEW_STATES_HPP
#define MDIEW_STATES_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "mdiew/qcore.hpp"

namespace mdiew {

// ---------------------------------------------------------------------------
// Randomness
// ---------------------------------------------------------------------------

struct Seed {
  std::uint64_t value = 0;
  friend bool operator==(const Seed&, const Seed&) = default;
};

using Rng = std::mt19937_64;
inline constexpr std::string_view kGeneratorName = "mt19937_64";

/// Generator for an independent stream of `seed`. Distinct streams of one seed
/// and distinct seeds give unrelated sequences.
Rng make_rng(Seed seed, std::uint64_t stream = 0);

/// A child seed for stream `stream`, for handing to samplers that take a Seed.
Seed derive_seed(Seed seed, std::uint64_t stream);

// ---------------------------------------------------------------------------
// POVMs
// ---------------------------------------------------------------------------

/// Positive operator-valued measure; elements are indexed by outcome, so
/// element 0 is outcome 1.
struct Povm {
  Eigen::Index dim = 0;
  std::vector<ComplexMatrix> elements;

  /// Throws ValidationError unless every element is Hermitian PSD and the
  /// elements sum to the identity, all at kStateTolerance.
  void validate() const;
};

/// Projective Bell measurement on (ancilla, system); outcome o is
/// bell_projector(o).
Povm ideal_bsm_povm();

/// v * bell_projector(o) + (1 - v) I/4 for each outcome.
Povm noisy_bsm(double visibility);

/// Random POVM with `n_outcomes` elements: G_i G_i^dagger normalized by the
/// symmetric inverse square root of their sum.
Povm random_povm(Eigen::Index dim, int n_outcomes, Seed seed);
Povm random_povm(Eigen::Index dim, int n_outcomes, Rng& rng);

// ---------------------------------------------------------------------------
// Structure certificates
// ---------------------------------------------------------------------------

/// One tensor factor: an operator on `parties` (0-based, ascending).
struct CertificateBlock {
  std::vector<int> parties;
  ComplexMatrix op;
};

struct CertificateTerm {
  double weight = 0.0;
  std::vector<CertificateBlock> blocks;
};

/// sum_x weight_x (tensor over blocks), the witness that a state belongs to a
/// separable or producible class. Blocks are plain operators so that mapped
/// (unnormalized) certificates share the type.
struct Certificate {
  std::vector<CertificateTerm> terms;

  [[nodiscard]] double total_weight() const;
  /// Largest number of parties in any block of any term.
  [[nodiscard]] int max_block_size() const;
};

/// Assembles the operator on `party_count` qubits described by `cert`,
/// placing every block on its parties.
ComplexMatrix assemble(const Certificate& cert, int party_count);

/// A density matrix together with the certificate it was generated from.
class StructuredState {
 public:
  /// Validates weights (nonnegative, summing to 1), every block as a density
  /// matrix on its parties, the block cover of every term, and that the
  /// certificate reassembles to `state` within 1e-10 Frobenius.
  StructuredState(DensityMatrix state, Certificate certificate, int party_count);

  [[nodiscard]] const DensityMatrix& state() const { return state_; }
  [[nodiscard]] const Certificate& certificate() const { return certificate_; }
  [[nodiscard]] int party_count() const { return party_count_; }

 private:
  DensityMatrix state_;
  Certificate certificate_;
  int party_count_;
};

// ---------------------------------------------------------------------------
// Named states and samplers
// ---------------------------------------------------------------------------

/// (|01> - |10>)/sqrt(2).
ComplexVector singlet_vector();
/// (|001> + |010> + |100>)/sqrt(3).
ComplexVector w_state_vector();

/// p |psi-><psi-| + (1 - p) I/4.
DensityMatrix werner(double p);
/// p |W><W| + (1 - p) I/8.
DensityMatrix w_state_noise(double p);

/// Ginibre-ensemble mixed state: G G^dagger / Tr with standard complex
/// Gaussian entries.
DensityMatrix random_density(Eigen::Index dim, Rng& rng);
/// Normalized complex Gaussian vector.
ComplexVector random_pure_vector(Eigen::Index dim, Rng& rng);

/// Single-term product of `parts`; consecutive parties are assigned to each
/// part according to its qubit count.
StructuredState product_state(const std::vector<DensityMatrix>& parts);

/// Mixture of `term_count` products over the fixed consecutive partition
/// given by `block_sizes` (qubits per block). Mixture weights are uniform on
/// the simplex.
StructuredState random_separable(const std::vector<int>& block_sizes, int term_count, Seed seed);
StructuredState random_separable(const std::vector<int>& block_sizes, int term_count, Rng& rng);

/// Mixture of `term_count` products over random partitions of the parties
/// into blocks of at most k parties. The first term cuts a shuffled party
/// order into maximal blocks of size k; later terms draw every block size
/// uniformly, so k = n_parties with one term is an unconstrained state.
StructuredState random_k_producible(int n_parties, int k, int term_count, Seed seed);
StructuredState random_k_producible(int n_parties, int k, int term_count, Rng& rng);

}  // namespace mdiew

#endif  // MDIEW_STATES_HPP
