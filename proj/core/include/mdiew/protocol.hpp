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

// Outcome statistics of the witnessing protocol.
//
// Party k holds an ancilla qubit prepared in tau_{k,x_k} and system qubit k of
// the shared state. A measurement acts on each (ancilla_k, system_k) pair and
// returns a label in 1..4. Probabilities carry the 2^-N normalization, so the
// all-outcome value of an ideal Bell measurement is 2^N Tr[W rho] and the
// single-outcome value is Tr[W rho] / 2^N.

#ifndef MDIEW_PROTOCOL_HPP
#define MDIEW_PROTOCOL_HPP

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mdiew/qcore.hpp"
#include "mdiew/states.hpp"
#include "mdiew/witness.hpp"

namespace mdiew {

/// Projective Bell measurement on every pair.
struct IdealBsm {};

/// One four-outcome POVM per party on its (ancilla, system) pair, ancilla as
/// the first qubit.
struct PerPartyPovm {
  std::vector<Povm> povms;
};

using MeasurementModel = std::variant<IdealBsm, PerPartyPovm>;

/// The per-party POVMs a model stands for.
std::vector<Povm> model_povms(const MeasurementModel& model, int party_count);

/// Throws unless `povms` holds `party_count` valid four-outcome POVMs on two
/// qubits.
void validate_povms(std::span<const Povm> povms, int party_count);

/// P(outcome | input) for all 4^N x 4^N pairs; value(o, x) is stored at
/// o.index() * 4^N + x.index().
class ProbabilityTable {
 public:
  ProbabilityTable(int party_count, std::vector<double> values);

  [[nodiscard]] int party_count() const { return party_count_; }
  [[nodiscard]] std::size_t tuple_count() const { return count_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double at(const OutcomeTuple& o, const InputTuple& x) const {
    return values_[o.index() * count_ + x.index()];
  }
  [[nodiscard]] double at(std::size_t outcome, std::size_t input) const { return values_[outcome * count_ + input]; }

  /// Throws ValidationError unless entries lie in [0, 1] within 1e-10 and every
  /// input row sums to 1 within 1e-9.
  void validate() const;

 private:
  int party_count_;
  std::size_t count_;
  std::vector<double> values_;
};

/// 2^-N Tr[(x)_k (tau^{o_k}_{k,x_k})^T rho].
double ideal_probability(const DensityMatrix& state, const AncillaBasis& basis, const OutcomeTuple& outcome,
                         const InputTuple& input);

inline constexpr int kDefaultJointSpaceCap = 4;

/// Tr[(E_{o_1} (x) ... (x) E_{o_N}) (tau_{1,x_1} (x) rho_1 (x) ... )], evaluated
/// on the full 4^N-dimensional space with ancilla_k next to system_k. Throws
/// DimensionError above `max_parties`.
double povm_probability(const DensityMatrix& state, const AncillaBasis& basis, std::span<const Povm> povms,
                        const OutcomeTuple& outcome, const InputTuple& input,
                        int max_parties = kDefaultJointSpaceCap);

/// Tr_sys[(E_{o_1} (x) ... (x) E_{o_N})(I_anc (x) rho)], an operator on the
/// ancillas with P(o | x) = Tr[(x)_k tau_{k,x_k} M].
ComplexMatrix apply_map_m(const ComplexMatrix& op, std::span<const Povm> povms, const OutcomeTuple& outcome);
ComplexMatrix apply_map_m(const DensityMatrix& state, std::span<const Povm> povms, const OutcomeTuple& outcome);

/// Full probability table; both models go through the map above.
ProbabilityTable probability_table(const DensityMatrix& state, const AncillaBasis& basis,
                                   const MeasurementModel& model);

/// sum over outcomes o and inputs x of beta^o_x P(o | x).
double mdiew_value(const ProbabilityTable& table, const OutcomeCoefficientTable& coeffs);

/// sum over inputs x of beta_x P(1,...,1 | x).
double single_outcome_value(const ProbabilityTable& table, const CoefficientTensor& coeffs);

/// CSV with columns outcome1..outcomeN,input1..inputN,probability.
std::string to_csv(const ProbabilityTable& table);

}  // namespace mdiew

#endif  // MDIEW_PROTOCOL_HPP
