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

// Witness operators and their expansion over ancilla product bases.
//
// For an outcome tuple (i_1..i_N) every party's ancilla states are conjugated
// by the Bell-outcome unitary, tau^i = m_i tau m_i^dagger, and the witness is
// expanded as
//
//   W = sum_x beta^{i}_{x} (tau^{i_1}_{1,x_1})^T (x) ... (x) (tau^{i_N}_{N,x_N})^T.
//
// The coefficients for all 4^N outcome tuples together define the
// all-outcome witness value evaluated in protocol.hpp.

#ifndef MDIEW_WITNESS_HPP
#define MDIEW_WITNESS_HPP

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdiew/partition.hpp"
#include "mdiew/qcore.hpp"

namespace mdiew {

/// Hermitian operator with at least one negative eigenvalue, declared
/// nonnegative on `declared_class`.
class Witness {
 public:
  Witness(ComplexMatrix op, SeparableClass declared_class, std::string name = {});

  [[nodiscard]] int party_count() const { return party_count_; }
  [[nodiscard]] const ComplexMatrix& op() const { return op_; }
  [[nodiscard]] const SeparableClass& declared_class() const { return declared_; }
  [[nodiscard]] const std::string& name() const { return name_; }

 private:
  ComplexMatrix op_;
  SeparableClass declared_;
  std::string name_;
  int party_count_;
};

/// Four ancilla states per party. Construction checks that each party's states
/// span the Hermitian operators: the Hilbert-Schmidt Gram determinant must
/// exceed kGramThreshold.
class AncillaBasis {
 public:
  static constexpr double kGramThreshold = 1e-8;

  explicit AncillaBasis(std::vector<std::vector<DensityMatrix>> per_party);

  [[nodiscard]] int party_count() const { return static_cast<int>(states_.size()); }
  /// Ancilla state x (1-based) of `party` (0-based).
  [[nodiscard]] const DensityMatrix& state(int party, int x) const;
  [[nodiscard]] const std::vector<std::vector<DensityMatrix>>& states() const { return states_; }

 private:
  std::vector<std::vector<DensityMatrix>> states_;
};

/// Gram determinant of four single-party operators under Tr[A^dagger B].
double gram_determinant(const std::vector<DensityMatrix>& states);

/// Real coefficients indexed by an ancilla-input tuple (flat index per
/// LabelTuple::index, so party 1's label varies slowest).
class CoefficientTensor {
 public:
  CoefficientTensor(int party_count, std::vector<double> values);
  static CoefficientTensor zeros(int party_count);

  [[nodiscard]] int party_count() const { return party_count_; }
  [[nodiscard]] const std::vector<double>& values() const { return values_; }
  [[nodiscard]] double at(const InputTuple& x) const { return values_[x.index()]; }
  [[nodiscard]] double& at(const InputTuple& x) { return values_[x.index()]; }
  [[nodiscard]] double operator[](std::size_t flat) const { return values_[flat]; }
  [[nodiscard]] double& operator[](std::size_t flat) { return values_[flat]; }

  /// For N = 2: rows are party 1's index, columns party 2's. For N = 3 the
  /// slice for a fixed last index is returned the same way.
  [[nodiscard]] RealMatrix matrix(int last_index = 0) const;

 private:
  int party_count_;
  std::vector<double> values_;
};

/// beta tensors for every outcome tuple, indexed by OutcomeTuple::index().
struct OutcomeCoefficientTable {
  int party_count = 0;
  std::vector<CoefficientTensor> by_outcome;

  [[nodiscard]] const CoefficientTensor& at(const OutcomeTuple& o) const { return by_outcome[o.index()]; }
};

/// tau_1 = I/2, tau_2 = (I + X)/2, tau_3 = (I + Y)/2, tau_4 = (I + Z)/2 for
/// every party.
AncillaBasis default_basis(int party_count);

/// Conjugates party k's ancilla states by m_{o_k}.
AncillaBasis transform_basis(const AncillaBasis& basis, const OutcomeTuple& outcome);

/// Unique coefficients expanding `w` over the outcome-transformed, transposed
/// product basis. The linear system is posed on the d^2 real coordinates of a
/// Hermitian operator (real diagonal, real and imaginary upper triangle).
/// Throws SingularSystemError when the estimated condition number exceeds
/// kMaxCondition or the reconstruction residual exceeds kMaxResidual.
CoefficientTensor decompose(const ComplexMatrix& w, const AncillaBasis& basis, const OutcomeTuple& outcome);
CoefficientTensor decompose(const Witness& w, const AncillaBasis& basis, const OutcomeTuple& outcome);

inline constexpr double kMaxCondition = 1e12;
inline constexpr double kMaxResidual = 1e-9;

OutcomeCoefficientTable outcome_coefficients(const Witness& w, const AncillaBasis& basis);
OutcomeCoefficientTable outcome_coefficients(const ComplexMatrix& w, const AncillaBasis& basis);

/// sum_x beta_x (x)_k (tau^{o_k}_{k,x_k})^T.
ComplexMatrix reconstruct(const CoefficientTensor& coeffs, const AncillaBasis& basis, const OutcomeTuple& outcome);

/// alpha I - |psi><psi|.
Witness projector_witness(const ComplexVector& psi, double alpha, SeparableClass declared_class,
                          std::string name = {});

/// I/2 - |psi-><psi-|, nonnegative on separable two-qubit states.
Witness werner_witness();

/// alpha I - |W><W| on three qubits. The declared class follows from the
/// largest W-state overlap of the class: alpha >= 2/3 covers 2-producible
/// states, alpha >= 4/9 covers fully separable states. Smaller alpha throws.
Witness w_state_witness(double alpha);

/// {"i1,i2,...": nested arrays}, entries as decimal strings. The outermost
/// array runs over party 1's ancilla index.
nlohmann::json to_json(const CoefficientTensor& coeffs);
nlohmann::json to_json(const OutcomeCoefficientTable& table);

}  // namespace mdiew

#endif  // MDIEW_WITNESS_HPP
