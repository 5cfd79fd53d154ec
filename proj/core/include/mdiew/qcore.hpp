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

#ifndef MDIEW_QCORE_HPP
#define MDIEW_QCORE_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mdiew {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Absolute tolerance for Hermiticity, unit trace and positivity checks.
inline constexpr double kStateTolerance = 1e-10;

// Error hierarchy. Every precondition failure in the library throws one of
// these; nothing returns sentinel values.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};
class DimensionError : public Error {
 public:
  using Error::Error;
};
class DomainError : public Error {
 public:
  using Error::Error;
};
class ValidationError : public Error {
 public:
  using Error::Error;
};
class SingularSystemError : public Error {
 public:
  using Error::Error;
};

enum class Pauli { I, X, Y, Z };

/// Bell-measurement outcome labels. Outcome o projects onto m_o|phi+>, with
/// m_1 = I, m_2 = sigma_z, m_3 = sigma_x, m_4 = sigma_x sigma_z acting on the
/// second qubit of the pair.
enum class BellOutcome : int { PhiPlus = 1, PhiMinus = 2, PsiPlus = 3, PsiMinus = 4 };

inline constexpr int kLabels = 4;  // outcomes per party and ancilla states per party

/// Checked conversion from a 1-based label.
BellOutcome bell_outcome(int label);

// ---------------------------------------------------------------------------
// Label tuples
// ---------------------------------------------------------------------------

/// Per-party labels in {1,2,3,4}, party 1 first. Used for both BSM outcome
/// tuples and ancilla-input tuples. The flat index is the base-4 number whose
/// most significant digit is party 1's label minus one.
class LabelTuple {
 public:
  LabelTuple() = default;
  explicit LabelTuple(std::vector<int> labels);

  static LabelTuple from_index(std::size_t index, int party_count);
  static LabelTuple all_ones(int party_count);
  /// Parses "1,2,4".
  static LabelTuple parse(const std::string& text);

  [[nodiscard]] int party_count() const { return static_cast<int>(labels_.size()); }
  [[nodiscard]] int operator[](int party) const { return labels_[static_cast<std::size_t>(party)]; }
  [[nodiscard]] const std::vector<int>& labels() const { return labels_; }
  [[nodiscard]] std::size_t index() const;
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const LabelTuple&, const LabelTuple&) = default;

 private:
  std::vector<int> labels_;
};

using OutcomeTuple = LabelTuple;
using InputTuple = LabelTuple;

/// 4^n, the number of label tuples for n parties.
std::size_t tuple_count(int party_count);

// ---------------------------------------------------------------------------
// Dense primitives
// ---------------------------------------------------------------------------

/// Kronecker product; the left operand indexes the most significant block.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);

/// Reduced operator on the subsystems listed in `keep` (0-based, any order;
/// the output keeps them in ascending order).
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep);

/// Entrywise transpose, no conjugation.
ComplexMatrix transpose(const ComplexMatrix& m);

/// Reorders qubit subsystems: qubit j of the result is qubit order[j] of `m`.
ComplexMatrix permute_qubits(const ComplexMatrix& m, std::span<const int> order);

ComplexMatrix pauli(Pauli p);

/// The unitary m_o that maps |phi+> to the Bell state of outcome o.
ComplexMatrix outcome_unitary(BellOutcome o);

ComplexMatrix bell_projector(BellOutcome o);

/// (|00> + |11>)/sqrt(2).
ComplexVector phi_plus();

ComplexMatrix identity(Eigen::Index dim);

/// Largest absolute entry of m - m^dagger.
double hermiticity_error(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kStateTolerance);

/// Smallest eigenvalue of a Hermitian matrix. Throws ValidationError on
/// non-Hermitian input.
double min_eigenvalue(const ComplexMatrix& m);

/// Tr[A*B] without forming the product.
Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Number of qubits for a 2^n dimension; throws DimensionError otherwise.
int qubit_count_for_dim(Eigen::Index dim);

// ---------------------------------------------------------------------------
// DensityMatrix
// ---------------------------------------------------------------------------

/// Hermitian, unit-trace, positive semidefinite operator. Construction
/// validates all three invariants at kStateTolerance.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix from_pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  [[nodiscard]] Eigen::Index dim() const { return matrix_.rows(); }
  [[nodiscard]] const ComplexMatrix& matrix() const { return matrix_; }
  /// Number of qubits; throws if dim is not a power of two.
  [[nodiscard]] int qubit_count() const { return qubit_count_for_dim(dim()); }

 private:
  ComplexMatrix matrix_;
};

}  // namespace mdiew

#endif  // MDIEW_QCORE_HPP
