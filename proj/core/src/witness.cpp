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

#include "mdiew/witness.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "mdiew/format.hpp"
#include "mdiew/states.hpp"

namespace mdiew {

namespace {

// d^2 real coordinates of a Hermitian d x d matrix: the real diagonal, then
// (Re, Im) of each upper-triangle entry in row-major order.
RealVector hermitian_coordinates(const ComplexMatrix& m) {
  const Eigen::Index d = m.rows();
  RealVector v(d * d);
  Eigen::Index pos = 0;
  for (Eigen::Index i = 0; i < d; ++i) v(pos++) = m(i, i).real();
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = i + 1; j < d; ++j) {
      v(pos++) = m(i, j).real();
      v(pos++) = m(i, j).imag();
    }
  }
  return v;
}

// (tau^{o_k}_{k,x})^T for every party k and ancilla index x (0-based).
std::vector<std::vector<ComplexMatrix>> transposed_states(const AncillaBasis& basis, const OutcomeTuple& outcome) {
  const AncillaBasis moved = transform_basis(basis, outcome);
  std::vector<std::vector<ComplexMatrix>> out(static_cast<std::size_t>(basis.party_count()));
  for (int k = 0; k < basis.party_count(); ++k) {
    for (int x = 1; x <= kLabels; ++x) out[static_cast<std::size_t>(k)].push_back(transpose(moved.state(k, x).matrix()));
  }
  return out;
}

ComplexMatrix product_element(const std::vector<std::vector<ComplexMatrix>>& factors, const InputTuple& x) {
  ComplexMatrix out = factors[0][static_cast<std::size_t>(x[0] - 1)];
  for (int k = 1; k < x.party_count(); ++k) {
    out = tensor_product(out, factors[static_cast<std::size_t>(k)][static_cast<std::size_t>(x[k] - 1)]);
  }
  return out;
}

void check_shapes(const ComplexMatrix& w, const AncillaBasis& basis, const OutcomeTuple& outcome) {
  const int n = basis.party_count();
  if (outcome.party_count() != n) throw DimensionError("outcome tuple length does not match the basis");
  if (w.rows() != w.cols() || w.rows() != (Eigen::Index{1} << n)) {
    throw DimensionError("witness dimension does not match the basis party count");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Witness

Witness::Witness(ComplexMatrix op, SeparableClass declared_class, std::string name)
    : op_(std::move(op)), declared_(std::move(declared_class)), name_(std::move(name)) {
  if (op_.rows() != op_.cols()) throw DimensionError("witness must be square");
  party_count_ = qubit_count_for_dim(op_.rows());
  if (!op_.allFinite()) throw ValidationError("witness has non-finite entries");
  if (!is_hermitian(op_)) throw ValidationError("witness is not Hermitian");
  if (min_eigenvalue(op_) >= -kStateTolerance) {
    throw ValidationError("witness has no negative eigenvalue and detects nothing");
  }
  if (declared_.kind == SeparableClass::Kind::KProducible && (declared_.k < 1 || declared_.k > party_count_)) {
    throw DomainError("declared k-producible class needs 1 <= k <= party count");
  }
  if (declared_.kind == SeparableClass::Kind::Bipartition) {
    for (int p : declared_.side_a) {
      if (p < 0 || p >= party_count_) throw DomainError("bipartition side lists an unknown party");
    }
    if (declared_.side_a.empty() || static_cast<int>(declared_.side_a.size()) >= party_count_) {
      throw DomainError("bipartition side must be a proper nonempty subset");
    }
  }
}

// ---------------------------------------------------------------------------
// AncillaBasis

double gram_determinant(const std::vector<DensityMatrix>& states) {
  const auto n = static_cast<Eigen::Index>(states.size());
  RealMatrix gram(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      gram(a, b) = trace_of_product(states[static_cast<std::size_t>(a)].matrix().adjoint(),
                                    states[static_cast<std::size_t>(b)].matrix())
                       .real();
    }
  }
  return gram.determinant();
}

AncillaBasis::AncillaBasis(std::vector<std::vector<DensityMatrix>> per_party) : states_(std::move(per_party)) {
  if (states_.empty()) throw DimensionError("ancilla basis needs at least one party");
  for (const auto& party : states_) {
    if (party.size() != static_cast<std::size_t>(kLabels)) {
      throw DimensionError("each party needs exactly four ancilla states");
    }
    for (const DensityMatrix& s : party) {
      if (s.dim() != 2) throw DimensionError("ancilla states must be single-qubit");
    }
    if (!(gram_determinant(party) > kGramThreshold)) {
      throw ValidationError("ancilla states are not linearly independent");
    }
  }
}

const DensityMatrix& AncillaBasis::state(int party, int x) const {
  if (party < 0 || party >= party_count()) throw DimensionError("ancilla party index out of range");
  if (x < 1 || x > kLabels) throw DomainError("ancilla index must be in 1..4");
  return states_[static_cast<std::size_t>(party)][static_cast<std::size_t>(x - 1)];
}

AncillaBasis default_basis(int party_count) {
  if (party_count < 1) throw DimensionError("default_basis: party count must be positive");
  const ComplexMatrix id = pauli(Pauli::I);
  const std::vector<DensityMatrix> one{
      DensityMatrix(id / 2.0),
      DensityMatrix((id + pauli(Pauli::X)) / 2.0),
      DensityMatrix((id + pauli(Pauli::Y)) / 2.0),
      DensityMatrix((id + pauli(Pauli::Z)) / 2.0),
  };
  return AncillaBasis(std::vector<std::vector<DensityMatrix>>(static_cast<std::size_t>(party_count), one));
}

AncillaBasis transform_basis(const AncillaBasis& basis, const OutcomeTuple& outcome) {
  if (outcome.party_count() != basis.party_count()) {
    throw DimensionError("outcome tuple length does not match the basis");
  }
  std::vector<std::vector<DensityMatrix>> moved;
  for (int k = 0; k < basis.party_count(); ++k) {
    const ComplexMatrix m = outcome_unitary(bell_outcome(outcome[k]));
    std::vector<DensityMatrix> party;
    for (int x = 1; x <= kLabels; ++x) {
      party.emplace_back(m * basis.state(k, x).matrix() * m.adjoint());
    }
    moved.push_back(std::move(party));
  }
  return AncillaBasis(std::move(moved));
}

// ---------------------------------------------------------------------------
// CoefficientTensor

CoefficientTensor::CoefficientTensor(int party_count, std::vector<double> values)
    : party_count_(party_count), values_(std::move(values)) {
  if (values_.size() != tuple_count(party_count_)) {
    throw DimensionError("coefficient tensor needs 4^N entries");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ValidationError("coefficient tensor has a non-finite entry");
  }
}

CoefficientTensor CoefficientTensor::zeros(int party_count) {
  return CoefficientTensor(party_count, std::vector<double>(tuple_count(party_count), 0.0));
}

RealMatrix CoefficientTensor::matrix(int last_index) const {
  if (party_count_ == 2) {
    RealMatrix m(4, 4);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) m(a, b) = values_[static_cast<std::size_t>(a * 4 + b)];
    }
    return m;
  }
  if (party_count_ == 3) {
    if (last_index < 1 || last_index > kLabels) throw DomainError("slice index must be in 1..4");
    RealMatrix m(4, 4);
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        m(a, b) = values_[static_cast<std::size_t>(a * 16 + b * 4 + (last_index - 1))];
      }
    }
    return m;
  }
  throw DimensionError("matrix view is defined for two or three parties only");
}

// ---------------------------------------------------------------------------
// Decomposition

CoefficientTensor decompose(const ComplexMatrix& w, const AncillaBasis& basis, const OutcomeTuple& outcome) {
  check_shapes(w, basis, outcome);
  if (!is_hermitian(w)) throw ValidationError("decompose: operator is not Hermitian");
  const int n = basis.party_count();
  const std::size_t count = tuple_count(n);
  const auto factors = transposed_states(basis, outcome);

  RealMatrix system(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
  for (std::size_t flat = 0; flat < count; ++flat) {
    system.col(static_cast<Eigen::Index>(flat)) =
        hermitian_coordinates(product_element(factors, InputTuple::from_index(flat, n)));
  }
  const Eigen::PartialPivLU<RealMatrix> lu(system);
  const double rcond = lu.rcond();
  if (!(rcond * kMaxCondition >= 1.0)) {
    throw SingularSystemError("decompose: ancilla product basis is singular or ill-conditioned");
  }
  const RealVector beta = lu.solve(hermitian_coordinates(w));
  CoefficientTensor coeffs(n, std::vector<double>(beta.data(), beta.data() + beta.size()));
  if ((reconstruct(coeffs, basis, outcome) - w).norm() > kMaxResidual) {
    throw SingularSystemError("decompose: reconstruction residual exceeds tolerance");
  }
  return coeffs;
}

CoefficientTensor decompose(const Witness& w, const AncillaBasis& basis, const OutcomeTuple& outcome) {
  return decompose(w.op(), basis, outcome);
}

OutcomeCoefficientTable outcome_coefficients(const ComplexMatrix& w, const AncillaBasis& basis) {
  const int n = basis.party_count();
  OutcomeCoefficientTable table{n, {}};
  const std::size_t count = tuple_count(n);
  table.by_outcome.reserve(count);
  for (std::size_t flat = 0; flat < count; ++flat) {
    table.by_outcome.push_back(decompose(w, basis, OutcomeTuple::from_index(flat, n)));
  }
  return table;
}

OutcomeCoefficientTable outcome_coefficients(const Witness& w, const AncillaBasis& basis) {
  return outcome_coefficients(w.op(), basis);
}

ComplexMatrix reconstruct(const CoefficientTensor& coeffs, const AncillaBasis& basis, const OutcomeTuple& outcome) {
  const int n = basis.party_count();
  if (coeffs.party_count() != n || outcome.party_count() != n) {
    throw DimensionError("reconstruct: coefficient, basis and outcome shapes disagree");
  }
  const auto factors = transposed_states(basis, outcome);
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (std::size_t flat = 0; flat < tuple_count(n); ++flat) {
    if (coeffs[flat] == 0.0) continue;
    out += coeffs[flat] * product_element(factors, InputTuple::from_index(flat, n));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named witnesses

Witness projector_witness(const ComplexVector& psi, double alpha, SeparableClass declared_class, std::string name) {
  if (std::abs(psi.norm() - 1.0) > kStateTolerance) {
    throw ValidationError("projector_witness: state vector is not normalized");
  }
  const Eigen::Index d = psi.size();
  return Witness(alpha * identity(d) - psi * psi.adjoint(), std::move(declared_class), std::move(name));
}

Witness werner_witness() {
  return projector_witness(singlet_vector(), 0.5, SeparableClass::fully_separable(), "werner");
}

Witness w_state_witness(double alpha) {
  constexpr double kSlack = 1e-12;
  SeparableClass cls;
  if (alpha >= 2.0 / 3.0 - kSlack) {
    cls = SeparableClass::k_producible(2);
  } else if (alpha >= 4.0 / 9.0 - kSlack) {
    cls = SeparableClass::fully_separable();
  } else {
    throw DomainError("w_state_witness: alpha below 4/9 is not nonnegative on any supported class");
  }
  std::ostringstream name;
  name << "w_state(alpha=" << alpha << ")";
  return projector_witness(w_state_vector(), alpha, std::move(cls), name.str());
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const CoefficientTensor& coeffs) {
  // Nested arrays, party 1 outermost.
  const int n = coeffs.party_count();
  std::function<nlohmann::json(int, std::size_t)> build = [&](int depth, std::size_t prefix) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t x = 0; x < static_cast<std::size_t>(kLabels); ++x) {
      const std::size_t flat = prefix * kLabels + x;
      if (depth + 1 == n) {
        arr.push_back(format_decimal(coeffs[flat]));
      } else {
        arr.push_back(build(depth + 1, flat));
      }
    }
    return arr;
  };
  return build(0, 0);
}

nlohmann::json to_json(const OutcomeCoefficientTable& table) {
  nlohmann::json out = nlohmann::json::object();
  for (std::size_t flat = 0; flat < table.by_outcome.size(); ++flat) {
    out[OutcomeTuple::from_index(flat, table.party_count).to_string()] = to_json(table.by_outcome[flat]);
  }
  return out;
}

}  // namespace mdiew
