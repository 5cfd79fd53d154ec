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

#include "mdiew/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace mdiew {

BellOutcome bell_outcome(int label) {
  if (label < 1 || label > kLabels) {
    throw DomainError("Bell outcome label must be in 1..4, got " + std::to_string(label));
  }
  return static_cast<BellOutcome>(label);
}

// ---------------------------------------------------------------------------
// LabelTuple

LabelTuple::LabelTuple(std::vector<int> labels) : labels_(std::move(labels)) {
  if (labels_.empty()) throw DimensionError("label tuple must have at least one party");
  for (int v : labels_) {
    if (v < 1 || v > kLabels) {
      throw DomainError("tuple labels must be in 1..4, got " + std::to_string(v));
    }
  }
}

std::size_t tuple_count(int party_count) {
  if (party_count < 1) throw DimensionError("party count must be positive");
  return std::size_t{1} << (2 * party_count);
}

LabelTuple LabelTuple::from_index(std::size_t index, int party_count) {
  if (index >= tuple_count(party_count)) {
    throw DimensionError("tuple index out of range");
  }
  std::vector<int> labels(static_cast<std::size_t>(party_count));
  for (int k = party_count - 1; k >= 0; --k) {
    labels[static_cast<std::size_t>(k)] = static_cast<int>(index % kLabels) + 1;
    index /= kLabels;
  }
  return LabelTuple(std::move(labels));
}

LabelTuple LabelTuple::all_ones(int party_count) {
  return from_index(0, party_count);
}

LabelTuple LabelTuple::parse(const std::string& text) {
  std::vector<int> labels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DomainError("cannot parse label tuple '" + text + "'");
    }
    if (used != item.size()) throw DomainError("cannot parse label tuple '" + text + "'");
    labels.push_back(v);
  }
  return LabelTuple(std::move(labels));
}

std::size_t LabelTuple::index() const {
  std::size_t idx = 0;
  for (int v : labels_) idx = idx * kLabels + static_cast<std::size_t>(v - 1);
  return idx;
}

std::string LabelTuple::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(labels_[k]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense primitives

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw DimensionError("tensor product of an empty list");
  ComplexMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = tensor_product(out, factors[k]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const int> dims,
                            std::span<const int> keep) {
  const int n = static_cast<int>(dims.size());
  if (n == 0) throw DimensionError("partial_trace: empty dimension list");
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 1) throw DimensionError("partial_trace: subsystem dimensions must be positive");
    total *= d;
  }
  if (m.rows() != total || m.cols() != total) {
    throw DimensionError("partial_trace: product of dims does not match matrix dimension");
  }
  std::vector<bool> kept(static_cast<std::size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw DimensionError("partial_trace: subsystem index out of range");
    if (kept[static_cast<std::size_t>(k)]) throw DimensionError("partial_trace: repeated subsystem");
    kept[static_cast<std::size_t>(k)] = true;
  }

  // Split every full index into (kept part, traced part), both row-major.
  Eigen::Index kept_dim = 1;
  Eigen::Index traced_dim = 1;
  for (int k = 0; k < n; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    if (kept[uk]) {
      kept_dim *= dims[uk];
    } else {
      traced_dim *= dims[uk];
    }
  }

  std::vector<Eigen::Index> compose(static_cast<std::size_t>(kept_dim * traced_dim));
  for (Eigen::Index full = 0; full < total; ++full) {
    Eigen::Index rem = full;
    Eigen::Index kidx = 0, kmul = 1, tidx = 0, tmul = 1;
    for (int k = n - 1; k >= 0; --k) {
      const int d = dims[static_cast<std::size_t>(k)];
      const Eigen::Index digit = rem % d;
      rem /= d;
      if (kept[static_cast<std::size_t>(k)]) {
        kidx += digit * kmul;
        kmul *= d;
      } else {
        tidx += digit * tmul;
        tmul *= d;
      }
    }
    compose[static_cast<std::size_t>(kidx * traced_dim + tidx)] = full;
  }

  ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
  for (Eigen::Index a = 0; a < kept_dim; ++a) {
    for (Eigen::Index b = 0; b < kept_dim; ++b) {
      Complex acc{0.0, 0.0};
      for (Eigen::Index t = 0; t < traced_dim; ++t) {
        acc += m(compose[static_cast<std::size_t>(a * traced_dim + t)],
                 compose[static_cast<std::size_t>(b * traced_dim + t)]);
      }
      out(a, b) = acc;
    }
  }
  return out;
}

ComplexMatrix transpose(const ComplexMatrix& m) { return m.transpose(); }

ComplexMatrix permute_qubits(const ComplexMatrix& m, std::span<const int> order) {
  const int n = qubit_count_for_dim(m.rows());
  if (m.cols() != m.rows()) throw DimensionError("permute_qubits: matrix must be square");
  if (static_cast<int>(order.size()) != n) throw DimensionError("permute_qubits: order length mismatch");
  std::vector<int> check(order.begin(), order.end());
  std::sort(check.begin(), check.end());
  for (int k = 0; k < n; ++k) {
    if (check[static_cast<std::size_t>(k)] != k) throw DimensionError("permute_qubits: order is not a permutation");
  }
  const Eigen::Index dim = m.rows();
  std::vector<Eigen::Index> source(static_cast<std::size_t>(dim));
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index old = 0;
    for (int j = 0; j < n; ++j) {
      const Eigen::Index bit = (idx >> (n - 1 - j)) & 1;
      old |= bit << (n - 1 - order[static_cast<std::size_t>(j)]);
    }
    source[static_cast<std::size_t>(idx)] = old;
  }
  ComplexMatrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      out(i, j) = m(source[static_cast<std::size_t>(i)], source[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

ComplexMatrix pauli(Pauli p) {
  const Complex i{0.0, 1.0};
  ComplexMatrix m(2, 2);
  switch (p) {
    case Pauli::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case Pauli::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case Pauli::Y: m << 0.0, -i, i, 0.0; break;
    case Pauli::Z: m << 1.0, 0.0, 0.0, -1.0; break;
  }
  return m;
}

ComplexMatrix outcome_unitary(BellOutcome o) {
  switch (o) {
    case BellOutcome::PhiPlus: return pauli(Pauli::I);
    case BellOutcome::PhiMinus: return pauli(Pauli::Z);
    case BellOutcome::PsiPlus: return pauli(Pauli::X);
    case BellOutcome::PsiMinus: return pauli(Pauli::X) * pauli(Pauli::Z);
  }
  throw DomainError("unknown Bell outcome");
}

ComplexVector phi_plus() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

ComplexMatrix bell_projector(BellOutcome o) {
  const ComplexVector psi = tensor_product(identity(2), outcome_unitary(o)) * phi_plus();
  return psi * psi.adjoint();
}

ComplexMatrix identity(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

double hermiticity_error(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermiticity_error(m) <= tol; }

double min_eigenvalue(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("min_eigenvalue: matrix must be square");
  if (!is_hermitian(m)) throw ValidationError("min_eigenvalue: matrix is not Hermitian");
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Complex trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) {
    throw DimensionError("trace_of_product: shape mismatch");
  }
  return (a.array() * b.transpose().array()).sum();
}

int qubit_count_for_dim(Eigen::Index dim) {
  int n = 0;
  Eigen::Index d = 1;
  while (d < dim) {
    d <<= 1;
    ++n;
  }
  if (d != dim || dim < 2) {
    throw DimensionError("dimension " + std::to_string(dim) + " is not a qubit-register size");
  }
  return n;
}

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() < 1 || matrix_.rows() != matrix_.cols()) {
    throw DimensionError("density matrix must be square and non-empty");
  }
  if (!matrix_.allFinite()) throw ValidationError("density matrix has non-finite entries");
  if (!is_hermitian(matrix_)) throw ValidationError("density matrix is not Hermitian");
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex{1.0, 0.0}) > kStateTolerance) {
    throw ValidationError("density matrix trace is not 1");
  }
  if (min_eigenvalue(matrix_) < -kStateTolerance) {
    throw ValidationError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix DensityMatrix::from_pure(const ComplexVector& psi) {
  if (std::abs(psi.norm() - 1.0) > kStateTolerance) {
    throw ValidationError("pure state vector is not normalized");
  }
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

}  // namespace mdiew
