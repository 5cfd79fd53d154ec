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

#include "mdiew/protocol.hpp"

#include <cmath>
#include <sstream>

#include "mdiew/format.hpp"

namespace mdiew {

namespace {

using Local = Eigen::Matrix4cd;

// Operators on N qubits are handled as vectors over one base-4 digit per
// party, digit = 2 * row_bit + col_bit, party 1 most significant. A product
// of per-party linear maps then acts digit by digit.
ComplexVector to_digits(const ComplexMatrix& m, int n) {
  const std::size_t size = tuple_count(n);
  ComplexVector v(static_cast<Eigen::Index>(size));
  const Eigen::Index dim = m.rows();
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      std::size_t idx = 0;
      for (int k = 0; k < n; ++k) {
        const int shift = n - 1 - k;
        idx = idx * 4 + static_cast<std::size_t>(((r >> shift) & 1) * 2 + ((c >> shift) & 1));
      }
      v(static_cast<Eigen::Index>(idx)) = m(r, c);
    }
  }
  return v;
}

ComplexMatrix from_digits(const ComplexVector& v, int n) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      std::size_t idx = 0;
      for (int k = 0; k < n; ++k) {
        const int shift = n - 1 - k;
        idx = idx * 4 + static_cast<std::size_t>(((r >> shift) & 1) * 2 + ((c >> shift) & 1));
      }
      m(r, c) = v(static_cast<Eigen::Index>(idx));
    }
  }
  return m;
}

// (A_1 (x) ... (x) A_N) v for 4x4 factors.
ComplexVector apply_local(std::span<const Local> factors, ComplexVector v) {
  const int n = static_cast<int>(factors.size());
  ComplexVector scratch(4);
  std::size_t stride = tuple_count(n) / 4;
  for (int k = 0; k < n; ++k, stride /= 4) {
    const std::size_t outer_count = std::size_t{1} << (2 * k);
    for (std::size_t outer = 0; outer < outer_count; ++outer) {
      for (std::size_t inner = 0; inner < stride; ++inner) {
        const std::size_t base = outer * 4 * stride + inner;
        for (int d = 0; d < 4; ++d) scratch(d) = v(static_cast<Eigen::Index>(base + d * stride));
        const Eigen::Vector4cd out = factors[static_cast<std::size_t>(k)] * scratch;
        for (int d = 0; d < 4; ++d) v(static_cast<Eigen::Index>(base + d * stride)) = out(d);
      }
    }
  }
  return v;
}

// X -> Tr_sys[E (I (x) X)] on one party, in digit coordinates.
Local map_superoperator(const ComplexMatrix& element) {
  Local s;
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) {
      for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
          // X_{r,c} enters as E_{(a,c),(ap,r)}.
          s(a * 2 + ap, r * 2 + c) = element(a * 2 + c, ap * 2 + r);
        }
      }
    }
  }
  return s;
}

// Y -> (Tr[tau_1 Y], ..., Tr[tau_4 Y]) on one party.
Local input_functional(const AncillaBasis& basis, int party) {
  Local t;
  for (int x = 0; x < kLabels; ++x) {
    const ComplexMatrix& tau = basis.state(party, x + 1).matrix();
    for (int a = 0; a < 2; ++a) {
      for (int ap = 0; ap < 2; ++ap) t(x, a * 2 + ap) = tau(ap, a);
    }
  }
  return t;
}

void check_state_dim(const ComplexMatrix& m, int n) {
  if (m.rows() != m.cols() || m.rows() != (Eigen::Index{1} << n)) {
    throw DimensionError("state dimension does not match the party count");
  }
}

}  // namespace

std::vector<Povm> model_povms(const MeasurementModel& model, int party_count) {
  if (const auto* per_party = std::get_if<PerPartyPovm>(&model)) {
    validate_povms(per_party->povms, party_count);
    return per_party->povms;
  }
  return std::vector<Povm>(static_cast<std::size_t>(party_count), ideal_bsm_povm());
}

void validate_povms(std::span<const Povm> povms, int party_count) {
  if (static_cast<int>(povms.size()) != party_count) {
    throw DimensionError("need exactly one POVM per party");
  }
  for (const Povm& p : povms) {
    if (p.dim != 4 || p.elements.size() != static_cast<std::size_t>(kLabels)) {
      throw DimensionError("each party's POVM needs four outcomes on two qubits");
    }
    p.validate();
  }
}

// ---------------------------------------------------------------------------
// ProbabilityTable

ProbabilityTable::ProbabilityTable(int party_count, std::vector<double> values)
    : party_count_(party_count), count_(mdiew::tuple_count(party_count)), values_(std::move(values)) {
  if (values_.size() != count_ * count_) throw DimensionError("probability table needs 4^N x 4^N entries");
}

void ProbabilityTable::validate() const {
  for (std::size_t x = 0; x < count_; ++x) {
    double sum = 0.0;
    for (std::size_t o = 0; o < count_; ++o) {
      const double p = at(o, x);
      if (!(p >= -1e-10 && p <= 1.0 + 1e-10)) throw ValidationError("probability outside [0, 1]");
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw ValidationError("probabilities for an input do not sum to 1");
  }
}

// ---------------------------------------------------------------------------
// Probabilities

double ideal_probability(const DensityMatrix& state, const AncillaBasis& basis, const OutcomeTuple& outcome,
                         const InputTuple& input) {
  const int n = basis.party_count();
  if (outcome.party_count() != n || input.party_count() != n) throw DimensionError("tuple length mismatch");
  check_state_dim(state.matrix(), n);
  const AncillaBasis moved = transform_basis(basis, outcome);
  ComplexMatrix product = transpose(moved.state(0, input[0]).matrix());
  for (int k = 1; k < n; ++k) product = tensor_product(product, transpose(moved.state(k, input[k]).matrix()));
  return trace_of_product(product, state.matrix()).real() / static_cast<double>(Eigen::Index{1} << n);
}

double povm_probability(const DensityMatrix& state, const AncillaBasis& basis, std::span<const Povm> povms,
                        const OutcomeTuple& outcome, const InputTuple& input, int max_parties) {
  const int n = basis.party_count();
  if (n > max_parties) throw DimensionError("joint-space evaluation exceeds the configured party cap");
  if (outcome.party_count() != n || input.party_count() != n) throw DimensionError("tuple length mismatch");
  check_state_dim(state.matrix(), n);
  validate_povms(povms, n);

  std::vector<ComplexMatrix> ancillas;
  std::vector<ComplexMatrix> elements;
  for (int k = 0; k < n; ++k) {
    ancillas.push_back(basis.state(k, input[k]).matrix());
    elements.push_back(povms[static_cast<std::size_t>(k)].elements[static_cast<std::size_t>(outcome[k] - 1)]);
  }
  // (anc_1..anc_N, sys_1..sys_N) -> (anc_1, sys_1, ..., anc_N, sys_N)
  std::vector<int> order(static_cast<std::size_t>(2 * n));
  for (int k = 0; k < n; ++k) {
    order[static_cast<std::size_t>(2 * k)] = k;
    order[static_cast<std::size_t>(2 * k + 1)] = n + k;
  }
  const ComplexMatrix joint = permute_qubits(tensor_product(tensor_product(ancillas), state.matrix()), order);
  return trace_of_product(tensor_product(elements), joint).real();
}

ComplexMatrix apply_map_m(const ComplexMatrix& op, std::span<const Povm> povms, const OutcomeTuple& outcome) {
  const int n = outcome.party_count();
  check_state_dim(op, n);
  validate_povms(povms, n);
  std::vector<Local> maps;
  for (int k = 0; k < n; ++k) {
    maps.push_back(map_superoperator(povms[static_cast<std::size_t>(k)].elements[static_cast<std::size_t>(outcome[k] - 1)]));
  }
  return from_digits(apply_local(maps, to_digits(op, n)), n);
}

ComplexMatrix apply_map_m(const DensityMatrix& state, std::span<const Povm> povms, const OutcomeTuple& outcome) {
  return apply_map_m(state.matrix(), povms, outcome);
}

ProbabilityTable probability_table(const DensityMatrix& state, const AncillaBasis& basis,
                                   const MeasurementModel& model) {
  const int n = basis.party_count();
  check_state_dim(state.matrix(), n);
  const std::vector<Povm> povms = model_povms(model, n);

  // maps[k][o] = T_k S_{k,o}: rho digit -> input index x_k.
  std::vector<std::vector<Local>> maps(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Local t = input_functional(basis, k);
    for (const ComplexMatrix& e : povms[static_cast<std::size_t>(k)].elements) {
      maps[static_cast<std::size_t>(k)].push_back(t * map_superoperator(e));
    }
  }
  const ComplexVector digits = to_digits(state.matrix(), n);
  const std::size_t count = tuple_count(n);
  std::vector<double> values(count * count);
  std::vector<Local> factors(static_cast<std::size_t>(n));
  for (std::size_t o = 0; o < count; ++o) {
    const OutcomeTuple outcome = OutcomeTuple::from_index(o, n);
    for (int k = 0; k < n; ++k) {
      factors[static_cast<std::size_t>(k)] = maps[static_cast<std::size_t>(k)][static_cast<std::size_t>(outcome[k] - 1)];
    }
    const ComplexVector p = apply_local(factors, digits);
    for (std::size_t x = 0; x < count; ++x) values[o * count + x] = p(static_cast<Eigen::Index>(x)).real();
  }
  return ProbabilityTable(n, std::move(values));
}

// ---------------------------------------------------------------------------
// Witness values

double mdiew_value(const ProbabilityTable& table, const OutcomeCoefficientTable& coeffs) {
  if (coeffs.party_count != table.party_count() || coeffs.by_outcome.size() != table.tuple_count()) {
    throw DimensionError("coefficient table does not match the probability table");
  }
  const std::size_t count = table.tuple_count();
  double total = 0.0;
  for (std::size_t o = 0; o < count; ++o) {
    const CoefficientTensor& beta = coeffs.by_outcome[o];
    for (std::size_t x = 0; x < count; ++x) total += beta[x] * table.at(o, x);
  }
  return total;
}

double single_outcome_value(const ProbabilityTable& table, const CoefficientTensor& coeffs) {
  if (coeffs.party_count() != table.party_count()) {
    throw DimensionError("coefficient tensor does not match the probability table");
  }
  double total = 0.0;
  for (std::size_t x = 0; x < table.tuple_count(); ++x) total += coeffs[x] * table.at(0, x);
  return total;
}

std::string to_csv(const ProbabilityTable& table) {
  const int n = table.party_count();
  std::ostringstream out;
  for (int k = 1; k <= n; ++k) out << "outcome" << k << ',';
  for (int k = 1; k <= n; ++k) out << "input" << k << ',';
  out << "probability\n";
  for (std::size_t o = 0; o < table.tuple_count(); ++o) {
    const OutcomeTuple outcome = OutcomeTuple::from_index(o, n);
    for (std::size_t x = 0; x < table.tuple_count(); ++x) {
      const InputTuple input = InputTuple::from_index(x, n);
      for (int k = 0; k < n; ++k) out << outcome[k] << ',';
      for (int k = 0; k < n; ++k) out << input[k] << ',';
      out << format_decimal(table.at(o, x)) << '\n';
    }
  }
  return out.str();
}

}  // namespace mdiew
