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

#include "mdiew/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace mdiew {

namespace {

constexpr int kPovmRetries = 16;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

ComplexMatrix ginibre(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex{re, im};
    }
  }
  return g;
}

std::vector<double> simplex_weights(int count, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(count));
  for (double& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (double& x : w) x /= total;
  return w;
}

// Symmetric inverse square root of a positive definite Hermitian matrix.
// Returns false when the smallest eigenvalue is too small to invert safely.
bool inverse_sqrt(const ComplexMatrix& s, ComplexMatrix& out) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(0.5 * (s + s.adjoint()));
  const RealVector& evals = solver.eigenvalues();
  if (evals.minCoeff() <= 1e-12 * std::max(1.0, evals.maxCoeff())) return false;
  const RealVector inv = evals.cwiseSqrt().cwiseInverse();
  out = solver.eigenvectors() * inv.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
  return true;
}

DensityMatrix checked_state(const ComplexMatrix& m) {
  // Hermitize to remove rounding asymmetry from products before validation.
  return DensityMatrix(0.5 * (m + m.adjoint()));
}

}  // namespace

// ---------------------------------------------------------------------------
// Randomness

Rng make_rng(Seed seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.value), static_cast<std::uint32_t>(seed.value >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

Seed derive_seed(Seed seed, std::uint64_t stream) {
  Rng rng = make_rng(seed, stream);
  return Seed{rng()};
}

// ---------------------------------------------------------------------------
// POVMs

void Povm::validate() const {
  if (elements.empty()) throw ValidationError("POVM has no elements");
  ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
  for (const ComplexMatrix& e : elements) {
    if (e.rows() != dim || e.cols() != dim) throw DimensionError("POVM element has wrong dimension");
    if (!is_hermitian(e)) throw ValidationError("POVM element is not Hermitian");
    if (min_eigenvalue(e) < -kStateTolerance) throw ValidationError("POVM element is not PSD");
    sum += e;
  }
  if ((sum - identity(dim)).cwiseAbs().maxCoeff() > kStateTolerance) {
    throw ValidationError("POVM elements do not sum to the identity");
  }
}

Povm ideal_bsm_povm() { return noisy_bsm(1.0); }

Povm noisy_bsm(double visibility) {
  check_probability(visibility, "visibility");
  Povm povm{4, {}};
  for (int o = 1; o <= kLabels; ++o) {
    povm.elements.push_back(visibility * bell_projector(bell_outcome(o)) +
                            (1.0 - visibility) * identity(4) / 4.0);
  }
  return povm;
}

Povm random_povm(Eigen::Index dim, int n_outcomes, Seed seed) {
  Rng rng = make_rng(seed);
  return random_povm(dim, n_outcomes, rng);
}

Povm random_povm(Eigen::Index dim, int n_outcomes, Rng& rng) {
  if (n_outcomes < 1) throw DomainError("random_povm: need at least one outcome");
  if (dim < 1) throw DimensionError("random_povm: dimension must be positive");
  for (int attempt = 0; attempt < kPovmRetries; ++attempt) {
    std::vector<ComplexMatrix> parts;
    ComplexMatrix total = ComplexMatrix::Zero(dim, dim);
    for (int i = 0; i < n_outcomes; ++i) {
      const ComplexMatrix g = ginibre(dim, rng);
      parts.push_back(g * g.adjoint());
      total += parts.back();
    }
    ComplexMatrix root;
    if (!inverse_sqrt(total, root)) continue;
    Povm povm{dim, {}};
    for (const ComplexMatrix& a : parts) {
      const ComplexMatrix e = root * a * root;
      povm.elements.push_back(0.5 * (e + e.adjoint()));
    }
    return povm;
  }
  throw SingularSystemError("random_povm: element sum stayed singular after retries");
}

// ---------------------------------------------------------------------------
// Certificates

double Certificate::total_weight() const {
  double w = 0.0;
  for (const CertificateTerm& t : terms) w += t.weight;
  return w;
}

int Certificate::max_block_size() const {
  int best = 0;
  for (const CertificateTerm& t : terms) {
    for (const CertificateBlock& b : t.blocks) best = std::max(best, static_cast<int>(b.parties.size()));
  }
  return best;
}

ComplexMatrix assemble(const Certificate& cert, int party_count) {
  if (party_count < 1) throw DimensionError("assemble: party count must be positive");
  const Eigen::Index dim = Eigen::Index{1} << party_count;
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (const CertificateTerm& term : cert.terms) {
    std::vector<int> concat;
    std::vector<ComplexMatrix> factors;
    for (const CertificateBlock& block : term.blocks) {
      const Eigen::Index bdim = Eigen::Index{1} << block.parties.size();
      if (block.op.rows() != bdim || block.op.cols() != bdim) {
        throw DimensionError("certificate block operator does not match its party count");
      }
      concat.insert(concat.end(), block.parties.begin(), block.parties.end());
      factors.push_back(block.op);
    }
    if (static_cast<int>(concat.size()) != party_count) {
      throw ValidationError("certificate term does not cover every party exactly once");
    }
    std::vector<int> position(static_cast<std::size_t>(party_count), -1);
    for (std::size_t pos = 0; pos < concat.size(); ++pos) {
      const int party = concat[pos];
      if (party < 0 || party >= party_count || position[static_cast<std::size_t>(party)] != -1) {
        throw ValidationError("certificate term does not cover every party exactly once");
      }
      position[static_cast<std::size_t>(party)] = static_cast<int>(pos);
    }
    out += term.weight * permute_qubits(tensor_product(factors), position);
  }
  return out;
}

StructuredState::StructuredState(DensityMatrix state, Certificate certificate, int party_count)
    : state_(std::move(state)), certificate_(std::move(certificate)), party_count_(party_count) {
  if (state_.dim() != (Eigen::Index{1} << party_count_)) {
    throw DimensionError("structured state dimension does not match party count");
  }
  if (certificate_.terms.empty()) throw ValidationError("certificate has no terms");
  for (const CertificateTerm& t : certificate_.terms) {
    if (t.weight < 0.0) throw ValidationError("certificate weight is negative");
    for (const CertificateBlock& b : t.blocks) {
      if (!std::is_sorted(b.parties.begin(), b.parties.end()) || b.parties.empty()) {
        throw ValidationError("certificate block parties must be nonempty and ascending");
      }
      DensityMatrix check(b.op);  // throws if the block is not a state
    }
  }
  if (std::abs(certificate_.total_weight() - 1.0) > kStateTolerance) {
    throw ValidationError("certificate weights do not sum to 1");
  }
  if ((assemble(certificate_, party_count_) - state_.matrix()).norm() > kStateTolerance) {
    throw ValidationError("certificate does not reproduce the state");
  }
}

// ---------------------------------------------------------------------------
// Named states

ComplexVector singlet_vector() {
  ComplexVector v = ComplexVector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

ComplexVector w_state_vector() {
  ComplexVector v = ComplexVector::Zero(8);
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return v;
}

DensityMatrix werner(double p) {
  check_probability(p, "Werner weight p");
  const ComplexVector s = singlet_vector();
  return DensityMatrix(p * (s * s.adjoint()) + (1.0 - p) * identity(4) / 4.0);
}

DensityMatrix w_state_noise(double p) {
  check_probability(p, "W-state weight p");
  const ComplexVector w = w_state_vector();
  return DensityMatrix(p * (w * w.adjoint()) + (1.0 - p) * identity(8) / 8.0);
}

DensityMatrix random_density(Eigen::Index dim, Rng& rng) {
  const ComplexMatrix g = ginibre(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return checked_state(rho);
}

ComplexVector random_pure_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex{re, im};
  }
  return v / v.norm();
}

StructuredState product_state(const std::vector<DensityMatrix>& parts) {
  if (parts.empty()) throw DimensionError("product_state: no parts");
  CertificateTerm term{1.0, {}};
  std::vector<ComplexMatrix> factors;
  int next = 0;
  for (const DensityMatrix& part : parts) {
    const int q = part.qubit_count();
    std::vector<int> parties(static_cast<std::size_t>(q));
    std::iota(parties.begin(), parties.end(), next);
    next += q;
    term.blocks.push_back({std::move(parties), part.matrix()});
    factors.push_back(part.matrix());
  }
  Certificate cert{{std::move(term)}};
  return StructuredState(checked_state(tensor_product(factors)), std::move(cert), next);
}

StructuredState random_separable(const std::vector<int>& block_sizes, int term_count, Seed seed) {
  Rng rng = make_rng(seed);
  return random_separable(block_sizes, term_count, rng);
}

StructuredState random_separable(const std::vector<int>& block_sizes, int term_count, Rng& rng) {
  if (block_sizes.empty()) throw DimensionError("random_separable: empty partition");
  if (term_count < 1) throw DomainError("random_separable: term_count must be at least 1");
  int n = 0;
  for (int s : block_sizes) {
    if (s < 1) throw DimensionError("random_separable: block sizes must be positive");
    n += s;
  }
  const std::vector<double> weights = simplex_weights(term_count, rng);
  Certificate cert;
  for (int x = 0; x < term_count; ++x) {
    CertificateTerm term{weights[static_cast<std::size_t>(x)], {}};
    int next = 0;
    for (int s : block_sizes) {
      std::vector<int> parties(static_cast<std::size_t>(s));
      std::iota(parties.begin(), parties.end(), next);
      next += s;
      term.blocks.push_back({std::move(parties), random_density(Eigen::Index{1} << s, rng).matrix()});
    }
    cert.terms.push_back(std::move(term));
  }
  DensityMatrix rho = checked_state(assemble(cert, n));
  return StructuredState(std::move(rho), std::move(cert), n);
}

StructuredState random_k_producible(int n_parties, int k, int term_count, Seed seed) {
  Rng rng = make_rng(seed);
  return random_k_producible(n_parties, k, term_count, rng);
}

StructuredState random_k_producible(int n_parties, int k, int term_count, Rng& rng) {
  if (n_parties < 1) throw DimensionError("random_k_producible: need at least one party");
  if (k < 1 || k > n_parties) throw DomainError("random_k_producible: k must lie in 1..n_parties");
  if (term_count < 1) throw DomainError("random_k_producible: term_count must be at least 1");
  const std::vector<double> weights = simplex_weights(term_count, rng);
  Certificate cert;
  for (int x = 0; x < term_count; ++x) {
    std::vector<int> order(static_cast<std::size_t>(n_parties));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    CertificateTerm term{weights[static_cast<std::size_t>(x)], {}};
    std::size_t start = 0;
    while (start < order.size()) {
      const int remaining = static_cast<int>(order.size() - start);
      std::size_t size = static_cast<std::size_t>(std::min(k, remaining));
      if (x > 0) {
        std::uniform_int_distribution<int> size_dist(1, std::min(k, remaining));
        size = static_cast<std::size_t>(size_dist(rng));
      }
      std::vector<int> parties(order.begin() + static_cast<std::ptrdiff_t>(start),
                               order.begin() + static_cast<std::ptrdiff_t>(start + size));
      std::sort(parties.begin(), parties.end());
      start += size;
      const Eigen::Index bdim = Eigen::Index{1} << parties.size();
      term.blocks.push_back({std::move(parties), random_density(bdim, rng).matrix()});
    }
    cert.terms.push_back(std::move(term));
  }
  DensityMatrix rho = checked_state(assemble(cert, n_parties));
  return StructuredState(std::move(rho), std::move(cert), n_parties);
}

}  // namespace mdiew
