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

#include "mdiew/structure.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace mdiew {

// ---------------------------------------------------------------------------
// Partition

Partition::Partition(int party_count, std::vector<std::vector<int>> blocks)
    : party_count_(party_count), blocks_(std::move(blocks)) {
  if (party_count_ < 1) throw DimensionError("partition needs at least one party");
  std::vector<int> seen(static_cast<std::size_t>(party_count_), 0);
  for (auto& block : blocks_) {
    if (block.empty()) throw ValidationError("partition blocks must be nonempty");
    std::sort(block.begin(), block.end());
    for (int p : block) {
      if (p < 0 || p >= party_count_) throw ValidationError("partition lists an unknown party");
      if (seen[static_cast<std::size_t>(p)]++ != 0) throw ValidationError("partition blocks overlap");
    }
  }
  if (std::count(seen.begin(), seen.end(), 0) != 0) throw ValidationError("partition does not cover every party");
}

Partition Partition::bipartition(int party_count, int first_block_size) {
  if (first_block_size < 1 || first_block_size >= party_count) {
    throw DomainError("bipartition needs 1 <= first block size < party count");
  }
  std::vector<int> a;
  std::vector<int> b;
  for (int p = 0; p < party_count; ++p) (p < first_block_size ? a : b).push_back(p);
  return Partition(party_count, {a, b});
}

Partition Partition::singletons(int party_count) {
  std::vector<std::vector<int>> blocks;
  for (int p = 0; p < party_count; ++p) blocks.push_back({p});
  return Partition(party_count, std::move(blocks));
}

int Partition::max_block_size() const {
  std::size_t best = 0;
  for (const auto& b : blocks_) best = std::max(best, b.size());
  return static_cast<int>(best);
}

std::string Partition::to_string() const {
  std::ostringstream out;
  for (const auto& b : blocks_) {
    out << '{';
    for (std::size_t i = 0; i < b.size(); ++i) out << (i ? "," : "") << b[i] + 1;
    out << '}';
  }
  return out.str();
}

std::string SeparableClass::describe(int party_count) const {
  switch (kind) {
    case Kind::FullySeparable:
      return "fully-separable";
    case Kind::KProducible:
      return std::to_string(k) + "-producible";
    case Kind::Bipartition: {
      std::vector<int> b;
      for (int p = 0; p < party_count; ++p) {
        if (std::find(side_a.begin(), side_a.end(), p) == side_a.end()) b.push_back(p);
      }
      return "bipartition" + Partition(party_count, {side_a, b}).to_string();
    }
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Depth and certificates

DepthClaim::DepthClaim(int k, int party_count) : k_(k), party_count_(party_count) {
  if (k_ < 1 || k_ > party_count_) throw DomainError("depth claim needs 1 <= k <= party count");
}

int certificate_depth(const StructuredState& s) {
  if (s.certificate().terms.empty()) throw ValidationError("state carries no certificate");
  return s.certificate().max_block_size();
}

Certificate map_certificate(const Certificate& cert, std::span<const Povm> povms, const OutcomeTuple& outcome) {
  Certificate mapped;
  for (const CertificateTerm& term : cert.terms) {
    CertificateTerm out{term.weight, {}};
    for (const CertificateBlock& block : term.blocks) {
      std::vector<Povm> local;
      std::vector<int> labels;
      for (int p : block.parties) {
        if (p < 0 || p >= outcome.party_count()) throw DimensionError("certificate block names an unknown party");
        local.push_back(povms[static_cast<std::size_t>(p)]);
        labels.push_back(outcome[p]);
      }
      out.blocks.push_back({block.parties, apply_map_m(block.op, local, OutcomeTuple(labels))});
    }
    mapped.terms.push_back(std::move(out));
  }
  return mapped;
}

bool certificate_fits(const Certificate& cert, const SeparableClass& cls, int party_count) {
  for (const CertificateTerm& term : cert.terms) {
    for (const CertificateBlock& block : term.blocks) {
      switch (cls.kind) {
        case SeparableClass::Kind::FullySeparable:
          if (block.parties.size() != 1) return false;
          break;
        case SeparableClass::Kind::KProducible:
          if (static_cast<int>(block.parties.size()) > cls.k) return false;
          break;
        case SeparableClass::Kind::Bipartition: {
          const auto in_a = [&](int p) { return std::find(cls.side_a.begin(), cls.side_a.end(), p) != cls.side_a.end(); };
          const bool first = in_a(block.parties.front());
          for (int p : block.parties) {
            if (p < 0 || p >= party_count || in_a(p) != first) return false;
          }
          break;
        }
      }
    }
  }
  return true;
}

StructuredState sample_class(const SeparableClass& cls, int party_count, int term_count, Rng& rng) {
  switch (cls.kind) {
    case SeparableClass::Kind::FullySeparable:
      return random_separable(std::vector<int>(static_cast<std::size_t>(party_count), 1), term_count, rng);
    case SeparableClass::Kind::KProducible:
      return random_k_producible(party_count, cls.k, term_count, rng);
    case SeparableClass::Kind::Bipartition:
      break;
  }
  if (term_count < 1) throw DomainError("sample_class: term count must be positive");
  std::vector<int> a = cls.side_a;
  std::sort(a.begin(), a.end());
  std::vector<int> b;
  for (int p = 0; p < party_count; ++p) {
    if (!std::binary_search(a.begin(), a.end(), p)) b.push_back(p);
  }
  if (a.empty() || b.empty()) throw DomainError("sample_class: bipartition sides must be nonempty");
  std::exponential_distribution<double> exp_dist(1.0);
  std::vector<double> weights;
  for (int t = 0; t < term_count; ++t) weights.push_back(exp_dist(rng));
  double total = 0.0;
  for (double w : weights) total += w;
  Certificate cert;
  for (int t = 0; t < term_count; ++t) {
    const DensityMatrix rho_a = random_density(Eigen::Index{1} << a.size(), rng);
    const DensityMatrix rho_b = random_density(Eigen::Index{1} << b.size(), rng);
    cert.terms.push_back({weights[static_cast<std::size_t>(t)] / total, {{a, rho_a.matrix()}, {b, rho_b.matrix()}}});
  }
  ComplexMatrix m = assemble(cert, party_count);
  m = (m + m.adjoint().eval()) / 2.0;
  return StructuredState(DensityMatrix(m), std::move(cert), party_count);
}

// ---------------------------------------------------------------------------
// Harness

HarnessReport structure_witness_check(const Witness& w, int trials, Seed seed, DeviceModel devices,
                                      int term_count) {
  if (trials < 1) throw DomainError("structure_witness_check: trials must be positive");
  const int n = w.party_count();
  const AncillaBasis basis = default_basis(n);
  const OutcomeCoefficientTable coeffs = outcome_coefficients(w, basis);

  HarnessReport report;
  report.witness = w.name();
  report.cls = w.declared_class().describe(n);
  report.devices = devices;
  report.trials = trials;
  report.seed = seed;
  report.min_value = std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_rng(seed, static_cast<std::uint64_t>(t));
    const StructuredState s = sample_class(w.declared_class(), n, term_count, rng);
    MeasurementModel model = IdealBsm{};
    if (devices == DeviceModel::RandomPovm) {
      PerPartyPovm per_party;
      for (int k = 0; k < n; ++k) per_party.povms.push_back(random_povm(4, kLabels, rng));
      model = std::move(per_party);
    }
    const double value = mdiew_value(probability_table(s.state(), basis, model), coeffs);
    report.min_value = std::min(report.min_value, value);
    if (value < -kViolationTolerance) ++report.violations;
  }
  return report;
}

nlohmann::json to_json(const HarnessReport& report) {
  return {{"witness", report.witness},
          {"class", report.cls},
          {"devices", report.devices == DeviceModel::Ideal ? "ideal" : "random-povm"},
          {"trials", report.trials},
          {"min_value", report.min_value},
          {"violations", report.violations},
          {"seed", report.seed.value},
          {"generator_name", std::string(kGeneratorName)}};
}

// ---------------------------------------------------------------------------
// Depth detection

DepthVerdict depth_detection(const DensityMatrix& state, double alpha) {
  if (state.dim() != 8) throw DimensionError("depth_detection needs a three-qubit state");
  const Witness w = w_state_witness(alpha);
  const AncillaBasis basis = default_basis(3);
  DepthVerdict v;
  v.alpha = alpha;
  v.value = mdiew_value(probability_table(state, basis, IdealBsm{}), outcome_coefficients(w, basis));
  v.detected = v.value < 0.0;
  v.depth_lower_bound = w.declared_class().kind == SeparableClass::Kind::KProducible ? 3 : 2;
  if (!v.detected) {
    v.statement = "not detected";
  } else if (v.depth_lower_bound == 3) {
    v.statement = "genuinely tripartite entangled, depth 3";
  } else {
    v.statement = "not fully separable, depth at least 2";
  }
  return v;
}

nlohmann::json to_json(const DepthVerdict& v) {
  return {{"alpha", v.alpha},
          {"value", v.value},
          {"detected", v.detected},
          {"depth_lower_bound", v.depth_lower_bound},
          {"statement", v.statement}};
}

}  // namespace mdiew
