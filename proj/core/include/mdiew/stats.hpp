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

// Finite-shot experiments and witness-value estimates.
//
// Each shot draws an input tuple uniformly and then an outcome tuple from the
// exact conditional distribution. The all-outcome scheme uses every outcome
// cell; the single-outcome scheme only uses the all-ones outcome.

#ifndef MDIEW_STATS_HPP
#define MDIEW_STATS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdiew/protocol.hpp"

namespace mdiew {

enum class Scheme { AllOutcome, SingleOutcome };

std::string to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

struct ExperimentConfig {
  std::uint64_t shots = 1;
  Seed seed;
  Scheme scheme = Scheme::AllOutcome;
};

/// Shot counts indexed like ProbabilityTable.
class CountRecord {
 public:
  CountRecord(int party_count, std::vector<std::uint64_t> counts);

  [[nodiscard]] int party_count() const { return party_count_; }
  [[nodiscard]] std::size_t tuple_count() const { return count_; }
  [[nodiscard]] const std::vector<std::uint64_t>& counts() const { return counts_; }
  [[nodiscard]] std::uint64_t at(std::size_t outcome, std::size_t input) const {
    return counts_[outcome * count_ + input];
  }
  [[nodiscard]] std::uint64_t total() const;
  /// Number of shots that used input tuple `input`.
  [[nodiscard]] std::uint64_t input_occurrences(std::size_t input) const;

  friend bool operator==(const CountRecord&, const CountRecord&) = default;

 private:
  int party_count_;
  std::size_t count_;
  std::vector<std::uint64_t> counts_;
};

/// Samples `shots` shots from an exact table. Negative round-off entries are
/// treated as zero.
CountRecord simulate_counts(const ProbabilityTable& table, std::uint64_t shots, Rng& rng);
CountRecord simulate_counts(const DensityMatrix& state, const AncillaBasis& basis, const MeasurementModel& model,
                            const ExperimentConfig& config);

struct Estimate {
  double value = 0.0;
  double sigma_hat = 0.0;
  /// exp(-G value^2 / (2 sigma^2)) for value < 0, else 1.
  double p_value = 1.0;
  /// Natural log of p_value, kept separately because p_value underflows.
  double log_p_value = 0.0;
  /// One-sided Gaussian tail Phi(value sqrt(G) / sigma).
  double p_gaussian = 1.0;
  std::uint64_t shots = 0;
  /// Set when some input tuple never occurred; value covers observed inputs.
  bool flagged = false;
  std::string warning;
};

/// All-outcome estimate: sum over (o, x) of beta^o_x times count(o, x) / n_x,
/// sigma^2 = sum beta^2 P(1 - P) over the same cells.
Estimate estimate_value(const CountRecord& counts, const OutcomeCoefficientTable& coeffs);
/// Single-outcome estimate over the all-ones outcome cells only.
Estimate estimate_value(const CountRecord& counts, const CoefficientTensor& coeffs);
Estimate estimate_value(const CountRecord& counts, const OutcomeCoefficientTable& coeffs, Scheme scheme);

double tail_bound_p_value(double value, double sigma, std::uint64_t shots);
double log_tail_bound_p_value(double value, double sigma, std::uint64_t shots);
double gaussian_p_value(double value, double sigma, std::uint64_t shots);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y = slope x + intercept.
LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys);

struct ComparisonRow {
  Scheme scheme = Scheme::AllOutcome;
  std::uint64_t shots = 0;
  int trials = 0;
  double mean_value = 0.0;
  double empirical_sigma = 0.0;
  double mean_p_paper = 0.0;
  double mean_p_gaussian = 0.0;
  double mean_log_p_paper = 0.0;
};

struct TrialRecord {
  Scheme scheme = Scheme::AllOutcome;
  std::uint64_t shots = 0;
  int trial = 0;
  Estimate estimate;
};

struct ComparisonReport {
  std::string state;
  std::string witness;
  Seed seed;
  double exact_all_outcome = 0.0;
  double exact_single_outcome = 0.0;
  std::vector<ComparisonRow> rows;
  std::vector<TrialRecord> trials;
  /// mean log p_paper against G, per scheme.
  LinearFit all_outcome_fit;
  LinearFit single_outcome_fit;
};

/// For each G runs `trials` experiments; both schemes are evaluated on the same
/// counts. Throws DomainError if the witness does not detect the state under
/// `model` in the exact all-outcome value.
ComparisonReport scheme_comparison(const DensityMatrix& state, const AncillaBasis& basis, const Witness& witness,
                                   std::span<const std::uint64_t> shot_grid, int trials, Seed seed,
                                   const MeasurementModel& model = IdealBsm{});

/// One object per row carrying the documented report fields, plus the fits.
nlohmann::json to_json(const ComparisonReport& report);
/// scheme,G,trial,value,sigma_hat,p_paper,log_p_paper,p_gaussian,flagged
std::string trials_csv(const ComparisonReport& report);

nlohmann::json to_json(const Estimate& estimate);

}  // namespace mdiew

#endif  // MDIEW_STATS_HPP
