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

#include "mdiew/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mdiew/format.hpp"

namespace mdiew {

namespace {

struct Accumulator {
  double value = 0.0;
  double variance = 0.0;
};

Estimate finish(const Accumulator& acc, std::uint64_t shots, std::size_t missing) {
  Estimate e;
  e.value = acc.value;
  e.sigma_hat = std::sqrt(std::max(acc.variance, 0.0));
  e.shots = shots;
  e.p_value = tail_bound_p_value(e.value, e.sigma_hat, shots);
  e.log_p_value = log_tail_bound_p_value(e.value, e.sigma_hat, shots);
  e.p_gaussian = gaussian_p_value(e.value, e.sigma_hat, shots);
  if (missing > 0) {
    e.flagged = true;
    e.warning = std::to_string(missing) + " input tuple(s) never occurred; value covers observed inputs only";
  }
  return e;
}

double mean(std::span<const double> v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sigma(std::span<const double> v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

std::string to_string(Scheme scheme) {
  return scheme == Scheme::AllOutcome ? "all-outcome" : "single-outcome";
}

Scheme parse_scheme(const std::string& text) {
  if (text == "all-outcome" || text == "all") return Scheme::AllOutcome;
  if (text == "single-outcome" || text == "single") return Scheme::SingleOutcome;
  throw DomainError("unknown scheme '" + text + "'");
}

// ---------------------------------------------------------------------------
// CountRecord

CountRecord::CountRecord(int party_count, std::vector<std::uint64_t> counts)
    : party_count_(party_count), count_(mdiew::tuple_count(party_count)), counts_(std::move(counts)) {
  if (counts_.size() != count_ * count_) throw DimensionError("count record needs 4^N x 4^N cells");
}

std::uint64_t CountRecord::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t CountRecord::input_occurrences(std::size_t input) const {
  std::uint64_t n = 0;
  for (std::size_t o = 0; o < count_; ++o) n += at(o, input);
  return n;
}

CountRecord simulate_counts(const ProbabilityTable& table, std::uint64_t shots, Rng& rng) {
  if (shots < 1) throw DomainError("simulate_counts: at least one shot is required");
  const std::size_t count = table.tuple_count();
  std::vector<std::discrete_distribution<std::size_t>> outcome_dists;
  outcome_dists.reserve(count);
  std::vector<double> weights(count);
  for (std::size_t x = 0; x < count; ++x) {
    for (std::size_t o = 0; o < count; ++o) weights[o] = std::max(table.at(o, x), 0.0);
    outcome_dists.emplace_back(weights.begin(), weights.end());
  }
  std::uniform_int_distribution<std::size_t> input_dist(0, count - 1);
  std::vector<std::uint64_t> counts(count * count, 0);
  for (std::uint64_t shot = 0; shot < shots; ++shot) {
    const std::size_t x = input_dist(rng);
    const std::size_t o = outcome_dists[x](rng);
    ++counts[o * count + x];
  }
  return CountRecord(table.party_count(), std::move(counts));
}

CountRecord simulate_counts(const DensityMatrix& state, const AncillaBasis& basis, const MeasurementModel& model,
                            const ExperimentConfig& config) {
  Rng rng = make_rng(config.seed);
  return simulate_counts(probability_table(state, basis, model), config.shots, rng);
}

// ---------------------------------------------------------------------------
// Estimation

Estimate estimate_value(const CountRecord& counts, const OutcomeCoefficientTable& coeffs) {
  if (coeffs.party_count != counts.party_count() || coeffs.by_outcome.size() != counts.tuple_count()) {
    throw DimensionError("coefficient table does not match the count record");
  }
  const std::uint64_t shots = counts.total();
  if (shots == 0) throw DomainError("estimate_value: count record is empty");
  const std::size_t count = counts.tuple_count();
  Accumulator acc;
  std::size_t missing = 0;
  for (std::size_t x = 0; x < count; ++x) {
    const std::uint64_t n_x = counts.input_occurrences(x);
    if (n_x == 0) {
      ++missing;
      continue;
    }
    for (std::size_t o = 0; o < count; ++o) {
      const double p = static_cast<double>(counts.at(o, x)) / static_cast<double>(n_x);
      const double beta = coeffs.by_outcome[o][x];
      acc.value += beta * p;
      acc.variance += beta * beta * p * (1.0 - p);
    }
  }
  return finish(acc, shots, missing);
}

Estimate estimate_value(const CountRecord& counts, const CoefficientTensor& coeffs) {
  if (coeffs.party_count() != counts.party_count()) {
    throw DimensionError("coefficient tensor does not match the count record");
  }
  const std::uint64_t shots = counts.total();
  if (shots == 0) throw DomainError("estimate_value: count record is empty");
  Accumulator acc;
  std::size_t missing = 0;
  for (std::size_t x = 0; x < counts.tuple_count(); ++x) {
    const std::uint64_t n_x = counts.input_occurrences(x);
    if (n_x == 0) {
      ++missing;
      continue;
    }
    const double p = static_cast<double>(counts.at(0, x)) / static_cast<double>(n_x);
    acc.value += coeffs[x] * p;
    acc.variance += coeffs[x] * coeffs[x] * p * (1.0 - p);
  }
  return finish(acc, shots, missing);
}

Estimate estimate_value(const CountRecord& counts, const OutcomeCoefficientTable& coeffs, Scheme scheme) {
  if (scheme == Scheme::AllOutcome) return estimate_value(counts, coeffs);
  return estimate_value(counts, coeffs.by_outcome.at(0));
}

double log_tail_bound_p_value(double value, double sigma, std::uint64_t shots) {
  if (value >= 0.0) return 0.0;
  if (sigma <= 0.0) return -std::numeric_limits<double>::infinity();
  return -static_cast<double>(shots) * value * value / (2.0 * sigma * sigma);
}

double tail_bound_p_value(double value, double sigma, std::uint64_t shots) {
  return std::exp(log_tail_bound_p_value(value, sigma, shots));
}

double gaussian_p_value(double value, double sigma, std::uint64_t shots) {
  if (sigma <= 0.0) return value < 0.0 ? 0.0 : 1.0;
  const double z = value * std::sqrt(static_cast<double>(shots)) / sigma;
  return 0.5 * std::erfc(-z / std::sqrt(2.0));
}

LinearFit linear_fit(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2) throw DimensionError("linear_fit needs two or more paired points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw DomainError("linear_fit: x values are all equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

// ---------------------------------------------------------------------------
// Scheme comparison

ComparisonReport scheme_comparison(const DensityMatrix& state, const AncillaBasis& basis, const Witness& witness,
                                   std::span<const std::uint64_t> shot_grid, int trials, Seed seed,
                                   const MeasurementModel& model) {
  if (trials < 1) throw DomainError("scheme_comparison: trials must be positive");
  if (shot_grid.size() < 2) throw DomainError("scheme_comparison: need at least two shot counts");
  const ProbabilityTable table = probability_table(state, basis, model);
  const OutcomeCoefficientTable coeffs = outcome_coefficients(witness, basis);

  ComparisonReport report;
  report.witness = witness.name();
  report.seed = seed;
  report.exact_all_outcome = mdiew_value(table, coeffs);
  report.exact_single_outcome = single_outcome_value(table, coeffs.by_outcome.front());
  if (!(report.exact_all_outcome < 0.0)) {
    throw DomainError("scheme_comparison: the witness does not detect the state");
  }

  std::vector<double> grid_x;
  std::vector<double> all_log;
  std::vector<double> single_log;
  for (std::size_t g = 0; g < shot_grid.size(); ++g) {
    const std::uint64_t shots = shot_grid[g];
    std::vector<double> values[2];
    std::vector<double> p_paper[2];
    std::vector<double> p_gauss[2];
    std::vector<double> log_p[2];
    for (int t = 0; t < trials; ++t) {
      Rng rng = make_rng(seed, (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint64_t>(t));
      const CountRecord counts = simulate_counts(table, shots, rng);
      const Estimate both[2] = {estimate_value(counts, coeffs), estimate_value(counts, coeffs.by_outcome.front())};
      for (int s = 0; s < 2; ++s) {
        values[s].push_back(both[s].value);
        p_paper[s].push_back(both[s].p_value);
        p_gauss[s].push_back(both[s].p_gaussian);
        log_p[s].push_back(both[s].log_p_value);
        report.trials.push_back({s == 0 ? Scheme::AllOutcome : Scheme::SingleOutcome, shots, t, both[s]});
      }
    }
    for (int s = 0; s < 2; ++s) {
      ComparisonRow row;
      row.scheme = s == 0 ? Scheme::AllOutcome : Scheme::SingleOutcome;
      row.shots = shots;
      row.trials = trials;
      row.mean_value = mean(values[s]);
      row.empirical_sigma = sample_sigma(values[s]);
      row.mean_p_paper = mean(p_paper[s]);
      row.mean_p_gaussian = mean(p_gauss[s]);
      row.mean_log_p_paper = mean(log_p[s]);
      report.rows.push_back(row);
    }
    grid_x.push_back(static_cast<double>(shots));
    all_log.push_back(report.rows[report.rows.size() - 2].mean_log_p_paper);
    single_log.push_back(report.rows.back().mean_log_p_paper);
  }
  report.all_outcome_fit = linear_fit(grid_x, all_log);
  report.single_outcome_fit = linear_fit(grid_x, single_log);
  return report;
}

namespace {

nlohmann::json fit_json(const LinearFit& fit) {
  return {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared}};
}

}  // namespace

nlohmann::json to_json(const ComparisonReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ComparisonRow& row : report.rows) {
    rows.push_back({{"state", report.state},
                    {"witness", report.witness},
                    {"scheme", to_string(row.scheme)},
                    {"G", row.shots},
                    {"trials", row.trials},
                    {"mean_value", row.mean_value},
                    {"empirical_sigma", row.empirical_sigma},
                    {"mean_p_paper", row.mean_p_paper},
                    {"mean_p_gaussian", row.mean_p_gaussian},
                    {"mean_log_p_paper", row.mean_log_p_paper},
                    {"seed", report.seed.value},
                    {"generator_name", std::string(kGeneratorName)}});
  }
  return {{"state", report.state},
          {"witness", report.witness},
          {"seed", report.seed.value},
          {"generator_name", std::string(kGeneratorName)},
          {"exact_all_outcome", report.exact_all_outcome},
          {"exact_single_outcome", report.exact_single_outcome},
          {"rows", rows},
          {"log_p_fit", {{"all-outcome", fit_json(report.all_outcome_fit)},
                         {"single-outcome", fit_json(report.single_outcome_fit)}}}};
}

std::string trials_csv(const ComparisonReport& report) {
  std::ostringstream out;
  out << "scheme,G,trial,value,sigma_hat,p_paper,log_p_paper,p_gaussian,flagged\n";
  for (const TrialRecord& t : report.trials) {
    out << to_string(t.scheme) << ',' << t.shots << ',' << t.trial << ',' << format_decimal(t.estimate.value) << ','
        << format_decimal(t.estimate.sigma_hat) << ',' << format_decimal(t.estimate.p_value) << ','
        << format_decimal(t.estimate.log_p_value) << ',' << format_decimal(t.estimate.p_gaussian) << ','
        << (t.estimate.flagged ? 1 : 0) << '\n';
  }
  return out.str();
}

nlohmann::json to_json(const Estimate& e) {
  nlohmann::json j = {{"value", e.value},
                      {"sigma_hat", e.sigma_hat},
                      {"p_value", e.p_value},
                      {"log_p_value", e.log_p_value},
                      {"p_gaussian", e.p_gaussian},
                      {"shots", e.shots},
                      {"flagged", e.flagged}};
  if (!e.warning.empty()) j["warning"] = e.warning;
  return j;
}

}  // namespace mdiew
