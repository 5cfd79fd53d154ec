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

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "mdiew/format.hpp"
#include "mdiew/structure.hpp"
#include "mdiew_tools/cli.hpp"

namespace mdiew::cli {

namespace {

namespace fs = std::filesystem;

std::string resolve(const std::string& path, const std::string& base_dir) {
  const fs::path p(path);
  return p.is_absolute() ? p.string() : (fs::path(base_dir) / p).string();
}

template <typename T>
T field(const nlohmann::json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("scenario field '") + key + "' has the wrong type: " + e.what());
  }
}

const nlohmann::json& required(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw UsageError(std::string("scenario is missing '") + key + "'");
  return j.at(key);
}

SeparableClass parse_class(const std::string& text, int party_count) {
  if (text == "fully-separable") return SeparableClass::fully_separable();
  const std::string producible = "-producible";
  if (text.size() > producible.size() && text.ends_with(producible)) {
    return SeparableClass::k_producible(std::stoi(text.substr(0, text.size() - producible.size())));
  }
  const std::string bip = "bipartition:";
  if (text.starts_with(bip)) {
    std::vector<int> side;
    for (int label : LabelTuple::parse(text.substr(bip.size())).labels()) side.push_back(label - 1);
    for (int p : side) {
      if (p >= party_count) throw UsageError("bipartition side names party " + std::to_string(p + 1));
    }
    return SeparableClass::bipartition(side);
  }
  throw UsageError("unknown class '" + text + "' (fully-separable, k-producible, bipartition:1,2)");
}

std::pair<DensityMatrix, std::string> parse_state(const nlohmann::json& j, const std::string& base_dir) {
  if (j.contains("file")) {
    const std::string path = resolve(j.at("file").get<std::string>(), base_dir);
    return {DensityMatrix(read_matrix_file(path)), "file:" + path};
  }
  const std::string name = field<std::string>(j, "name", "");
  if (name == "werner") {
    const double p = field<double>(j, "p", 1.0);
    return {werner(p), "werner(p=" + format_decimal(p) + ")"};
  }
  if (name == "w_state_noise") {
    const double p = field<double>(j, "p", 1.0);
    return {w_state_noise(p), "w_state_noise(p=" + format_decimal(p) + ")"};
  }
  if (name == "maximally_mixed") {
    const int n = field<int>(j, "parties", 2);
    return {DensityMatrix::maximally_mixed(Eigen::Index{1} << n), "maximally_mixed(" + std::to_string(n) + ")"};
  }
  if (name == "random_separable") {
    const auto blocks = field<std::vector<int>>(j, "blocks", {1, 1});
    const int terms = field<int>(j, "terms", 3);
    const Seed seed{field<std::uint64_t>(j, "seed", 0)};
    return {random_separable(blocks, terms, seed).state(),
            "random_separable(Ginibre mixture, terms=" + std::to_string(terms) + ", seed=" + std::to_string(seed.value) +
                ")"};
  }
  throw UsageError("unknown state '" + name + "' (werner, w_state_noise, maximally_mixed, random_separable, file)");
}

AncillaBasis parse_basis(const nlohmann::json& j, int party_count, const std::string& base_dir) {
  if (j.is_null() || (j.is_string() && j.get<std::string>() == "default")) return default_basis(party_count);
  if (j.is_object() && j.contains("file")) {
    const std::string path = resolve(j.at("file").get<std::string>(), base_dir);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open basis file '" + path + "'");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("basis file '" + path + "' is not valid JSON: " + e.what());
    }
    std::vector<std::vector<DensityMatrix>> per_party;
    for (const auto& party : doc) {
      std::vector<DensityMatrix> states;
      for (const auto& m : party) states.emplace_back(matrix_from_json(m));
      per_party.push_back(std::move(states));
    }
    AncillaBasis basis(std::move(per_party));
    if (basis.party_count() != party_count) throw UsageError("basis file party count does not match the state");
    return basis;
  }
  throw UsageError("basis must be \"default\" or {\"file\": path}");
}

std::pair<MeasurementModel, std::string> parse_measurement(const nlohmann::json& j, int party_count) {
  const std::string model = j.is_null() ? "ideal" : field<std::string>(j, "model", "ideal");
  if (model == "ideal") return {IdealBsm{}, "ideal"};
  if (model == "noisy") {
    const double v = field<double>(j, "visibility", 1.0);
    return {PerPartyPovm{std::vector<Povm>(static_cast<std::size_t>(party_count), noisy_bsm(v))},
            "noisy(v=" + format_decimal(v) + ")"};
  }
  if (model == "random") {
    const Seed seed{field<std::uint64_t>(j, "seed", 0)};
    PerPartyPovm povms;
    for (int k = 0; k < party_count; ++k) {
      povms.povms.push_back(random_povm(4, kLabels, derive_seed(seed, static_cast<std::uint64_t>(k))));
    }
    return {std::move(povms), "random(seed=" + std::to_string(seed.value) + ")"};
  }
  throw UsageError("unknown measurement model '" + model + "' (ideal, noisy, random)");
}

double mean(const std::vector<double>& v) {
  return v.empty() ? 0.0 : std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_sigma(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

Witness named_witness(const std::string& name, double alpha) {
  if (name == "werner") return werner_witness();
  if (name == "w_state") return w_state_witness(alpha);
  throw UsageError("unknown witness '" + name + "' (werner, w_state)");
}

Scenario parse_scenario(const nlohmann::json& doc, const std::string& base_dir) {
  if (!doc.is_object()) throw UsageError("scenario must be a JSON object");
  const int version = field<int>(doc, "schema_version", -1);
  if (version != kScenarioSchemaVersion) {
    throw UsageError("unsupported scenario schema_version " + std::to_string(version) + " (expected " +
                     std::to_string(kScenarioSchemaVersion) + ")");
  }
  Scenario s;
  auto [state, state_label] = parse_state(required(doc, "state"), base_dir);
  s.state = std::move(state);
  s.state_label = std::move(state_label);
  const int n = s.state.qubit_count();

  const nlohmann::json& w = required(doc, "witness");
  if (w.contains("file")) {
    const std::string path = resolve(w.at("file").get<std::string>(), base_dir);
    s.witness.emplace(read_matrix_file(path), parse_class(field<std::string>(w, "class", "fully-separable"), n),
                      "file:" + path);
  } else {
    s.witness.emplace(named_witness(field<std::string>(w, "name", ""), field<double>(w, "alpha", 2.0 / 3.0)));
  }
  s.witness_label = s.witness->name();
  if (s.witness->party_count() != n) throw UsageError("witness and state have different party counts");

  s.basis = parse_basis(doc.contains("basis") ? doc.at("basis") : nlohmann::json(), n, base_dir);
  auto [model, model_label] = parse_measurement(doc.contains("measurement") ? doc.at("measurement") : nlohmann::json(), n);
  s.model = std::move(model);
  s.measurement_label = std::move(model_label);

  s.scheme = field<std::string>(doc, "scheme", "all-outcome");
  if (s.scheme != "both") s.scheme = to_string(parse_scheme(s.scheme));
  s.shots = field<std::uint64_t>(doc, "shots", 100000);
  s.shot_grid = field<std::vector<std::uint64_t>>(doc, "shot_grid", {});
  s.trials = field<int>(doc, "trials", 1);
  s.seed = Seed{field<std::uint64_t>(doc, "seed", 0)};
  s.output = field<std::string>(doc, "output", "");
  if (s.shots < 1 || s.trials < 1) throw UsageError("shots and trials must be positive");
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open scenario '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("scenario '" + path + "' is not valid JSON: " + e.what());
  }
  const fs::path parent = fs::path(path).parent_path();
  return parse_scenario(doc, parent.empty() ? "." : parent.string());
}

SimulationResult run_simulation(const Scenario& s) {
  if (!s.witness) throw UsageError("scenario has no witness");
  const ProbabilityTable table = probability_table(s.state, s.basis, s.model);
  const OutcomeCoefficientTable coeffs = outcome_coefficients(*s.witness, s.basis);

  if (s.scheme == "both") {
    std::vector<std::uint64_t> grid = s.shot_grid;
    if (grid.empty()) grid = {std::max<std::uint64_t>(1, s.shots / 100), std::max<std::uint64_t>(1, s.shots / 10), s.shots};
    ComparisonReport cmp = scheme_comparison(s.state, s.basis, *s.witness, grid, s.trials, s.seed, s.model);
    cmp.state = s.state_label;
    nlohmann::json report = to_json(cmp);
    report["command"] = "simulate";
    report["scheme"] = "both";
    report["measurement"] = s.measurement_label;
    report["schema_version"] = kScenarioSchemaVersion;
    return {report, trials_csv(cmp)};
  }

  const Scheme scheme = parse_scheme(s.scheme);
  const double exact = scheme == Scheme::AllOutcome ? mdiew_value(table, coeffs)
                                                    : single_outcome_value(table, coeffs.by_outcome.front());
  std::vector<double> values;
  std::vector<double> p_paper;
  std::vector<double> p_gauss;
  std::vector<double> log_p;
  int detections = 0;
  int flagged = 0;
  std::ostringstream csv;
  csv << "trial,value,sigma_hat,p_paper,log_p_paper,p_gaussian,flagged\n";
  for (int t = 0; t < s.trials; ++t) {
    Rng rng = make_rng(s.seed, static_cast<std::uint64_t>(t));
    const Estimate e = estimate_value(simulate_counts(table, s.shots, rng), coeffs, scheme);
    values.push_back(e.value);
    p_paper.push_back(e.p_value);
    p_gauss.push_back(e.p_gaussian);
    log_p.push_back(e.log_p_value);
    detections += e.p_value < 1e-3 ? 1 : 0;
    flagged += e.flagged ? 1 : 0;
    csv << t << ',' << format_decimal(e.value) << ',' << format_decimal(e.sigma_hat) << ','
        << format_decimal(e.p_value) << ',' << format_decimal(e.log_p_value) << ',' << format_decimal(e.p_gaussian)
        << ',' << (e.flagged ? 1 : 0) << '\n';
  }
  nlohmann::json report = {{"command", "simulate"},
                           {"schema_version", kScenarioSchemaVersion},
                           {"state", s.state_label},
                           {"witness", s.witness_label},
                           {"measurement", s.measurement_label},
                           {"scheme", s.scheme},
                           {"G", s.shots},
                           {"trials", s.trials},
                           {"exact_value", exact},
                           {"mean_value", mean(values)},
                           {"empirical_sigma", sample_sigma(values)},
                           {"mean_p_paper", mean(p_paper)},
                           {"mean_p_gaussian", mean(p_gauss)},
                           {"mean_log_p_paper", mean(log_p)},
                           {"detections_p_below_1e-3", detections},
                           {"flagged_trials", flagged},
                           {"seed", s.seed.value},
                           {"generator_name", std::string(kGeneratorName)}};
  return {report, csv.str()};
}

}  // namespace mdiew::cli
