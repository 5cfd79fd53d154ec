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

// Command layer behind the `mdiew` executable.

#ifndef MDIEW_TOOLS_CLI_HPP
#define MDIEW_TOOLS_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mdiew/protocol.hpp"
#include "mdiew/stats.hpp"
#include "mdiew/witness.hpp"

namespace mdiew::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;

/// Raised for malformed arguments or scenario files; maps to kExitUsage.
class UsageError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// reproduce

struct Check {
  std::string name;
  double computed = 0.0;
  double expected = 0.0;
  double tolerance = 1e-9;
  std::string note;

  [[nodiscard]] double deviation() const;
  [[nodiscard]] bool passed() const;
};

struct ReproduceOptions {
  /// Added to the computed Werner coefficient for outcome (1,1), input (1,1)
  /// before comparison. Nonzero values exist for negative-control runs.
  double perturbation = 0.0;
};

struct ReproduceReport {
  std::vector<Check> checks;
  double seconds = 0.0;

  [[nodiscard]] bool passed() const;
  [[nodiscard]] std::size_t failures() const;
};

ReproduceReport reproduce(const ReproduceOptions& options = {});
nlohmann::json to_json(const ReproduceReport& report);
/// One line per check: PASS|FAIL name computed expected |delta|.
std::string to_text(const ReproduceReport& report);

/// Printed coefficient tables, rows x1 (or s), columns x2 (or t).
RealMatrix werner_table(int which);         // 12..15
RealMatrix w_state_slice_printed(int x3);    // 1..4, alpha = 2/3
/// Slices at outcome (1,1,1) and alpha = 2/3 that the decomposition returns;
/// differs from the printed table for x3 = 1 and x3 = 3.
RealMatrix w_state_slice_expected(int x3);
/// Outcome pairs sharing each Werner table, as computed with m_2 = sigma_z.
std::vector<std::string> werner_group(int which);

// ---------------------------------------------------------------------------
// Scenarios

inline constexpr int kScenarioSchemaVersion = 1;

struct Scenario {
  std::string state_label;
  DensityMatrix state = DensityMatrix::maximally_mixed(4);
  std::string witness_label;
  std::optional<Witness> witness;
  AncillaBasis basis = default_basis(2);
  MeasurementModel model = IdealBsm{};
  std::string measurement_label = "ideal";
  /// "all-outcome", "single-outcome" or "both".
  std::string scheme = "all-outcome";
  std::uint64_t shots = 100000;
  std::vector<std::uint64_t> shot_grid;
  int trials = 1;
  Seed seed{0};
  std::string output;
};

/// Parses a scenario document; relative file paths resolve against `base_dir`.
Scenario parse_scenario(const nlohmann::json& doc, const std::string& base_dir = ".");
Scenario load_scenario(const std::string& path);

/// Builds a named witness: "werner" or "w_state" (with alpha).
Witness named_witness(const std::string& name, double alpha);

struct SimulationResult {
  nlohmann::json report;
  std::string trials_csv;
};

SimulationResult run_simulation(const Scenario& scenario);

// ---------------------------------------------------------------------------
// verify-mdi and depth

struct MdiBattery {
  nlohmann::json report;
  int violations = 0;
  double min_value = 0.0;
};

MdiBattery verify_mdi(int trials, Seed seed);

nlohmann::json depth_report(std::span<const double> ps, std::span<const double> alphas);

// ---------------------------------------------------------------------------
// Entry point

/// Runs the command line; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mdiew::cli

#endif  // MDIEW_TOOLS_CLI_HPP
