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
#include <filesystem>
#include <iostream>
#include <limits>

#include <CLI11.hpp>

#include "mdiew/format.hpp"
#include "mdiew/structure.hpp"
#include "mdiew_tools/cli.hpp"

namespace mdiew::cli {

namespace {

struct Battery {
  Witness witness;
  DeviceModel devices;
};

std::vector<Battery> builtin_batteries() {
  const Witness w_bi_first = projector_witness(w_state_vector(), 2.0 / 3.0, SeparableClass::bipartition({0}),
                                               "w_state(alpha=2/3) bipartition");
  const Witness w_bi_last = projector_witness(w_state_vector(), 2.0 / 3.0, SeparableClass::bipartition({0, 1}),
                                              "w_state(alpha=2/3) bipartition");
  std::vector<Battery> out;
  for (DeviceModel d : {DeviceModel::Ideal, DeviceModel::RandomPovm}) {
    out.push_back({werner_witness(), d});
    out.push_back({w_state_witness(2.0 / 3.0), d});
    out.push_back({w_state_witness(4.0 / 9.0), d});
    out.push_back({w_bi_first, d});
    out.push_back({w_bi_last, d});
  }
  return out;
}

void emit(const nlohmann::json& report, const std::string& out_path, std::ostream& out) {
  const std::string text = report.dump(2) + "\n";
  if (!out_path.empty()) write_text_file(out_path, text);
  out << text;
}

}  // namespace

MdiBattery verify_mdi(int trials, Seed seed) {
  MdiBattery result;
  result.min_value = std::numeric_limits<double>::infinity();
  nlohmann::json runs = nlohmann::json::array();
  const std::vector<Battery> batteries = builtin_batteries();
  for (std::size_t i = 0; i < batteries.size(); ++i) {
    const HarnessReport r =
        structure_witness_check(batteries[i].witness, trials, derive_seed(seed, i), batteries[i].devices);
    result.violations += r.violations;
    result.min_value = std::min(result.min_value, r.min_value);
    runs.push_back(to_json(r));
  }
  result.report = {{"command", "verify-mdi"},
                   {"trials", trials},
                   {"seed", seed.value},
                   {"generator_name", std::string(kGeneratorName)},
                   {"state_sampler", "Ginibre block mixtures, weights uniform on the simplex"},
                   {"violation_tolerance", kViolationTolerance},
                   {"violations", result.violations},
                   {"min_value", result.min_value},
                   {"batteries", runs}};
  return result;
}

nlohmann::json depth_report(std::span<const double> ps, std::span<const double> alphas) {
  nlohmann::json rows = nlohmann::json::array();
  for (double alpha : alphas) {
    for (double p : ps) {
      nlohmann::json j = to_json(depth_detection(w_state_noise(p), alpha));
      j["p"] = p;
      j["closed_form"] = 8.0 * alpha - 1.0 - 7.0 * p;
      rows.push_back(std::move(j));
    }
  }
  return {{"command", "depth"}, {"state", "w_state_noise"}, {"verdicts", rows}};
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-device-independent entanglement witnessing", "mdiew"};
  app.require_subcommand(1);

  std::string out_path;
  std::uint64_t seed = 0;
  int trials = 0;
  std::uint64_t shots = 0;

  auto* reproduce_cmd = app.add_subcommand("reproduce", "Recompute the published coefficient tables and closed forms");
  double perturbation = 0.0;
  bool as_json = false;
  reproduce_cmd->add_option("--perturb", perturbation, "Add this offset to one computed coefficient (negative control)");
  reproduce_cmd->add_flag("--json", as_json, "Print the JSON report instead of text");
  reproduce_cmd->add_option("--out", out_path, "Write the JSON report here");

  auto* simulate_cmd = app.add_subcommand("simulate", "Run a finite-shot scenario");
  std::string scenario_path;
  simulate_cmd->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  simulate_cmd->add_option("--seed", seed, "Override the scenario seed");
  simulate_cmd->add_option("--shots", shots, "Override the shot count");
  simulate_cmd->add_option("--trials", trials, "Override the trial count");
  simulate_cmd->add_option("--out", out_path, "Output directory for report.json and trials.csv");

  auto* verify_cmd = app.add_subcommand("verify-mdi", "Sampled nonnegativity batteries on declared classes");
  verify_cmd->add_option("--trials", trials, "Trials per battery (default 1000)");
  verify_cmd->add_option("--seed", seed, "Seed");
  verify_cmd->add_option("--out", out_path, "Write the JSON report here");

  auto* depth_cmd = app.add_subcommand("depth", "Depth verdicts for W-state mixtures");
  std::vector<double> ps{0.0, 23.0 / 63.0, 0.5, 0.6, 13.0 / 21.0, 0.65, 1.0};
  std::vector<double> alphas{2.0 / 3.0, 4.0 / 9.0};
  depth_cmd->add_option("--p", ps, "Mixture weights of the W state");
  depth_cmd->add_option("--alpha", alphas, "Witness offsets (>= 4/9)");
  depth_cmd->add_option("--out", out_path, "Write the JSON report here");
  depth_cmd->add_option("--seed", seed, "Recorded in the report (the command is deterministic)");

  auto* decompose_cmd = app.add_subcommand("decompose", "Print coefficient tensors of a witness");
  std::string witness_arg = "werner";
  double alpha = 2.0 / 3.0;
  std::string outcome_arg;
  decompose_cmd->add_option("--witness", witness_arg, "Matrix file or name (werner, w_state)");
  decompose_cmd->add_option("--alpha", alpha, "Offset for the w_state witness");
  decompose_cmd->add_option("--outcome", outcome_arg, "Outcome tuple i1,i2,...; all outcomes when omitted");
  decompose_cmd->add_option("--out", out_path, "Write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*reproduce_cmd) {
      const ReproduceReport report = reproduce({perturbation});
      if (!out_path.empty()) write_text_file(out_path, to_json(report).dump(2) + "\n");
      out << (as_json ? to_json(report).dump(2) + "\n" : to_text(report));
      return report.passed() ? kExitOk : kExitCheckFailed;
    }
    if (*simulate_cmd) {
      Scenario s = load_scenario(scenario_path);
      if (simulate_cmd->count("--seed")) s.seed = Seed{seed};
      if (simulate_cmd->count("--shots")) s.shots = shots;
      if (simulate_cmd->count("--trials")) s.trials = trials;
      if (simulate_cmd->count("--out")) s.output = out_path;
      if (s.shots < 1 || s.trials < 1) throw UsageError("shots and trials must be positive");
      const SimulationResult result = run_simulation(s);
      if (!s.output.empty()) {
        const std::filesystem::path dir(s.output);
        write_text_file((dir / "report.json").string(), result.report.dump(2) + "\n");
        write_text_file((dir / "trials.csv").string(), result.trials_csv);
      }
      out << result.report.dump(2) << '\n';
      return kExitOk;
    }
    if (*verify_cmd) {
      const int n = verify_cmd->count("--trials") ? trials : 1000;
      if (n < 1) throw UsageError("--trials must be positive");
      const MdiBattery result = verify_mdi(n, Seed{seed});
      emit(result.report, out_path, out);
      return result.violations == 0 ? kExitOk : kExitCheckFailed;
    }
    if (*depth_cmd) {
      nlohmann::json report = depth_report(ps, alphas);
      report["seed"] = seed;
      report["generator_name"] = std::string(kGeneratorName);
      emit(report, out_path, out);
      return kExitOk;
    }
    if (*decompose_cmd) {
      ComplexMatrix op;
      if (std::filesystem::exists(witness_arg)) {
        op = read_matrix_file(witness_arg);
      } else {
        op = named_witness(witness_arg, alpha).op();
      }
      if (op.rows() != op.cols()) throw UsageError("witness matrix must be square");
      const int n = qubit_count_for_dim(op.rows());
      const AncillaBasis basis = default_basis(n);
      nlohmann::json j = nlohmann::json::object();
      if (outcome_arg.empty()) {
        j = to_json(outcome_coefficients(op, basis));
      } else {
        const OutcomeTuple o = OutcomeTuple::parse(outcome_arg);
        j[o.to_string()] = to_json(decompose(op, basis, o));
      }
      emit(j, out_path, out);
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "mdiew: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SingularSystemError& e) {
    err << "mdiew: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << "mdiew: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "mdiew: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace mdiew::cli
