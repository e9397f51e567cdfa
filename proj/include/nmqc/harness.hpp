// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#ifndef NMQC_HARNESS_HPP
#define NMQC_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nmqc/game.hpp"
#include "nmqc/mitigation.hpp"
#include "nmqc/sim.hpp"
#include "nmqc/stats.hpp"
#include "nmqc/topology.hpp"

namespace nmqc {

enum class MitigationMethod { None, Qrem, Mem, Auto };
enum class ReportFormat { Csv, Json };

MitigationMethod parse_mitigation(const std::string& name);
ReportFormat parse_format(const std::string& name);

// Where readout rates come from: the graph's calibration snapshot ("device"),
// nothing ("none"), or a JSON file {"readout_error_override": [...],
// "depolarizing_2q": p} overriding either piece.
struct NoiseConfig {
  bool ideal = false;
  std::optional<std::vector<double>> readout_override;  // per physical qubit
  double depolarizing_2q = 0.0;

  static NoiseConfig none();
  static NoiseConfig device(double depolarizing_2q = 0.0);
  static NoiseConfig from_file(const std::string& path);
  // "none" | "device" | JSON path
  static NoiseConfig parse(const std::string& spec);

  NoiseModel build(const CouplingGraph& graph,
                   const QubitConfiguration& config) const;
};

// One batch experiment: a game swept over qubit configurations of a graph.
struct ExperimentPlan {
  std::string game = "H3";
  std::string graph = "falcon27";
  std::string configs = "all";  // "all" or lists like "0,1,2,4" (';'-separated)
  long long shots = 1000;       // 0 = exact mode (analytic distributions)
  int runs = 1;
  NoiseConfig noise = NoiseConfig::device();
  MitigationMethod mitigation = MitigationMethod::Auto;
  std::optional<std::string> calibration_file;
  long long calibration_shots = 0;  // 0 = exact calibrations from the model
  int resamples = 1000;             // bootstrap resamples; 0 disables the CI
  double ci_level = 0.99;
  std::uint64_t seed = 0;
  int threads = 0;  // 0 = hardware concurrency
};

struct ReportRow {
  std::string kind;  // "config" | "aggregate" | "best"
  std::string game;
  std::string config;
  double beta_raw = 0.0;
  std::optional<double> beta_raw_std;  // across runs or configurations
  std::optional<double> beta_mitigated;
  std::optional<double> beta_mitigated_std;
  std::optional<ConfidenceInterval> ci;
  double beta_c = 0.0;
  double beta_q = 0.0;
  bool violation = false;  // beta above the LHV bound (beyond the CI when present)
  long long shots = 0;
  int runs = 1;
  std::uint64_t seed = 0;
  std::string error;  // non-empty marks a failed configuration
};

struct RunSummary {
  std::string game;
  double beta_c = 0.0;
  double beta_q = 0.0;
  int n_configs = 0;
  int n_errors = 0;
  int n_violations = 0;
  double mean_beta_raw = 0.0;
  double std_beta_raw = 0.0;
  std::optional<double> mean_beta_mitigated;
  bool violation = false;  // mean raw value exceeds the classical bound
};

struct RunReport {
  std::vector<ReportRow> rows;
  RunSummary summary;
};

// Executes the sweep: per configuration, schedule the GHZ circuit from the
// selected root, play every input of the game, mitigate, estimate beta and
// its CI. Configuration failures become error rows instead of aborting.
// In all-configs mode an aggregate row (mean/std over configurations) and a
// best-configuration row are appended.
RunReport run(const ExperimentPlan& plan);

std::string rows_to_csv(const std::vector<ReportRow>& rows);
std::string report_to_json_text(const RunReport& report);
RunReport report_from_json_text(const std::string& text);
std::string summary_to_text(const RunSummary& summary);
void write_report(const RunReport& report, const std::string& path,
                  ReportFormat format);

// Bounds certificate: the Bell coefficient table plus every bound route that
// applies to the game.
struct CertifyReport {
  std::string game;
  int qubits = 0;
  int arity = 0;
  std::vector<BellTerm> terms;
  double beta_c_bruteforce = 0.0;
  std::optional<double> beta_c_formula;       // h_k closed form
  std::optional<double> beta_c_nonlinearity;  // uniform-xi route
  double beta_q = 0.0;
  bool deterministic = false;
};

CertifyReport certify(const std::string& game_name_or_path);
std::string certify_to_text(const CertifyReport& report);
std::string certify_to_json_text(const CertifyReport& report);

// Calibration snapshots reusable across runs (the `calibrate` verb).
struct CalibrationSnapshot {
  std::string method;  // "qrem" | "mem"
  std::vector<int> qubits;
  std::vector<CalibrationMatrix> local;      // qrem
  std::optional<GlobalCalibration> global;   // mem

  std::string to_json_text() const;
  static CalibrationSnapshot from_json_text(const std::string& text);
  static CalibrationSnapshot load(const std::string& path);
};

// shots = 0 captures the model's exact matrices; otherwise they are
// estimated from simulated calibration circuits.
CalibrationSnapshot build_calibration(const CouplingGraph& graph,
                                      const QubitConfiguration& config,
                                      const NoiseConfig& noise,
                                      MitigationMethod method, long long shots,
                                      std::uint64_t seed);

}  // namespace nmqc

#endif  // NMQC_HARNESS_HPP
