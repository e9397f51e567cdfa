// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nmqc/harness.hpp"

namespace {

int cmd_run(const nmqc::ExperimentPlan& plan, const std::string& out_path,
            const std::string& format_name) {
  const nmqc::RunReport report = nmqc::run(plan);
  std::cout << nmqc::summary_to_text(report.summary);
  if (!out_path.empty()) {
    nmqc::write_report(report, out_path, nmqc::parse_format(format_name));
    std::cout << "wrote " << report.rows.size() << " rows to " << out_path
              << "\n";
  } else if (report.rows.size() <= 64) {
    std::cout << nmqc::rows_to_csv(report.rows);
  } else {
    std::cout << "(" << report.rows.size()
              << " rows; pass --out to write the full report)\n";
  }
  return report.summary.n_errors == 0 ? 0 : 1;
}

}  // namespace

namespace {

int run_main(int argc, char** argv) {
  CLI::App app{"NMQC Bell-inequality experiments on simulated GHZ states"};
  app.require_subcommand(1);

  // run -------------------------------------------------------------------
  nmqc::ExperimentPlan plan;
  std::string noise_spec = "device";
  std::string mitigation_name = "auto";
  std::string out_path;
  std::string format_name = "csv";
  std::string calibration_path;
  double depolarizing = -1.0;

  CLI::App* run = app.add_subcommand("run", "run a game over qubit configurations");
  run->add_option("--game", plan.game,
                  "NAND2|OR3|OR3XOR|H3..H6|Hk:<k> or a game JSON file")
      ->capture_default_str();
  run->add_option("--graph", plan.graph, "builtin 'falcon27' or a graph JSON file")
      ->capture_default_str();
  run->add_option("--configs", plan.configs,
                  "'all' or explicit lists like 0,1,2,4 (';'-separated)")
      ->capture_default_str();
  run->add_option("--shots", plan.shots, "shots per circuit; 0 = exact mode")
      ->capture_default_str();
  run->add_option("--runs", plan.runs, "independent runs per configuration")
      ->capture_default_str();
  run->add_option("--noise", noise_spec, "none|device|<noise JSON file>")
      ->capture_default_str();
  run->add_option("--depolarizing", depolarizing,
                  "two-qubit depolarizing rate (overrides the noise config)");
  run->add_option("--mitigation", mitigation_name, "none|qrem|mem|auto")
      ->capture_default_str();
  run->add_option("--calibration", calibration_path,
                  "calibration snapshot JSON (single-configuration runs)");
  run->add_option("--calibration-shots", plan.calibration_shots,
                  "estimate calibrations with this many shots (0 = exact)")
      ->capture_default_str();
  run->add_option("--resamples", plan.resamples,
                  "bootstrap resamples for the CI; 0 disables")
      ->capture_default_str();
  run->add_option("--ci-level", plan.ci_level, "confidence level")
      ->capture_default_str();
  run->add_option("--seed", plan.seed, "master seed")->capture_default_str();
  run->add_option("--threads", plan.threads, "worker threads (0 = hardware)")
      ->capture_default_str();
  run->add_option("--out", out_path, "report file");
  run->add_option("--format", format_name, "csv|json")->capture_default_str();

  // certify ---------------------------------------------------------------
  std::string certify_game;
  bool certify_json = false;
  CLI::App* cert = app.add_subcommand("certify", "print coefficients and certified bounds");
  cert->add_option("--game", certify_game, "game name or JSON file")->required();
  cert->add_flag("--json", certify_json, "emit JSON instead of text");
  cert->add_option("--out", out_path, "write to file instead of stdout");

  // enumerate ---------------------------------------------------------------
  std::string enum_graph = "falcon27";
  int enum_qubits = 4;
  CLI::App* enu = app.add_subcommand("enumerate", "list connected qubit configurations");
  enu->add_option("--graph", enum_graph, "graph name or file")->capture_default_str();
  enu->add_option("--qubits", enum_qubits, "configuration size")->capture_default_str();

  // calibrate ---------------------------------------------------------------
  std::string cal_graph = "falcon27";
  std::string cal_config;
  std::string cal_method = "auto";
  std::string cal_noise = "device";
  long long cal_shots = 100000;
  std::uint64_t cal_seed = 0;
  std::string cal_out;
  CLI::App* cal = app.add_subcommand("calibrate", "emit a calibration snapshot JSON");
  cal->add_option("--graph", cal_graph, "graph name or file")->capture_default_str();
  cal->add_option("--config", cal_config, "qubit list, e.g. 0,1,2,4")->required();
  cal->add_option("--method", cal_method, "qrem|mem|auto")->capture_default_str();
  cal->add_option("--noise", cal_noise, "none|device|<noise JSON file>")
      ->capture_default_str();
  cal->add_option("--shots", cal_shots, "calibration shots (0 = exact from model)")
      ->capture_default_str();
  cal->add_option("--seed", cal_seed, "sampling seed")->capture_default_str();
  cal->add_option("--out", cal_out, "output file")->required();

  // report ------------------------------------------------------------------
  std::string report_in;
  CLI::App* rep = app.add_subcommand("report", "re-emit a stored report and its summary");
  rep->add_option("--in", report_in, "report JSON produced by run")->required();
  rep->add_option("--format", format_name, "csv|json")->capture_default_str();
  rep->add_option("--out", out_path, "output file");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      plan.noise = nmqc::NoiseConfig::parse(noise_spec);
      if (depolarizing >= 0.0) plan.noise.depolarizing_2q = depolarizing;
      plan.mitigation = nmqc::parse_mitigation(mitigation_name);
      if (!calibration_path.empty()) plan.calibration_file = calibration_path;
      return cmd_run(plan, out_path, format_name);
    }
    if (cert->parsed()) {
      const nmqc::CertifyReport r = nmqc::certify(certify_game);
      const std::string text =
          certify_json ? nmqc::certify_to_json_text(r) : nmqc::certify_to_text(r);
      if (out_path.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(out_path);
        out << text;
      }
      return 0;
    }
    if (enu->parsed()) {
      const nmqc::CouplingGraph graph = nmqc::resolve_graph(enum_graph);
      const auto configs = nmqc::enumerate_configs(graph, enum_qubits);
      for (const auto& c : configs) {
        std::cout << c.label() << "\n";
      }
      std::cerr << configs.size() << " configurations\n";
      return 0;
    }
    if (cal->parsed()) {
      const nmqc::CouplingGraph graph = nmqc::resolve_graph(cal_graph);
      std::vector<int> qubits;
      {
        std::stringstream ss(cal_config);
        std::string item;
        while (std::getline(ss, item, ',')) qubits.push_back(std::stoi(item));
      }
      const nmqc::QubitConfiguration config =
          nmqc::make_configuration(graph, qubits);
      const nmqc::CalibrationSnapshot snap = nmqc::build_calibration(
          graph, config, nmqc::NoiseConfig::parse(cal_noise),
          nmqc::parse_mitigation(cal_method), cal_shots, cal_seed);
      std::ofstream out(cal_out);
      if (!out) {
        throw std::runtime_error("cannot write " + cal_out);
      }
      out << snap.to_json_text();
      std::cout << "wrote " << snap.method << " calibration for "
                << config.label() << " to " << cal_out << "\n";
      return 0;
    }
    if (rep->parsed()) {
      std::ifstream in(report_in);
      if (!in) {
        throw std::runtime_error("cannot open " + report_in);
      }
      std::stringstream buf;
      buf << in.rdbuf();
      const nmqc::RunReport report = nmqc::report_from_json_text(buf.str());
      std::cout << nmqc::summary_to_text(report.summary);
      if (!out_path.empty()) {
        nmqc::write_report(report, out_path, nmqc::parse_format(format_name));
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
