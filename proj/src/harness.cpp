// Copyright 2026 The nmqc developers.
//
// This source code is licensed under the Apache License, Version 2.0 found in
// the LICENSE file in the root directory of this source tree.

#include "nmqc/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "nmqc/circuit.hpp"
#include "nmqc/kernels.hpp"
#include "nmqc/rng.hpp"

namespace nmqc {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

void parallel_for(int n, int threads, const std::function<void(int)>& body) {
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
  }
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse qubit index '" + item + "'");
    }
  }
  if (out.empty()) {
    throw std::invalid_argument("empty configuration list");
  }
  return out;
}

std::vector<QubitConfiguration> select_configs(const CouplingGraph& graph,
                                               const std::string& spec, int l) {
  if (spec == "all") {
    return enumerate_configs(graph, l);
  }
  std::vector<QubitConfiguration> configs;
  std::stringstream ss(spec);
  std::string part;
  while (std::getline(ss, part, ';')) {
    configs.push_back(make_configuration(graph, parse_int_list(part)));
  }
  for (const auto& c : configs) {
    if (c.size() != l) {
      throw std::invalid_argument("configuration " + c.label() + " has " +
                                  std::to_string(c.size()) +
                                  " qubits, the game needs " + std::to_string(l));
    }
  }
  return configs;
}

std::vector<CalibrationMatrix> identity_calibrations(int l) {
  return std::vector<CalibrationMatrix>(l, CalibrationMatrix{});
}

}  // namespace

MitigationMethod parse_mitigation(const std::string& name) {
  if (name == "none") return MitigationMethod::None;
  if (name == "qrem") return MitigationMethod::Qrem;
  if (name == "mem") return MitigationMethod::Mem;
  if (name == "auto") return MitigationMethod::Auto;
  throw std::invalid_argument("unknown mitigation method: " + name);
}

ReportFormat parse_format(const std::string& name) {
  if (name == "csv") return ReportFormat::Csv;
  if (name == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format: " + name);
}

NoiseConfig NoiseConfig::none() {
  NoiseConfig c;
  c.ideal = true;
  return c;
}

NoiseConfig NoiseConfig::device(double depolarizing_2q) {
  NoiseConfig c;
  c.depolarizing_2q = depolarizing_2q;
  return c;
}

NoiseConfig NoiseConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open noise file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid noise JSON: ") + e.what());
  }
  NoiseConfig c;
  if (j.contains("readout_error_override")) {
    c.readout_override = j.at("readout_error_override").get<std::vector<double>>();
  }
  c.depolarizing_2q = j.value("depolarizing_2q", 0.0);
  return c;
}

NoiseConfig NoiseConfig::parse(const std::string& spec) {
  if (spec == "none") return none();
  if (spec == "device" || spec.empty()) return device();
  return from_file(spec);
}

NoiseModel NoiseConfig::build(const CouplingGraph& graph,
                              const QubitConfiguration& config) const {
  if (ideal) return {};
  const std::vector<double>& rates =
      readout_override ? *readout_override : graph.readout_error;
  if (static_cast<int>(rates.size()) != graph.n_qubits) {
    throw std::invalid_argument(
        "readout_error_override needs one rate per physical qubit");
  }
  NoiseModel m;
  m.depolarizing_2q = depolarizing_2q;
  m.readout.reserve(config.qubits.size());
  for (int q : config.qubits) {
    m.readout.push_back(CalibrationMatrix::symmetric(rates[q]));
  }
  return m;
}

namespace {

struct ConfigCalibration {
  std::vector<CalibrationMatrix> local;
  std::optional<MemSolver> solver;  // factored once per configuration
};

ConfigCalibration prepare_calibration(const ExperimentPlan& plan,
                                      MitigationMethod method,
                                      const QubitConfiguration& config,
                                      const NoiseModel& noise,
                                      const CalibrationSnapshot* snapshot,
                                      std::uint64_t cal_seed) {
  ConfigCalibration out;
  const int l = config.size();
  if (snapshot != nullptr) {
    if (snapshot->qubits != config.qubits) {
      throw std::invalid_argument(
          "calibration snapshot covers qubits that do not match configuration " +
          config.label());
    }
    out.local = snapshot->local;
    if (snapshot->global) out.solver.emplace(*snapshot->global);
    return out;
  }
  if (plan.calibration_shots > 0) {
    const BasisSampler sampler = make_basis_sampler(l, noise, cal_seed);
    if (method == MitigationMethod::Mem) {
      out.solver.emplace(
          build_global_calibration(sampler, l, plan.calibration_shots));
    } else {
      out.local = build_local_calibrations(sampler, l, plan.calibration_shots);
    }
    return out;
  }
  // Exact calibrations straight from the model.
  out.local = noise.readout.empty() ? identity_calibrations(l) : noise.readout;
  if (method == MitigationMethod::Mem) {
    out.solver.emplace(kron_calibration(out.local));
  }
  return out;
}

ProbabilityVector correct_distribution(const ProbabilityVector& p,
                                       MitigationMethod method,
                                       const ConfigCalibration& cal) {
  if (method == MitigationMethod::Mem) {
    return cal.solver->correct(p);
  }
  return qrem_correct(p, cal.local);
}

}  // namespace

RunReport run(const ExperimentPlan& plan) {
  if (plan.shots < 0) {
    throw std::invalid_argument("shots must be >= 0 (0 = exact mode)");
  }
  if (plan.runs < 1) {
    throw std::invalid_argument("runs must be >= 1");
  }
  const NmqcGame game = resolve_game(plan.game);
  const CouplingGraph graph = resolve_graph(plan.graph);
  const int l = game.qubits;
  const std::vector<QubitConfiguration> configs =
      select_configs(graph, plan.configs, l);

  const double beta_c = classical_bound_bruteforce(game);
  const double beta_q = ghz_value(game);

  MitigationMethod method = plan.mitigation;
  if (method == MitigationMethod::Auto) {
    method = l <= 5 ? MitigationMethod::Qrem : MitigationMethod::Mem;
  }

  std::optional<CalibrationSnapshot> snapshot;
  if (plan.calibration_file) {
    snapshot = CalibrationSnapshot::load(*plan.calibration_file);
    if (configs.size() != 1) {
      throw std::invalid_argument(
          "a calibration snapshot applies to a single explicit configuration");
    }
    method = snapshot->method == "mem" ? MitigationMethod::Mem
                                       : MitigationMethod::Qrem;
  }

  std::vector<std::uint32_t> inputs;
  for (std::size_t x = 0; x < game.target.domain_size(); ++x) {
    if (game.distribution[x] > 0.0) inputs.push_back(static_cast<std::uint32_t>(x));
  }

  std::vector<ReportRow> rows(configs.size());
  const bool mitigate = method != MitigationMethod::None;

  parallel_for(
      static_cast<int>(configs.size()), plan.threads, [&](int ci) {
        const QubitConfiguration& config = configs[ci];
        ReportRow row;
        row.kind = "config";
        row.game = game.name;
        row.config = config.label();
        row.beta_c = beta_c;
        row.beta_q = beta_q;
        row.shots = plan.shots;
        row.runs = plan.runs;
        row.seed = plan.seed;
        row.beta_raw = kNan;
        try {
          const int root = select_root(config, graph);
          const Circuit circuit = ghz_circuit(config, root);
          const NoiseModel noise = plan.noise.build(graph, config);
          const std::uint64_t config_seed = derive_seed(plan.seed, ci);

          ConfigCalibration cal;
          if (mitigate) {
            cal = prepare_calibration(plan, method, config, noise,
                                      snapshot ? &*snapshot : nullptr,
                                      derive_seed(config_seed, 0xCA11));
          }

          std::vector<double> raw_betas;
          std::vector<double> mit_betas;
          std::vector<InputCounts> first_run_counts;
          for (int r = 0; r < plan.runs; ++r) {
            const std::uint64_t run_seed = derive_seed(config_seed, r);
            std::vector<ExpectationEstimate> raw_est;
            std::vector<ExpectationEstimate> mit_est;
            for (std::uint32_t x : inputs) {
              const std::string settings = setting_string(game, x);
              ProbabilityVector measured;
              if (plan.shots == 0) {
                measured = exact_setting_distribution(circuit, settings, noise);
                raw_est.push_back(ExpectationEstimate{
                    kern::active().parity_sum(measured.data(), measured.size()),
                    0, settings, x});
              } else {
                const CountsTable counts = sample(circuit, settings, plan.shots,
                                                  noise, derive_seed(run_seed, x));
                raw_est.push_back(estimate_from_counts(counts, game, x));
                if (r == 0) first_run_counts.push_back(InputCounts{x, counts});
                if (mitigate) measured = counts_to_probabilities(counts, l);
              }
              if (mitigate) {
                const ProbabilityVector corrected =
                    correct_distribution(measured, method, cal);
                mit_est.push_back(ExpectationEstimate{
                    kern::active().parity_sum(corrected.data(), corrected.size()),
                    plan.shots, settings, x});
              }
            }
            raw_betas.push_back(bell_value(game, raw_est).beta);
            if (mitigate) mit_betas.push_back(bell_value(game, mit_est).beta);
          }

          row.beta_raw = mean_of(raw_betas);
          if (plan.runs > 1) {
            row.beta_raw_std = stddev_of(raw_betas, row.beta_raw);
          }
          if (mitigate) {
            row.beta_mitigated = mean_of(mit_betas);
            if (plan.runs > 1) {
              row.beta_mitigated_std = stddev_of(mit_betas, *row.beta_mitigated);
            }
          }
          if (plan.runs == 1 && plan.shots > 0 && plan.resamples > 0) {
            const auto [lo, hi] =
                bootstrap_ci(first_run_counts, game, plan.resamples,
                             plan.ci_level, derive_seed(config_seed, 0xB007));
            row.ci = ConfidenceInterval{lo, hi, plan.ci_level};
          }
          row.violation = (row.ci ? row.ci->low : row.beta_raw) > beta_c;
        } catch (const std::exception& e) {
          row.error = e.what();
          row.beta_raw = kNan;
        }
        rows[ci] = std::move(row);
      });

  RunReport report;
  report.rows = std::move(rows);

  // Aggregate over the sweep.
  std::vector<double> ok_raw;
  std::vector<double> ok_mit;
  int n_violations = 0;
  ReportRow best;
  bool have_best = false;
  for (const ReportRow& row : report.rows) {
    if (!row.error.empty()) continue;
    ok_raw.push_back(row.beta_raw);
    if (row.beta_mitigated) ok_mit.push_back(*row.beta_mitigated);
    if (row.violation) ++n_violations;
    if (!have_best || row.beta_raw > best.beta_raw) {
      best = row;
      have_best = true;
    }
  }

  RunSummary& s = report.summary;
  s.game = game.name;
  s.beta_c = beta_c;
  s.beta_q = beta_q;
  s.n_configs = static_cast<int>(configs.size());
  s.n_errors = static_cast<int>(configs.size() - ok_raw.size());
  s.n_violations = n_violations;
  if (!ok_raw.empty()) {
    s.mean_beta_raw = mean_of(ok_raw);
    s.std_beta_raw = stddev_of(ok_raw, s.mean_beta_raw);
    if (!ok_mit.empty()) s.mean_beta_mitigated = mean_of(ok_mit);
    s.violation = s.mean_beta_raw > beta_c;
  } else {
    s.mean_beta_raw = kNan;
    s.std_beta_raw = kNan;
  }

  if (plan.configs == "all" && have_best) {
    ReportRow agg;
    agg.kind = "aggregate";
    agg.game = game.name;
    agg.config = "mean-of-" + std::to_string(ok_raw.size());
    agg.beta_raw = s.mean_beta_raw;
    agg.beta_raw_std = s.std_beta_raw;
    if (!ok_mit.empty()) {
      agg.beta_mitigated = s.mean_beta_mitigated;
      agg.beta_mitigated_std = stddev_of(ok_mit, *s.mean_beta_mitigated);
    }
    agg.beta_c = beta_c;
    agg.beta_q = beta_q;
    agg.violation = s.violation;
    agg.shots = plan.shots;
    agg.runs = plan.runs;
    agg.seed = plan.seed;
    report.rows.push_back(std::move(agg));

    best.kind = "best";
    report.rows.push_back(std::move(best));
  }
  return report;
}

std::string rows_to_csv(const std::vector<ReportRow>& rows) {
  const auto opt_fmt = [](const std::optional<double>& v) {
    return v ? fmt(*v) : std::string();
  };
  std::string out =
      "kind,game,config,beta_raw,beta_raw_std,beta_mitigated,beta_mitigated_std,"
      "ci_low,ci_high,ci_level,beta_c,beta_q,violation,shots,runs,seed,error\n";
  for (const ReportRow& r : rows) {
    out += r.kind + ',' + r.game + ',' + csv_escape(r.config) + ',';
    out += fmt(r.beta_raw) + ',';
    out += opt_fmt(r.beta_raw_std) + ',';
    out += opt_fmt(r.beta_mitigated) + ',';
    out += opt_fmt(r.beta_mitigated_std) + ',';
    out += (r.ci ? fmt(r.ci->low) : std::string()) + ',';
    out += (r.ci ? fmt(r.ci->high) : std::string()) + ',';
    out += (r.ci ? fmt(r.ci->level) : std::string()) + ',';
    out += fmt(r.beta_c) + ',' + fmt(r.beta_q) + ',';
    out += (r.violation ? "true" : "false");
    out += ',' + std::to_string(r.shots) + ',' + std::to_string(r.runs) + ',' +
           std::to_string(r.seed) + ',' + csv_escape(r.error) + '\n';
  }
  return out;
}

namespace {

nlohmann::json row_to_json(const ReportRow& r) {
  nlohmann::json j;
  j["kind"] = r.kind;
  j["game"] = r.game;
  j["config"] = r.config;
  j["beta_raw"] = std::isnan(r.beta_raw) ? nlohmann::json() : nlohmann::json(r.beta_raw);
  j["beta_raw_std"] = r.beta_raw_std ? nlohmann::json(*r.beta_raw_std) : nlohmann::json();
  j["beta_mitigated"] =
      r.beta_mitigated ? nlohmann::json(*r.beta_mitigated) : nlohmann::json();
  j["beta_mitigated_std"] =
      r.beta_mitigated_std ? nlohmann::json(*r.beta_mitigated_std) : nlohmann::json();
  if (r.ci) {
    j["ci_low"] = r.ci->low;
    j["ci_high"] = r.ci->high;
    j["ci_level"] = r.ci->level;
  } else {
    j["ci_low"] = nullptr;
    j["ci_high"] = nullptr;
    j["ci_level"] = nullptr;
  }
  j["beta_c"] = r.beta_c;
  j["beta_q"] = r.beta_q;
  j["violation"] = r.violation;
  j["shots"] = r.shots;
  j["runs"] = r.runs;
  j["seed"] = r.seed;
  j["error"] = r.error;
  return j;
}

ReportRow row_from_json(const nlohmann::json& j) {
  ReportRow r;
  r.kind = j.value("kind", "config");
  r.game = j.value("game", "");
  r.config = j.value("config", "");
  r.beta_raw = j.at("beta_raw").is_null() ? kNan : j.at("beta_raw").get<double>();
  if (!j.at("beta_raw_std").is_null()) r.beta_raw_std = j.at("beta_raw_std").get<double>();
  if (!j.at("beta_mitigated").is_null()) {
    r.beta_mitigated = j.at("beta_mitigated").get<double>();
  }
  if (!j.at("beta_mitigated_std").is_null()) {
    r.beta_mitigated_std = j.at("beta_mitigated_std").get<double>();
  }
  if (!j.at("ci_low").is_null()) {
    r.ci = ConfidenceInterval{j.at("ci_low").get<double>(),
                              j.at("ci_high").get<double>(),
                              j.at("ci_level").get<double>()};
  }
  r.beta_c = j.value("beta_c", 0.0);
  r.beta_q = j.value("beta_q", 0.0);
  r.violation = j.value("violation", false);
  r.shots = j.value("shots", 0LL);
  r.runs = j.value("runs", 1);
  r.seed = j.value("seed", std::uint64_t{0});
  r.error = j.value("error", "");
  return r;
}

}  // namespace

std::string report_to_json_text(const RunReport& report) {
  nlohmann::json j;
  auto& rows = j["rows"] = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    rows.push_back(row_to_json(r));
  }
  const RunSummary& s = report.summary;
  nlohmann::json js;
  js["game"] = s.game;
  js["beta_c"] = s.beta_c;
  js["beta_q"] = s.beta_q;
  js["n_configs"] = s.n_configs;
  js["n_errors"] = s.n_errors;
  js["n_violations"] = s.n_violations;
  js["mean_beta_raw"] = std::isnan(s.mean_beta_raw) ? nlohmann::json() : nlohmann::json(s.mean_beta_raw);
  js["std_beta_raw"] = std::isnan(s.std_beta_raw) ? nlohmann::json() : nlohmann::json(s.std_beta_raw);
  js["mean_beta_mitigated"] =
      s.mean_beta_mitigated ? nlohmann::json(*s.mean_beta_mitigated) : nlohmann::json();
  js["violation"] = s.violation;
  j["summary"] = js;
  return j.dump(2) + "\n";
}

RunReport report_from_json_text(const std::string& text) {
  RunReport report;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    for (const auto& jr : j.at("rows")) {
      report.rows.push_back(row_from_json(jr));
    }
    const auto& js = j.at("summary");
    RunSummary& s = report.summary;
    s.game = js.value("game", "");
    s.beta_c = js.value("beta_c", 0.0);
    s.beta_q = js.value("beta_q", 0.0);
    s.n_configs = js.value("n_configs", 0);
    s.n_errors = js.value("n_errors", 0);
    s.n_violations = js.value("n_violations", 0);
    s.mean_beta_raw = js.at("mean_beta_raw").is_null()
                          ? kNan
                          : js.at("mean_beta_raw").get<double>();
    s.std_beta_raw = js.at("std_beta_raw").is_null()
                         ? kNan
                         : js.at("std_beta_raw").get<double>();
    if (!js.at("mean_beta_mitigated").is_null()) {
      s.mean_beta_mitigated = js.at("mean_beta_mitigated").get<double>();
    }
    s.violation = js.value("violation", false);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid report JSON: ") + e.what());
  }
  return report;
}

std::string summary_to_text(const RunSummary& s) {
  std::ostringstream out;
  out << "game " << s.game << ": beta_c=" << s.beta_c << " beta_q=" << s.beta_q
      << "\n";
  out << "configurations: " << (s.n_configs - s.n_errors) << " ok, "
      << s.n_errors << " failed\n";
  if (!std::isnan(s.mean_beta_raw)) {
    out << "mean beta_raw = " << s.mean_beta_raw << " (std " << s.std_beta_raw
        << ") -> " << (s.violation ? "VIOLATION" : "no violation")
        << " of the classical bound\n";
  }
  if (s.mean_beta_mitigated) {
    out << "mean beta_mitigated = " << *s.mean_beta_mitigated << "\n";
  }
  out << "rows above beta_c (beyond CI where present): " << s.n_violations
      << "/" << (s.n_configs - s.n_errors) << "\n";
  return out.str();
}

void write_report(const RunReport& report, const std::string& path,
                  ReportFormat format) {
  if (report.rows.empty()) {
    throw std::invalid_argument("report needs at least one row");
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write report file: " + path);
  }
  out << (format == ReportFormat::Csv ? rows_to_csv(report.rows)
                                      : report_to_json_text(report));
  if (!out) {
    throw std::runtime_error("error writing report file: " + path);
  }
}

CertifyReport certify(const std::string& game_name_or_path) {
  const NmqcGame game = resolve_game(game_name_or_path);
  CertifyReport rep;
  rep.game = game.name;
  rep.qubits = game.qubits;
  rep.arity = game.arity();
  const BellInequality ineq = bell_coefficients(game);
  rep.terms = ineq.terms;
  rep.beta_c_bruteforce = ineq.classical_bound;
  rep.beta_q = ineq.quantum_bound;
  rep.deterministic = check_deterministic(game);
  if (game.name.size() >= 2 && game.name[0] == 'H' &&
      game.name.find_first_not_of("0123456789", 1) == std::string::npos) {
    rep.beta_c_formula = classical_bound_formula(game.arity());
  }
  const double uniform = 1.0 / static_cast<double>(game.target.domain_size());
  const bool is_uniform =
      std::all_of(game.distribution.begin(), game.distribution.end(),
                  [&](double w) { return std::abs(w - uniform) < 1e-15; });
  if (is_uniform) {
    rep.beta_c_nonlinearity = classical_bound_from_nonlinearity(game.target);
  }
  return rep;
}

std::string certify_to_text(const CertifyReport& r) {
  std::ostringstream out;
  out << "game " << r.game << " (" << r.arity << "-bit target on " << r.qubits
      << " qubits)\n";
  out << "terms:\n";
  for (const BellTerm& t : r.terms) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "  <%s>  %+.10g\n", t.settings.c_str(),
                  t.coefficient);
    out << buf;
  }
  out << "beta_c (brute force) = " << fmt(r.beta_c_bruteforce) << "\n";
  if (r.beta_c_formula) {
    out << "beta_c (closed form) = " << fmt(*r.beta_c_formula) << "\n";
  }
  if (r.beta_c_nonlinearity) {
    out << "beta_c (nonlinearity) = " << fmt(*r.beta_c_nonlinearity) << "\n";
  }
  out << "beta_q (GHZ) = " << fmt(r.beta_q) << "\n";
  out << "deterministic = " << (r.deterministic ? "true" : "false") << "\n";
  return out.str();
}

std::string certify_to_json_text(const CertifyReport& r) {
  nlohmann::json j;
  j["game"] = r.game;
  j["qubits"] = r.qubits;
  j["arity"] = r.arity;
  auto& terms = j["terms"] = nlohmann::json::array();
  for (const BellTerm& t : r.terms) {
    terms.push_back({{"settings", t.settings}, {"coefficient", t.coefficient}});
  }
  j["beta_c_bruteforce"] = r.beta_c_bruteforce;
  j["beta_c_formula"] =
      r.beta_c_formula ? nlohmann::json(*r.beta_c_formula) : nlohmann::json();
  j["beta_c_nonlinearity"] = r.beta_c_nonlinearity
                                 ? nlohmann::json(*r.beta_c_nonlinearity)
                                 : nlohmann::json();
  j["beta_q"] = r.beta_q;
  j["deterministic"] = r.deterministic;
  return j.dump(2) + "\n";
}

std::string CalibrationSnapshot::to_json_text() const {
  nlohmann::json j;
  j["method"] = method;
  j["qubits"] = qubits;
  if (method == "qrem") {
    auto& m = j["matrices"] = nlohmann::json::array();
    for (const CalibrationMatrix& a : local) {
      m.push_back({{a.entries[0][0], a.entries[0][1]},
                   {a.entries[1][0], a.entries[1][1]}});
    }
  } else {
    const GlobalCalibration& g = *global;
    auto& m = j["matrix"] = nlohmann::json::array();
    for (std::size_t row = 0; row < g.dim(); ++row) {
      nlohmann::json jr = nlohmann::json::array();
      for (std::size_t col = 0; col < g.dim(); ++col) {
        jr.push_back(g.entries[row * g.dim() + col]);
      }
      m.push_back(std::move(jr));
    }
  }
  return j.dump(2) + "\n";
}

CalibrationSnapshot CalibrationSnapshot::from_json_text(const std::string& text) {
  CalibrationSnapshot snap;
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    snap.method = j.at("method").get<std::string>();
    snap.qubits = j.at("qubits").get<std::vector<int>>();
    if (snap.method == "qrem") {
      for (const auto& jm : j.at("matrices")) {
        CalibrationMatrix a;
        for (int row = 0; row < 2; ++row) {
          for (int col = 0; col < 2; ++col) {
            a.entries[row][col] = jm.at(row).at(col).get<double>();
          }
        }
        a.validate();
        snap.local.push_back(a);
      }
      if (snap.local.size() != snap.qubits.size()) {
        throw std::invalid_argument("calibration needs one matrix per qubit");
      }
    } else if (snap.method == "mem") {
      GlobalCalibration g;
      g.n_qubits = static_cast<int>(snap.qubits.size());
      const auto& jm = j.at("matrix");
      for (const auto& jr : jm) {
        for (const auto& v : jr) {
          g.entries.push_back(v.get<double>());
        }
      }
      g.validate();
      snap.global = std::move(g);
    } else {
      throw std::invalid_argument("calibration method must be 'qrem' or 'mem'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("invalid calibration JSON: ") +
                                e.what());
  }
  return snap;
}

CalibrationSnapshot CalibrationSnapshot::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open calibration file: " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

CalibrationSnapshot build_calibration(const CouplingGraph& graph,
                                      const QubitConfiguration& config,
                                      const NoiseConfig& noise,
                                      MitigationMethod method, long long shots,
                                      std::uint64_t seed) {
  if (method == MitigationMethod::Auto) {
    method = config.size() <= 5 ? MitigationMethod::Qrem : MitigationMethod::Mem;
  }
  if (method == MitigationMethod::None) {
    throw std::invalid_argument("calibration method must be qrem or mem");
  }
  const NoiseModel model = noise.build(graph, config);
  const int l = config.size();
  CalibrationSnapshot snap;
  snap.qubits = config.qubits;
  snap.method = method == MitigationMethod::Mem ? "mem" : "qrem";
  if (shots == 0) {
    snap.local = model.readout.empty() ? identity_calibrations(l) : model.readout;
    if (method == MitigationMethod::Mem) {
      snap.global = kron_calibration(snap.local);
      snap.local.clear();
    }
    return snap;
  }
  const BasisSampler sampler = make_basis_sampler(l, model, seed);
  if (method == MitigationMethod::Mem) {
    snap.global = build_global_calibration(sampler, l, shots);
  } else {
    snap.local = build_local_calibrations(sampler, l, shots);
  }
  return snap;
}

}  // namespace nmqc
