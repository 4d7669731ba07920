// Copyright 2026 The Ancilla Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   build      register-pair (or --single) ancilla, JSON state + report
//   verify     fidelity between two state files
//   teleport   outcome table of one teleport
//   czgate     controlled-sign truth table by double teleportation
//   dots       quantum-dot preparation: pulse count and fidelity
//   resources  gate counts and success probabilities
//
// Exit status: 0 success, 1 a computed fidelity is below tolerance,
// 2 usage or input error. ANCILLA_OUTPUT_DIR prefixes relative --out paths.

#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ancilla/dots.hpp"
#include "ancilla/pipeline.hpp"
#include "ancilla/profile.hpp"
#include "ancilla/resources.hpp"
#include "ancilla/state_json.hpp"
#include "ancilla/teleport.hpp"

namespace ancilla::cli {

struct RunConfig {
  std::string command;
  int n = 1;
  std::string profile = "constant";  ///< constant | delta | delta:J | file path
  std::string method = "pairwise";
  double tolerance = 1e-10;
  std::uint64_t seed = 20260101;
  std::string format;  ///< json | csv; empty selects the command default
  std::string out;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitBelowTolerance = 1;
inline constexpr int kExitUsage = 2;

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

inline AmplitudeProfile resolve_profile(const std::string& source, int n) {
  if (source == "constant") return AmplitudeProfile::constant(n);
  if (source == "delta") return AmplitudeProfile::delta(n);
  if (source.rfind("delta:", 0) == 0) return AmplitudeProfile::delta(n, std::stoi(source.substr(6)));
  AmplitudeProfile p = load_profile(source);
  if (p.n() != n) throw Error(ErrorKind::InvalidProfile, source + " has n=" + std::to_string(p.n()));
  return p;
}

inline std::filesystem::path resolve_output(const std::string& out) {
  std::filesystem::path p(out);
  if (p.is_relative()) {
    if (const char* dir = std::getenv("ANCILLA_OUTPUT_DIR"); dir && *dir) p = std::filesystem::path(dir) / p;
  }
  return p;
}

/// Writes to a sibling temporary file and renames it into place.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::Parse, "cannot write " + tmp.string());
    f << content;
    if (!f.flush()) throw Error(ErrorKind::Parse, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

inline void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    write_atomically(resolve_output(cfg.out), content);
  }
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

inline InputQubit parse_qubit(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, "bad qubit component '" + item + "'");
    }
  }
  if (v.size() == 2) return InputQubit::normalized({v[0], 0.0}, {v[1], 0.0});
  if (v.size() == 4) return InputQubit::normalized({v[0], v[1]}, {v[2], v[3]});
  throw Error(ErrorKind::Parse, "qubit must be 'a,b' or 'a_re,a_im,b_re,b_im'");
}

inline nlohmann::json qubit_json(const InputQubit& q) {
  return {{"alpha", {q.alpha.real(), q.alpha.imag()}}, {"beta", {q.beta.real(), q.beta.imag()}}};
}

inline nlohmann::json tally_json(const GateTally& t) {
  return {{"unconditional_transfers", t.unconditional_transfers},
          {"conditional_transfers", t.conditional_transfers},
          {"controlled_signs", t.controlled_signs},
          {"cnots", t.cnots},
          {"toffolis", t.toffolis},
          {"ancilla_signs", t.ancilla_signs}};
}

inline std::string counts_cell(const Occupation& occ) {
  std::string s;
  for (std::size_t i = 0; i < occ.size(); ++i) s += (i ? "-" : "") + std::to_string(occ[i]);
  return s;
}

// --- commands --------------------------------------------------------------

inline int cmd_build(const RunConfig& cfg, bool single, std::ostream& out) {
  const AmplitudeProfile profile = resolve_profile(cfg.profile, cfg.n);
  const PhaseMethod method = parse_phase_method(cfg.method);
  PreparedState built = single ? build_single_register(cfg.n, profile) : build_entangled_pair(cfg.n, profile, method);
  const SparseState oracle = single ? direct_oracle_single(cfg.n, profile) : direct_oracle_pair(cfg.n, profile);
  const double fid = fidelity(built.state, oracle);
  const bool pass = fid >= 1.0 - cfg.tolerance;

  if (cfg.format == "csv") {
    emit(cfg,
         "n,kind,method,terms,fidelity\n" + std::to_string(cfg.n) + "," + (single ? "single" : "pair") + "," +
             cfg.method + "," + std::to_string(built.state.size()) + "," + num(fid) + "\n",
         out);
  } else {
    nlohmann::json j = state_to_json(built.state);
    j["report"] = {{"n", cfg.n},
                   {"kind", single ? "single" : "pair"},
                   {"method", single ? "none" : cfg.method},
                   {"profile", profile.weights()},
                   {"fidelity", fid},
                   {"tolerance", cfg.tolerance},
                   {"pass", pass},
                   {"gates", tally_json(built.tally)}};
    emit(cfg, dump(j), out);
  }
  return pass ? kExitOk : kExitBelowTolerance;
}

inline int cmd_verify(const RunConfig& cfg, const std::string& a, const std::string& b, std::ostream& out) {
  const SparseState sa = load_state(a);
  const SparseState sb = load_state(b);
  const double fid = fidelity(normalize(sa), normalize(sb));
  const bool pass = fid >= 1.0 - cfg.tolerance;
  if (cfg.format == "csv") {
    emit(cfg, "a,b,fidelity,pass\n" + a + "," + b + "," + num(fid) + "," + (pass ? "true" : "false") + "\n", out);
  } else {
    emit(cfg, dump({{"a", a}, {"b", b}, {"fidelity", fid}, {"tolerance", cfg.tolerance}, {"pass", pass}}), out);
  }
  return pass ? kExitOk : kExitBelowTolerance;
}

inline int cmd_teleport(const RunConfig& cfg, const std::string& input, std::ostream& out, std::ostream& err) {
  const AmplitudeProfile profile = resolve_profile(cfg.profile, cfg.n);
  const InputQubit qubit = parse_qubit(input);
  const SparseState ancilla = build_single_register(cfg.n, profile).state;
  const TeleportReport report = teleport(qubit, ancilla, cfg.n);

  bool pass = true;
  bool phase_only = true;
  for (const auto& o : report.outcomes) {
    if (o.classification == TeleportClass::Success) {
      pass = pass && o.fidelity >= 1.0 - cfg.tolerance;
      phase_only = phase_only && o.phase_only;
    }
  }

  if (cfg.format == "json") {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& o : report.outcomes) {
      nlohmann::json row = {{"outcome_counts", o.counts},
                            {"k", o.k},
                            {"probability", o.probability},
                            {"classification", o.classification == TeleportClass::Success ? "success" : "failure"}};
      if (o.classification == TeleportClass::Success) {
        row["output_register"] = o.output_register;
        row["fidelity"] = o.fidelity;
        row["phase_only"] = o.phase_only;
        row["output"] = qubit_json(o.output);
      }
      rows.push_back(std::move(row));
    }
    emit(cfg,
         dump({{"n", cfg.n},
               {"input", qubit_json(qubit)},
               {"outcomes", std::move(rows)},
               {"success_probability", report.success_probability},
               {"failure_probability", report.failure_probability},
               {"min_success_fidelity", report.min_success_fidelity}}),
         out);
  } else {
    std::string csv = "outcome_counts,k,probability,classification,fidelity\n";
    for (const auto& o : report.outcomes) {
      const bool ok = o.classification == TeleportClass::Success;
      csv += counts_cell(o.counts) + "," + std::to_string(o.k) + "," + num(o.probability) + "," +
             (ok ? "success" : "failure") + "," + (ok ? num(o.fidelity) : "") + "\n";
    }
    emit(cfg, csv, out);
  }
  err << "failure_probability=" << num(report.failure_probability)
      << " success_probability=" << num(report.success_probability)
      << " min_success_fidelity=" << num(report.min_success_fidelity) << "\n";
  if (!phase_only) err << "note: some success outcomes need more than a phase correction\n";
  return pass ? kExitOk : kExitBelowTolerance;
}

inline int cmd_czgate(const RunConfig& cfg, const std::vector<std::string>& inputs, std::ostream& out) {
  const AmplitudeProfile profile = resolve_profile(cfg.profile, cfg.n);
  const PhaseMethod method = parse_phase_method(cfg.method);
  const SparseState pair = build_entangled_pair(cfg.n, profile, method).state;
  const FeedForwardTable table = calibrate_feed_forward(cfg.n);

  std::vector<std::pair<InputQubit, InputQubit>> cases;
  if (inputs.empty()) {
    const InputQubit zero{1.0, 0.0};
    const InputQubit one{0.0, 1.0};
    cases = {{zero, zero}, {zero, one}, {one, zero}, {one, one}};
  } else {
    cases.emplace_back(parse_qubit(inputs.at(0)), parse_qubit(inputs.at(1)));
  }

  bool pass = true;
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "input1,input2,success_probability,failure_probability,min_fidelity\n";
  for (const auto& [q1, q2] : cases) {
    const CzReport r = cz_via_double_teleportation(q1, q2, pair, cfg.n, table);
    pass = pass && r.min_fidelity >= 1.0 - cfg.tolerance;
    auto label = [](const InputQubit& q) {
      return num(q.alpha.real()) + ":" + num(q.alpha.imag()) + ":" + num(q.beta.real()) + ":" + num(q.beta.imag());
    };
    csv += label(q1) + "," + label(q2) + "," + num(r.success_probability) + "," + num(r.failure_probability) + "," +
           num(r.min_fidelity) + "\n";
    nlohmann::json row = {{"input1", qubit_json(q1)},
                          {"input2", qubit_json(q2)},
                          {"success_probability", r.success_probability},
                          {"failure_probability", r.failure_probability},
                          {"min_fidelity", r.min_fidelity},
                          {"success_outcomes", r.successes.size()}};
    if (r.output) row["output"] = state_to_json(*r.output);
    rows.push_back(std::move(row));
  }
  if (cfg.format == "csv") {
    emit(cfg, csv, out);
  } else {
    const double s = cfg.n / (cfg.n + 1.0);
    emit(cfg,
         dump({{"n", cfg.n}, {"method", cfg.method}, {"expected_failure_constant", 1.0 - s * s}, {"rows", rows}}),
         out);
  }
  return pass ? kExitOk : kExitBelowTolerance;
}

inline int cmd_dots(const RunConfig& cfg, double lambda, const std::string& schedule_in,
                    const std::string& schedule_out, bool with_state, std::ostream& out) {
  const AmplitudeProfile profile = resolve_profile(cfg.profile, cfg.n);
  const PulseSchedule schedule = schedule_in.empty() ? compile_schedule(cfg.n, profile) : load_schedule(schedule_in);
  if (schedule.n != cfg.n) throw Error(ErrorKind::InvalidSchedule, "schedule was written for another n");
  if (!schedule_out.empty()) write_atomically(resolve_output(schedule_out), schedule_to_string(schedule));

  ExecutionTrace trace;
  SparseState dots = execute(schedule, empty_array(cfg.n, 2), &trace);
  dots = interaction_phase(dots, std::numbers::pi, lambda, intra_register_corrections(cfg.n, lambda));
  const SparseState photons = emit_photons(dots, cfg.n);
  const double fid = fidelity(photons, direct_oracle_pair(cfg.n, profile));
  const bool pass = fid >= 1.0 - cfg.tolerance;
  const long long expected = expected_pulse_count(cfg.n);

  if (cfg.format == "csv") {
    emit(cfg,
         "n,pulse_count,expected_pulse_count,fidelity,max_occupancy\n" + std::to_string(cfg.n) + "," +
             std::to_string(schedule.size()) + "," + std::to_string(expected) + "," + num(fid) + "," +
             std::to_string(trace.max_occupancy) + "\n",
         out);
  } else {
    nlohmann::json j = {{"n", cfg.n},
                        {"pulse_count", schedule.size()},
                        {"expected_pulse_count", expected},
                        {"fidelity", fid},
                        {"tolerance", cfg.tolerance},
                        {"pass", pass},
                        {"max_occupancy", trace.max_occupancy},
                        {"states_checked", trace.states_checked}};
    if (with_state) j["state"] = state_to_json(photons);
    emit(cfg, dump(j), out);
  }
  return pass ? kExitOk : kExitBelowTolerance;
}

inline int cmd_resources(const RunConfig& cfg, double p, long long trials, std::ostream& out, std::ostream& err) {
  std::vector<PhaseMethod> methods;
  if (cfg.method == "both") {
    methods = {PhaseMethod::PairwiseGates, PhaseMethod::ParityAncilla};
  } else {
    methods = {parse_phase_method(cfg.method)};
  }
  const FailureScaling scaling = failure_scaling(cfg.n);

  std::string csv = "n,method,conditional_gates,phase_gates,total,p,success_probability,klm_failure,hf_failure";
  if (trials > 0) csv += ",mean_attempts,attempts_stderr,analytic_attempts";
  csv += "\n";
  nlohmann::json rows = nlohmann::json::array();
  for (PhaseMethod m : methods) {
    const GateCountReport r = gate_counts(cfg.n, m, p);
    const double sp = success_probability(cfg.n, m, p);
    csv += std::to_string(r.n) + "," + std::string(to_string(m)) + "," + std::to_string(r.conditional_transfer_gates) +
           "," + std::to_string(r.phase_gates) + "," + std::to_string(r.total_gates) + "," + num(p) + "," + num(sp) +
           "," + num(scaling.klm) + "," + num(scaling.high_fidelity);
    nlohmann::json row = {{"n", r.n},
                          {"method", to_string(m)},
                          {"conditional_gates", r.conditional_transfer_gates},
                          {"phase_gates", r.phase_gates},
                          {"total", r.total_gates},
                          {"fixed_overhead", r.fixed_overhead},
                          {"p", p},
                          {"success_probability", sp},
                          {"klm_failure", scaling.klm},
                          {"hf_failure", scaling.high_fidelity}};
    if (trials > 0) {
      try {
        const AttemptEstimate e = expected_attempts(cfg.n, m, p, trials, cfg.seed);
        csv += "," + num(e.mean) + "," + num(e.standard_error) + "," + num(e.analytic);
        row["mean_attempts"] = e.mean;
        row["attempts_stderr"] = e.standard_error;
        row["analytic_attempts"] = e.analytic;
      } catch (const InfeasibleParameters& e) {
        csv += ",,," + num(e.analytic_attempts());
        row["analytic_attempts"] = e.analytic_attempts();
        row["infeasible"] = true;
        err << "note: " << to_string(m) << ": " << e.what() << "\n";
      }
    }
    csv += "\n";
    rows.push_back(std::move(row));
  }
  emit(cfg, cfg.format == "json" ? dump(rows) : csv, out);
  return kExitOk;
}

inline void common_options(CLI::App* app, RunConfig& cfg, const std::string& default_format) {
  app->add_option("--n", cfg.n, "register size")->required()->check(CLI::PositiveNumber);
  app->add_option("--profile", cfg.profile, "constant | delta | delta:J | profile JSON file")
      ->capture_default_str();
  app->add_option("--tol", cfg.tolerance, "fidelity tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  app->add_option("--format", cfg.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->default_str(default_format);
  app->add_option("--out", cfg.out, "output file (written atomically)");
}

}  // namespace detail

/// Parses `args` (without the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Ancilla state preparation and teleportation toolkit", "ancilla"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* build = app.add_subcommand("build", "prepare the ancilla and compare with the direct construction");
  detail::common_options(build, cfg, "json");
  bool single = false;
  build->add_option("--method", cfg.method, "pairwise | parity | direct")->capture_default_str();
  build->add_flag("--single", single, "single register instead of the register pair");

  auto* verify = app.add_subcommand("verify", "fidelity between two state files");
  std::string file_a;
  std::string file_b;
  verify->add_option("a", file_a, "first state file")->required()->check(CLI::ExistingFile);
  verify->add_option("b", file_b, "second state file")->required()->check(CLI::ExistingFile);
  verify->add_option("--tol", cfg.tolerance, "fidelity tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", cfg.out, "output file");

  auto* tele = app.add_subcommand("teleport", "teleport one qubit through the single-register ancilla");
  detail::common_options(tele, cfg, "csv");
  std::string input = "1,0";
  tele->add_option("--input", input, "qubit amplitudes a,b or a_re,a_im,b_re,b_im")->capture_default_str();

  auto* cz = app.add_subcommand("czgate", "controlled sign by double teleportation");
  detail::common_options(cz, cfg, "json");
  std::vector<std::string> cz_inputs;
  cz->add_option("--method", cfg.method, "pairwise | parity | direct")->capture_default_str();
  cz->add_option("--inputs", cz_inputs, "two qubits; default is the basis truth table")->expected(2);

  auto* dots = app.add_subcommand("dots", "quantum-dot preparation of the register pair");
  detail::common_options(dots, cfg, "json");
  double lambda = 0.0;
  std::string schedule_in;
  std::string schedule_out;
  bool with_state = false;
  dots->add_option("--lambda", lambda, "intra-register Coulomb coefficient")->capture_default_str();
  dots->add_option("--schedule-in", schedule_in, "execute this JSON-lines schedule")->check(CLI::ExistingFile);
  dots->add_option("--schedule-out", schedule_out, "write the schedule as JSON lines");
  dots->add_flag("--state", with_state, "include the emitted photonic state");

  auto* res = app.add_subcommand("resources", "gate counts and success probabilities");
  detail::common_options(res, cfg, "csv");
  double p = 0.25;
  long long trials = 0;
  cfg.method = "pairwise";
  res->add_option("--method", cfg.method, "pairwise | parity | direct | both")->capture_default_str();
  res->add_option("--p", p, "per-gate success probability")->capture_default_str();
  res->add_option("--trials", trials, "Monte Carlo trials for expected attempts (0 = off)")->capture_default_str();
  res->add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (*build) {
      if (cfg.format.empty()) cfg.format = "json";
      return detail::cmd_build(cfg, single, out);
    }
    if (*verify) {
      if (cfg.format.empty()) cfg.format = "json";
      return detail::cmd_verify(cfg, file_a, file_b, out);
    }
    if (*tele) {
      if (cfg.format.empty()) cfg.format = "csv";
      return detail::cmd_teleport(cfg, input, out, err);
    }
    if (*cz) {
      if (cfg.format.empty()) cfg.format = "json";
      return detail::cmd_czgate(cfg, cz_inputs, out);
    }
    if (*dots) {
      if (cfg.format.empty()) cfg.format = "json";
      return detail::cmd_dots(cfg, lambda, schedule_in, schedule_out, with_state, out);
    }
    if (*res) {
      if (cfg.format.empty()) cfg.format = "csv";
      return detail::cmd_resources(cfg, p, trials, out, err);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

inline int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args);
}

}  // namespace ancilla::cli
