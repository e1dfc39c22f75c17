// Copyright 2026 The gaussent Authors
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

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gaussent/cli/app.hpp"
#include "gaussent/schemes.hpp"
#include "gaussent/state_io.hpp"

namespace gaussent::cli {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitReconstruction = 2;

/// Raw flag values; turned into a RunConfig once parsing succeeded.
struct Flags {
  std::string state;
  std::string generator;
  double r = 0.5;
  double nu1 = 1.0;
  double nu2 = 1.0;
  std::uint64_t seed = 0;
  std::string scheme = "both";
  std::string detector = "ideal";
  double eta = 1.0;
  std::int64_t shots = 0;
  std::string out;
  std::string format = "json";
  std::string sweep_param = "r";
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::string replay_file;
};

RunConfig to_config(const Flags& f, const CLI::App& app, std::optional<SchemeChoice> forced) {
  RunConfig c;
  if (!f.state.empty()) c.state_file = f.state;
  if (!f.generator.empty()) c.generator = GeneratorSpec{f.generator, f.r, f.nu1, f.nu2};
  c.seed = f.seed;
  c.scheme = forced ? *forced : scheme_choice_from_string(f.scheme);
  try {
    c.detector.kind = detector_kind_from_string(f.detector);
  } catch (const InputError& e) {
    throw ConfigError(e.what());
  }
  c.detector.eta = f.eta;
  if (app.count("--shots") > 0) c.detector.shots = f.shots;
  if (f.format == "json") {
    c.format = OutputFormat::kJson;
  } else if (f.format == "csv") {
    c.format = OutputFormat::kCsv;
  } else {
    throw ConfigError("unknown format '" + f.format + "'");
  }
  if (!f.out.empty()) c.out = f.out;
  return c;
}

void emit(const std::string& text, const RunConfig& config, std::ostream& out) {
  if (!config.out) {
    out << text;
    return;
  }
  std::ofstream file(*config.out, std::ios::binary);
  if (!file) throw ConfigError("cannot write '" + config.out->string() + "'");
  file << text;
}

std::string validity_text(const RunConfig& config) {
  const QuadCovariance g = resolve_state(config);
  const ValidityReport rep = validate_physical(g);
  const InvariantSet inv = invariants_quad(g);
  nlohmann::ordered_json j = {
      {"physical", rep.physical()},
      {"nu_minus", rep.nu_minus},
      {"nu_plus", rep.nu_plus},
      {"quad_invariants", {{"I1", inv.i1()}, {"I2", inv.i2()}, {"I3", inv.i3()}, {"I4", inv.i4()}}}};
  return j.dump(2) + '\n';
}

/// A bare transcript file is reconstructed with the requested scheme; a
/// report is replayed against its own recorded invariants.
int replay(const std::string& path, const Flags& flags, std::ostream& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (doc.is_object() && doc.value("format", "") == "transcript") {
    Transcript t;
    try {
      t = transcript_from_json(text);
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
    const SchemeChoice s = scheme_choice_from_string(flags.scheme);
    if (s != SchemeChoice::kScheme1 && s != SchemeChoice::kScheme2) {
      throw ConfigError("replaying a transcript needs --scheme scheme1 or scheme2");
    }
    const SchemeResult r = s == SchemeChoice::kScheme1 ? reconstruct_scheme1(t, std::nullopt)
                                                       : reconstruct_scheme2(t);
    nlohmann::ordered_json inv;
    for (int k = 1; k <= 4; ++k) {
      const auto v = r.invariants.get(k);
      inv["J" + std::to_string(k)] = v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json();
    }
    out << inv.dump(2) << '\n';
    return kExitOk;
  }

  const ReplayOutcome outcome = replay_report(text);
  for (const auto& m : outcome.mismatches) err << "mismatch: " << m << '\n';
  if (!outcome.ok()) return kExitReconstruction;
  out << "replay ok:";
  for (const auto& name : outcome.replayed) out << ' ' << name;
  out << '\n';
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Measurement-based entanglement quantification for two-mode Gaussian states",
               "gaussent"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with option defaults; command-line flags win");

  Flags f;
  auto* source = app.add_option_group("state source");
  source->add_option("--state", f.state, "State file (JSON, quad or mode format)");
  source->add_option("--generator", f.generator, "vacuum | tmsv | thermal | random");
  app.add_option("--r", f.r, "Squeezing parameter for tmsv");
  app.add_option("--nu1", f.nu1, "Symplectic eigenvalue of mode 1 for thermal");
  app.add_option("--nu2", f.nu2, "Symplectic eigenvalue of mode 2 for thermal");
  app.add_option("--seed", f.seed, "64-bit seed for every random draw");
  app.add_option("--scheme", f.scheme, "oracle | scheme1 | scheme2 | both");
  app.add_option("--detector", f.detector, "ideal | photocount | homodyne");
  app.add_option("--eta", f.eta, "Detector efficiency in (0, 1]");
  app.add_option("--shots", f.shots, "Shots per observable and setting (default: unlimited)");
  app.add_option("--out", f.out, "Write the report here instead of stdout");
  app.add_option("--format", f.format, "json | csv");

  auto* run = app.add_subcommand("run", "Run the configured scheme(s) on one state");
  auto* oracle = app.add_subcommand("oracle", "Invariants and measures straight from the covariance");
  auto* s1 = app.add_subcommand("scheme1", "Reconstruct J1..J3 (and J4 for special forms)");
  auto* s2 = app.add_subcommand("scheme2", "Reconstruct all four invariants via the standard form");
  auto* sweep = app.add_subcommand("sweep", "CSV table over a grid in r or eta");
  sweep->add_option("--param", f.sweep_param, "r | eta");
  sweep->add_option("--from", f.from, "First grid point")->required();
  sweep->add_option("--to", f.to, "Last grid point")->required();
  sweep->add_option("--steps", f.steps, "Number of grid points")->required();
  auto* validate = app.add_subcommand("validate", "Check that a state is physical");
  auto* replay_cmd = app.add_subcommand("replay", "Replay a report or transcript file");
  replay_cmd->add_option("file", f.replay_file, "Report or transcript JSON")->required();

  std::vector<const char*> argv;
  argv.push_back("gaussent");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (replay_cmd->parsed()) return replay(f.replay_file, f, out, err);

    std::optional<SchemeChoice> forced;
    if (oracle->parsed()) forced = SchemeChoice::kOracle;
    if (s1->parsed()) forced = SchemeChoice::kScheme1;
    if (s2->parsed()) forced = SchemeChoice::kScheme2;
    RunConfig config = to_config(f, app, forced);

    if (validate->parsed()) {
      validate_config(config);
      emit(validity_text(config), config, out);
      return kExitOk;
    }
    if (sweep->parsed()) {
      if (f.sweep_param == "r") {
        config.sweep = SweepGrid{SweepParam::kR, f.from, f.to, f.steps};
      } else if (f.sweep_param == "eta") {
        config.sweep = SweepGrid{SweepParam::kEta, f.from, f.to, f.steps};
      } else {
        throw ConfigError("unknown sweep parameter '" + f.sweep_param + "'");
      }
      if (config.scheme == SchemeChoice::kBoth && app.count("--scheme") == 0) {
        config.scheme = SchemeChoice::kScheme2;
      }
      emit(sweep_table(config), config, out);
      return kExitOk;
    }
    (void)run;
    emit(run_report(config), config, out);
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    err << "reconstruction failed: " << e.what() << '\n';
    return kExitReconstruction;
  }
}

}  // namespace gaussent::cli
