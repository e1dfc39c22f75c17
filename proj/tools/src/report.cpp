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

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gaussent/cli/app.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/generators.hpp"
#include "gaussent/schemes.hpp"
#include "gaussent/standard_form.hpp"
#include "gaussent/state_io.hpp"

namespace gaussent::cli {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kVersion = GAUSSENT_VERSION;

// Independent sampling streams for the two schemes, derived from the run seed.
constexpr std::uint64_t kScheme1Stream = 1;
constexpr std::uint64_t kScheme2Stream = 2;

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

Json invariants_json(const InvariantSet& inv) {
  return {{"J1", inv.j1()}, {"J2", inv.j2()}, {"J3", inv.j3()}, {"J4", inv.j4()}};
}

Json entanglement_json(const EntanglementReport& e) {
  return {{"separable", e.separable},
          {"simon_margin", e.simon_margin},
          {"eof", optional_number(e.eof)},
          {"eof_lower_bound", optional_number(e.eof_lower_bound)},
          {"log_negativity", e.log_negativity},
          {"nu_tilde_minus", e.nu_tilde_minus}};
}

const char* special_form_name(SpecialForm f) {
  return f == SpecialForm::kDiagonalC ? "diagonal" : "antidiagonal";
}

std::optional<SpecialForm> special_form_from_json(const Json& j) {
  if (j.is_null()) return std::nullopt;
  const std::string name = j.get<std::string>();
  if (name == "diagonal") return SpecialForm::kDiagonalC;
  if (name == "antidiagonal") return SpecialForm::kAntidiagonalC;
  throw InputError("unknown special form '" + name + "'");
}

Json scheme_json(const SchemeResult& r, const InvariantSet& oracle) {
  Json inv = Json::object();
  Json se = Json::object();
  Json deltas = Json::object();
  for (int k = 1; k <= 4; ++k) {
    const std::string key = "J" + std::to_string(k);
    const std::optional<double> value = r.invariants.get(k);
    inv[key] = optional_number(value);
    se[key] = optional_number(r.invariants.std_error[static_cast<std::size_t>(k - 1)]);
    if (value) {
      const double truth = oracle.j(k);
      const double abs_delta = *value - truth;
      deltas[key] = {{"abs", abs_delta},
                     {"rel", truth != 0.0 ? Json(std::abs(abs_delta) / std::abs(truth))
                                          : Json(nullptr)}};
    } else {
      deltas[key] = nullptr;
    }
  }
  Json out = {{"invariants", inv}, {"std_error", se}, {"deltas", deltas}};
  out["entanglement"] = r.entanglement ? entanglement_json(*r.entanglement) : Json(nullptr);
  out["eof_lower_bound"] = optional_number(r.eof_lower_bound);
  if (r.scheme == 1) {
    out["special_form"] = r.special_form ? Json(special_form_name(*r.special_form)) : Json(nullptr);
  }
  if (r.standard_form) {
    const StandardFormEstimate& sf = *r.standard_form;
    out["standard_form"] = {{"n1", sf.n1},         {"n2", sf.n2},
                            {"re_ms", sf.re_ms},   {"im_ms", sf.im_ms},
                            {"mc_abs2", sf.mc_abs2}, {"mc_abs2_clamped", sf.mc_abs2_clamped}};
  }
  out["warnings"] = r.warnings;
  out["transcript"] = Json::parse(transcript_to_json(r.transcript));
  return out;
}

Json detector_json(const DetectorModel& d) {
  return {{"kind", to_string(d.kind)},
          {"eta", d.eta},
          {"shots", d.shots ? Json(*d.shots) : Json(nullptr)}};
}

Json source_json(const RunConfig& config) {
  if (config.state_file) return {{"kind", "file"}, {"path", config.state_file->string()}};
  const GeneratorSpec& g = *config.generator;
  Json out = {{"kind", "generator"}, {"name", g.name}};
  if (g.name == "tmsv") out["r"] = g.r;
  if (g.name == "thermal") {
    out["nu1"] = g.nu1;
    out["nu2"] = g.nu2;
  }
  return out;
}

bool runs_scheme1(SchemeChoice s) { return s == SchemeChoice::kScheme1 || s == SchemeChoice::kBoth; }
bool runs_scheme2(SchemeChoice s) { return s == SchemeChoice::kScheme2 || s == SchemeChoice::kBoth; }

/// Everything computed for one state; shared by the JSON report and CSV rows.
struct Evaluation {
  QuadCovariance gamma;
  ModeCovariance v;
  ValidityReport validity;
  InvariantSet oracle;
  EntanglementReport oracle_entanglement;
  std::optional<SchemeResult> s1;
  std::optional<SchemeResult> s2;
  std::optional<double> prep_m1_abs;
  std::optional<double> prep_m2_abs;
};

Evaluation evaluate(const RunConfig& config) {
  Evaluation e;
  e.gamma = resolve_state(config);
  e.v = quad_to_mode(e.gamma);
  e.validity = validate_physical(e.gamma);
  e.oracle = invariants_mode(e.v);
  e.oracle_entanglement = assess_entanglement(e.oracle);
  if (runs_scheme1(config.scheme)) {
    e.s1 = scheme1(e.v, config.detector, mix_seed(config.seed, kScheme1Stream));
  }
  if (runs_scheme2(config.scheme)) {
    const StandardFormPrep prep = standard_form_prep(e.v);
    e.prep_m1_abs = std::abs(prep.vt.m1);
    e.prep_m2_abs = std::abs(prep.vt.m2);
    e.s2 = scheme2(e.v, config.detector, mix_seed(config.seed, kScheme2Stream));
  }
  return e;
}

std::string format_number(std::optional<double> x) {
  if (!x) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), *x);
  return std::string(buf, res.ptr);
}

std::string csv_header() {
  std::string line;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) line += ',';
    line += kCsvColumns[i];
  }
  return line + '\n';
}

std::string csv_row(std::optional<double> param, const Evaluation& e) {
  // Scheme columns come from the second scheme when it ran (it yields all
  // four invariants), otherwise from the first.
  const SchemeResult* primary = e.s2 ? &*e.s2 : (e.s1 ? &*e.s1 : nullptr);
  const EntanglementReport& ent =
      primary && primary->entanglement ? *primary->entanglement : e.oracle_entanglement;

  std::optional<double> bound;
  if (e.s1) {
    bound = e.s1->eof_lower_bound;
  } else {
    const InvariantSet partial =
        primary ? InvariantSet::from_mode(primary->invariants.j1, primary->invariants.j2,
                                          primary->invariants.j3, 0.0)
                : e.oracle;
    if (is_symmetric(partial)) bound = eof_lower_bound(partial);
  }

  std::vector<std::optional<double>> cells = {param};
  for (int k = 1; k <= 4; ++k) cells.emplace_back(e.oracle.j(k));
  for (int k = 1; k <= 4; ++k) {
    cells.push_back(primary ? primary->invariants.get(k) : std::nullopt);
  }
  cells.push_back(ent.eof);
  cells.push_back(bound);
  cells.emplace_back(ent.log_negativity);
  cells.emplace_back(ent.simon_margin);
  cells.emplace_back(e.validity.nu_minus);

  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += format_number(cells[i]);
  }
  return line + '\n';
}

Json report_json(const RunConfig& config, const Evaluation& e) {
  Json report;
  report["tool"] = "gaussent";
  report["version"] = kVersion;
  report["seed"] = config.seed;
  report["scheme"] = to_string(config.scheme);
  report["detector"] = detector_json(config.detector);
  report["state"] = {{"source", source_json(config)},
                     {"covariance", Json::parse(state_to_json(e.gamma))}};
  report["validity"] = {{"nu_minus", e.validity.nu_minus},
                        {"nu_plus", e.validity.nu_plus},
                        {"physical", e.validity.physical()}};
  report["oracle"] = {{"invariants", invariants_json(e.oracle)},
                      {"quad_invariants",
                       {{"I1", e.oracle.i1()},
                        {"I2", e.oracle.i2()},
                        {"I3", e.oracle.i3()},
                        {"I4", e.oracle.i4()}}},
                      {"entanglement", entanglement_json(e.oracle_entanglement)}};
  if (e.s1) report["scheme1"] = scheme_json(*e.s1, e.oracle);
  if (e.s2) {
    Json s2 = scheme_json(*e.s2, e.oracle);
    s2["prep"] = {{"m1_abs", *e.prep_m1_abs}, {"m2_abs", *e.prep_m2_abs}};
    report["scheme2"] = std::move(s2);
  }
  if (e.s1 && e.s2) {
    const ConsistencyReport c = consistency_check(*e.s1, *e.s2, 1e-9);
    Json deltas = Json::array();
    for (const auto& d : c.deltas) {
      deltas.push_back(
          {{"delta", d.delta}, {"combined_std_error", optional_number(d.combined_std_error)}});
    }
    report["consistency"] = {{"tol", c.tol},
                             {"within_tol", c.within_tol},
                             {"within_3se", c.within_3se ? Json(*c.within_3se) : Json(nullptr)},
                             {"deltas", deltas}};
  }
  return report;
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw ConfigError(std::string(what) + " must be finite");
}

}  // namespace

std::string to_string(SchemeChoice s) {
  switch (s) {
    case SchemeChoice::kOracle:
      return "oracle";
    case SchemeChoice::kScheme1:
      return "scheme1";
    case SchemeChoice::kScheme2:
      return "scheme2";
    case SchemeChoice::kBoth:
      return "both";
  }
  return "both";
}

SchemeChoice scheme_choice_from_string(const std::string& name) {
  if (name == "oracle") return SchemeChoice::kOracle;
  if (name == "scheme1") return SchemeChoice::kScheme1;
  if (name == "scheme2") return SchemeChoice::kScheme2;
  if (name == "both") return SchemeChoice::kBoth;
  throw ConfigError("unknown scheme '" + name + "'");
}

std::vector<double> SweepGrid::points() const {
  std::vector<double> out;
  if (steps < 1) return out;
  out.reserve(static_cast<std::size_t>(steps));
  if (steps == 1) {
    out.push_back(from);
    return out;
  }
  const double step = (to - from) / static_cast<double>(steps - 1);
  for (int i = 0; i < steps; ++i) {
    // Pin the last point to `to` rather than accumulate rounding.
    out.push_back(i == steps - 1 ? to : from + step * static_cast<double>(i));
  }
  return out;
}

void validate_config(const RunConfig& config) {
  if (config.state_file.has_value() == config.generator.has_value()) {
    throw ConfigError("exactly one of --state and --generator is required");
  }
  if (config.generator) {
    const GeneratorSpec& g = *config.generator;
    if (g.name != "vacuum" && g.name != "tmsv" && g.name != "thermal" && g.name != "random") {
      throw ConfigError("unknown generator '" + g.name + "'");
    }
    require_finite(g.r, "--r");
    require_finite(g.nu1, "--nu1");
    require_finite(g.nu2, "--nu2");
  }
  const DetectorModel& d = config.detector;
  if (d.kind == DetectorKind::kIdeal) {
    if (d.eta != 1.0) throw ConfigError("--eta needs a lossy detector");
    if (d.shots) throw ConfigError("--shots needs a lossy detector");
  } else if (!(d.eta > 0.0 && d.eta <= 1.0)) {
    throw ConfigError("--eta must lie in (0, 1]");
  }
  if (d.shots && *d.shots < 2) throw ConfigError("--shots must be at least 2");

  if (config.sweep) {
    const SweepGrid& g = *config.sweep;
    require_finite(g.from, "--from");
    require_finite(g.to, "--to");
    if (g.steps < 1) throw ConfigError("sweep grid is empty (--steps must be at least 1)");
    if (g.param == SweepParam::kR) {
      if (!config.generator || config.generator->name != "tmsv") {
        throw ConfigError("an r sweep needs --generator tmsv");
      }
    } else {
      if (d.kind == DetectorKind::kIdeal) throw ConfigError("an eta sweep needs a lossy detector");
      for (double eta : g.points()) {
        if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta grid must lie in (0, 1]");
      }
    }
  }
}

QuadCovariance resolve_state(const RunConfig& config) {
  QuadCovariance g;
  if (config.state_file) {
    try {
      g = to_quad(load_state(*config.state_file));
    } catch (const InputError& e) {
      throw ConfigError(e.what());
    }
  } else {
    const GeneratorSpec& gen = *config.generator;
    if (gen.name == "vacuum") {
      g = QuadCovariance();
    } else if (gen.name == "tmsv") {
      g = tmsv_state(gen.r);
    } else if (gen.name == "thermal") {
      g = thermal_state(gen.nu1, gen.nu2);
    } else if (gen.name == "random") {
      g = random_state(config.seed, PurityClass::kMixed, SymmetryClass::kGeneral);
    } else {
      throw ConfigError("unknown generator '" + gen.name + "'");
    }
  }
  const ValidityReport rep = validate_physical(g);
  if (!rep.physical()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "state is not physical: nu_minus = " << rep.nu_minus << ", nu_plus = " << rep.nu_plus
        << (rep.symmetric ? "" : ", not symmetric")
        << (rep.positive_definite ? "" : ", not positive definite");
    throw ConfigError(msg.str());
  }
  return g;
}

std::string run_report(const RunConfig& config) {
  validate_config(config);
  const Evaluation e = evaluate(config);
  if (config.format == OutputFormat::kCsv) return csv_header() + csv_row(std::nullopt, e);
  return report_json(config, e).dump(2) + '\n';
}

std::string sweep_table(const RunConfig& config) {
  validate_config(config);
  if (!config.sweep) throw ConfigError("no sweep grid configured");
  std::string table = csv_header();
  for (double x : config.sweep->points()) {
    RunConfig point = config;
    if (config.sweep->param == SweepParam::kR) {
      point.generator->r = x;
    } else {
      point.detector.eta = x;
    }
    table += csv_row(x, evaluate(point));
  }
  return table;
}

ReplayOutcome replay_report(const std::string& report_json) {
  Json report;
  try {
    report = Json::parse(report_json);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  ReplayOutcome out;
  for (const char* name : {"scheme1", "scheme2"}) {
    if (!report.contains(name)) continue;
    const Json& block = report[name];
    const Transcript t = transcript_from_json(block.at("transcript").dump());
    const SchemeResult r = std::string(name) == "scheme1"
                               ? reconstruct_scheme1(t, special_form_from_json(block.at("special_form")))
                               : reconstruct_scheme2(t);
    out.replayed.emplace_back(name);
    for (int k = 1; k <= 4; ++k) {
      const std::string key = "J" + std::to_string(k);
      const Json& recorded = block.at("invariants").at(key);
      const std::optional<double> replayed = r.invariants.get(k);
      const bool same = recorded.is_null() ? !replayed
                                           : replayed && *replayed == recorded.get<double>();
      if (!same) {
        std::ostringstream msg;
        msg.precision(17);
        msg << name << " " << key << ": recorded " << recorded.dump() << ", replayed ";
        if (replayed) {
          msg << *replayed;
        } else {
          msg << "null";
        }
        out.mismatches.push_back(msg.str());
      }
    }
  }
  if (out.replayed.empty()) throw ConfigError("report has no scheme transcripts to replay");
  return out;
}

}  // namespace gaussent::cli
