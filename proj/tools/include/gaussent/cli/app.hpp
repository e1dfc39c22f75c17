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

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gaussent/bench.hpp"
#include "gaussent/covariance.hpp"
#include "gaussent/errors.hpp"

namespace gaussent::cli {

/// Bad flags, unreadable inputs, unphysical states or empty grids.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class SchemeChoice { kOracle, kScheme1, kScheme2, kBoth };
enum class OutputFormat { kJson, kCsv };
enum class SweepParam { kR, kEta };

std::string to_string(SchemeChoice s);
SchemeChoice scheme_choice_from_string(const std::string& name);

/// Named state generator. `r` feeds "tmsv", `nu1`/`nu2` feed "thermal",
/// "random" draws a mixed, general state from the run seed.
struct GeneratorSpec {
  std::string name = "tmsv";
  double r = 0.5;
  double nu1 = 1.0;
  double nu2 = 1.0;
};

/// `steps` grid points spaced evenly from `from` to `to`, both included.
struct SweepGrid {
  SweepParam param = SweepParam::kR;
  double from = 0.0;
  double to = 0.0;
  int steps = 0;

  std::vector<double> points() const;
};

struct RunConfig {
  std::optional<std::filesystem::path> state_file;
  std::optional<GeneratorSpec> generator;
  std::uint64_t seed = 0;
  SchemeChoice scheme = SchemeChoice::kBoth;
  DetectorModel detector;
  OutputFormat format = OutputFormat::kJson;
  std::optional<std::filesystem::path> out;
  std::optional<SweepGrid> sweep;
};

/// Throws ConfigError unless exactly one state source is set, the detector
/// is consistent and any sweep grid is non-empty and finite.
void validate_config(const RunConfig& config);

/// Loads or generates the input state and checks it is physical.
QuadCovariance resolve_state(const RunConfig& config);

/// Column order of every CSV table the tool writes.
inline constexpr std::array<std::string_view, 14> kCsvColumns = {
    "param",     "J1_oracle", "J2_oracle", "J3_oracle", "J4_oracle",
    "J1_scheme", "J2_scheme", "J3_scheme", "J4_scheme", "E_f",
    "E_f_bound", "E_N",       "simon_margin", "nu_minus"};

/// Runs the configured schemes on one state and renders the report in
/// `config.format`. Throws ConfigError for input problems and gaussent
/// errors from the reconstruction itself.
std::string run_report(const RunConfig& config);

/// One CSV row per grid point of `config.sweep`, with a header line.
std::string sweep_table(const RunConfig& config);

struct ReplayOutcome {
  /// Scheme blocks found in the report ("scheme1", "scheme2").
  std::vector<std::string> replayed;
  /// Human-readable descriptions of every invariant that differs.
  std::vector<std::string> mismatches;

  bool ok() const { return mismatches.empty(); }
};

/// Re-runs scheme reconstruction on the transcripts embedded in a JSON
/// report and compares with the recorded invariants bit for bit.
ReplayOutcome replay_report(const std::string& report_json);

/// Command-line entry point; returns the process exit code
/// (0 success, 1 configuration error, 2 reconstruction failure).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gaussent::cli
