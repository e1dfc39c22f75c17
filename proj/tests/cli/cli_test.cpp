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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "gaussent/cli/app.hpp"
#include "gaussent/generators.hpp"
#include "gaussent/state_io.hpp"
#include "support/oracles.hpp"

namespace gaussent::cli {
namespace {

using nlohmann::json;

struct CliRun {
  int code = -1;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  CliRun r;
  r.code = run_cli(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gaussent_cli_test_" + name);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) rows.push_back(split_csv_line(line));
  return rows;
}

template <typename Json>
std::vector<std::string> keys(const Json& obj) {
  std::vector<std::string> out;
  for (const auto& [k, v] : obj.items()) out.push_back(k);
  return out;
}

TEST(Cli, TwoModeSqueezedVacuumEndToEnd) {
  const CliRun r = cli({"run", "--generator", "tmsv", "--r", "0.5", "--scheme", "both",
                        "--detector", "ideal"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out);
  const double oracle_ef = rep["oracle"]["entanglement"]["eof"].get<double>();
  EXPECT_NEAR(rep["scheme2"]["entanglement"]["eof"].get<double>(), oracle_ef, 1e-9);
  EXPECT_NEAR(oracle_ef, testing::tmsv_eof(0.5), 1e-12);
  EXPECT_FALSE(rep["scheme2"]["entanglement"]["separable"].get<bool>());
  EXPECT_TRUE(rep["consistency"]["within_tol"].get<bool>());
}

TEST(Cli, VacuumFirstScheme) {
  const CliRun r = cli({"scheme1", "--generator", "vacuum"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rep = json::parse(r.out);
  EXPECT_FALSE(rep.contains("scheme2"));
  const json& inv = rep["scheme1"]["invariants"];
  EXPECT_NEAR(inv["J1"].get<double>(), 0.25, 1e-15);
  EXPECT_NEAR(inv["J2"].get<double>(), 0.25, 1e-15);
  EXPECT_NEAR(inv["J3"].get<double>(), 0.0, 1e-15);
  EXPECT_NEAR(inv["J4"].get<double>(), 0.0, 1e-15);
  EXPECT_TRUE(rep["scheme1"]["entanglement"]["separable"].get<bool>());
}

TEST(Cli, IdenticalSeedsGiveByteIdenticalReports) {
  const std::vector<std::string> args = {"run", "--generator", "random", "--seed", "42"};
  const CliRun a = cli(args);
  const CliRun b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["seed"].get<std::uint64_t>(), 42u);

  const std::vector<std::string> noisy = {"run",   "--generator", "tmsv",     "--seed",
                                          "7",     "--detector",  "homodyne", "--eta",
                                          "0.8",   "--shots",     "20000"};
  const CliRun c = cli(noisy);
  const CliRun d = cli(noisy);
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(c.out, d.out);
  const CliRun e = cli({"run", "--generator", "tmsv", "--seed", "8", "--detector", "homodyne",
                        "--eta", "0.8", "--shots", "20000"});
  EXPECT_NE(c.out, e.out);
}

TEST(Cli, ReportFieldNamesAreStable) {
  const CliRun r = cli({"run", "--generator", "tmsv", "--detector", "photocount", "--eta", "0.9",
                        "--shots", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = nlohmann::ordered_json::parse(r.out);
  EXPECT_EQ(keys(rep), (std::vector<std::string>{"tool", "version", "seed", "scheme", "detector",
                                                 "state", "validity", "oracle", "scheme1",
                                                 "scheme2", "consistency"}));
  EXPECT_EQ(keys(rep["detector"]), (std::vector<std::string>{"kind", "eta", "shots"}));
  EXPECT_EQ(keys(rep["oracle"]),
            (std::vector<std::string>{"invariants", "quad_invariants", "entanglement"}));
  EXPECT_EQ(keys(rep["oracle"]["entanglement"]),
            (std::vector<std::string>{"separable", "simon_margin", "eof", "eof_lower_bound",
                                      "log_negativity", "nu_tilde_minus"}));
  EXPECT_EQ(keys(rep["scheme1"]),
            (std::vector<std::string>{"invariants", "std_error", "deltas", "entanglement",
                                      "eof_lower_bound", "special_form", "warnings",
                                      "transcript"}));
  EXPECT_EQ(keys(rep["scheme2"]),
            (std::vector<std::string>{"invariants", "std_error", "deltas", "entanglement",
                                      "eof_lower_bound", "standard_form", "warnings",
                                      "transcript", "prep"}));
  EXPECT_EQ(keys(rep["scheme2"]["deltas"]["J4"]), (std::vector<std::string>{"abs", "rel"}));
  EXPECT_EQ(rep["detector"]["kind"], "photocount");
  EXPECT_EQ(rep["scheme2"]["transcript"]["format"], "transcript");
  EXPECT_EQ(rep["scheme2"]["transcript"]["records"].size(), 8u);
  EXPECT_EQ(rep["scheme1"]["transcript"]["records"].size(), 10u);
}

TEST(Cli, CsvHeaderIsStable) {
  const CliRun r = cli({"run", "--generator", "tmsv", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string header = r.out.substr(0, r.out.find('\n'));
  EXPECT_EQ(header,
            "param,J1_oracle,J2_oracle,J3_oracle,J4_oracle,J1_scheme,J2_scheme,J3_scheme,"
            "J4_scheme,E_f,E_f_bound,E_N,simon_margin,nu_minus");
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].size(), kCsvColumns.size());
}

TEST(Cli, SqueezingSweepMatchesClosedForm) {
  const CliRun r = cli({"sweep", "--generator", "tmsv", "--param", "r", "--from", "0", "--to",
                        "2", "--steps", "21"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 22u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double rr = std::stod(rows[i][0]);
    EXPECT_NEAR(rr, 0.1 * static_cast<double>(i - 1), 1e-12);
    EXPECT_NEAR(std::stod(rows[i][9]), testing::tmsv_eof(rr), 1e-9) << "r=" << rr;
    EXPECT_NEAR(std::stod(rows[i][11]), testing::tmsv_log_negativity(rr), 1e-9) << "r=" << rr;
  }
}

TEST(Cli, EfficiencySweepWithCorrectionMatchesOracle) {
  const CliRun r = cli({"sweep", "--generator", "random", "--seed", "3", "--detector",
                        "homodyne", "--param", "eta", "--from", "0.5", "--to", "1", "--steps",
                        "6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 7u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    for (std::size_t k = 0; k < 4; ++k) {
      const double oracle = std::stod(rows[i][1 + k]);
      const double scheme = std::stod(rows[i][5 + k]);
      EXPECT_LT(testing::rel_err(scheme, oracle), 1e-9) << "row " << i << " J" << k + 1;
    }
  }
}

TEST(Cli, ConfigurationErrorsExitWithOne) {
  EXPECT_EQ(cli({"sweep", "--generator", "tmsv", "--from", "0", "--to", "1", "--steps", "0"}).code,
            1);
  EXPECT_EQ(cli({"run"}).code, 1);
  EXPECT_EQ(cli({"run", "--generator", "squeezed"}).code, 1);
  EXPECT_EQ(cli({"run", "--generator", "tmsv", "--state", "x.json"}).code, 1);
  EXPECT_EQ(cli({"run", "--state", temp_file("missing.json").string()}).code, 1);
  EXPECT_EQ(cli({"run", "--generator", "tmsv", "--eta", "0.5"}).code, 1);
  EXPECT_EQ(cli({"run", "--generator", "tmsv", "--detector", "homodyne", "--eta", "1.5"}).code,
            1);
  EXPECT_EQ(cli({"run", "--generator", "tmsv", "--scheme", "scheme3"}).code, 1);
  EXPECT_EQ(cli({"sweep", "--generator", "thermal", "--from", "0", "--to", "1", "--steps", "3"})
                .code,
            1);

  const CliRun bad = cli({"validate", "--generator", "thermal", "--nu1", "0.5"});
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.err.find("nu_minus"), std::string::npos);
  EXPECT_EQ(cli({"validate", "--generator", "thermal", "--nu1", "2"}).code, 0);
}

TEST(Cli, ReadsStateFiles) {
  const auto path = temp_file("state.json");
  save_state(path, quad_to_mode(tmsv_state(0.5)));
  const CliRun from_file = cli({"oracle", "--state", path.string()});
  std::filesystem::remove(path);
  ASSERT_EQ(from_file.code, 0) << from_file.err;
  const json rep = json::parse(from_file.out);
  EXPECT_NEAR(rep["oracle"]["entanglement"]["eof"].get<double>(), testing::tmsv_eof(0.5), 1e-12);
  EXPECT_EQ(rep["state"]["source"]["kind"], "file");
}

TEST(Cli, ReplayReproducesReportedInvariants) {
  const auto path = temp_file("report.json");
  const CliRun r = cli({"run", "--generator", "random", "--seed", "11", "--detector", "homodyne",
                        "--eta", "0.9", "--shots", "50000", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const CliRun replay = cli({"replay", path.string()});
  EXPECT_EQ(replay.code, 0) << replay.err;
  EXPECT_EQ(replay.out, "replay ok: scheme1 scheme2\n");

  // Tampering with a recorded invariant is caught.
  json rep;
  {
    std::ifstream in(path);
    in >> rep;
  }
  rep["scheme2"]["invariants"]["J3"] = rep["scheme2"]["invariants"]["J3"].get<double>() * 1.5;
  {
    std::ofstream out(path);
    out << rep.dump(2);
  }
  const CliRun tampered = cli({"replay", path.string()});
  std::filesystem::remove(path);
  EXPECT_EQ(tampered.code, 2);
  EXPECT_NE(tampered.err.find("scheme2 J3"), std::string::npos);
}

TEST(Cli, ReconstructionFailureExitsWithTwo) {
  Transcript t = record_transcript(quad_to_mode(tmsv_state(0.5)), scheme1_plan(),
                                   DetectorModel::ideal(), 0);
  for (auto& rec : t.records) {
    if (rec.observable == Observable::kJ) rec.value = -1.0;
  }
  const auto path = temp_file("transcript.json");
  {
    std::ofstream out(path);
    out << transcript_to_json(t);
  }
  const CliRun r = cli({"replay", path.string(), "--scheme", "scheme1"});
  std::filesystem::remove(path);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("reconstruction failed"), std::string::npos);
}

}  // namespace
}  // namespace gaussent::cli
