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
#include <optional>
#include <string>
#include <vector>

#include "gaussent/bench.hpp"
#include "gaussent/covariance.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/standard_form.hpp"

namespace gaussent {

enum class Observable { kN, kJ };

struct PlanEntry {
  BenchSetting setting;
  bool needs_n = false;
  bool needs_j = false;
};

struct MeasurementPlan {
  std::vector<PlanEntry> entries;
};

/// Six J' settings and four N' settings that determine J1, J2 and J3.
MeasurementPlan scheme1_plan();
/// (0,0), (pi/2,0), (pi/4,0), (pi/4,pi/2), both observables, applied to the
/// standard-form state.
MeasurementPlan scheme2_plan();

struct TranscriptRecord {
  BenchSetting setting;
  Observable observable = Observable::kN;
  double value = 0.0;
  std::optional<double> std_error;
  /// Covariance with the N' record of the same setting (J' records only).
  std::optional<double> cov_with_n;
};

/// Everything a scheme reads about the state: one record per
/// (setting, observable) pair of its plan.
struct Transcript {
  std::vector<TranscriptRecord> records;

  /// Throws ReconstructionError when the record is missing.
  const TranscriptRecord& at(const BenchSetting& setting, Observable observable) const;
  double value(const BenchSetting& setting, Observable observable) const {
    return at(setting, observable).value;
  }
};

/// Runs the plan on the bench. Setting k uses sub-seed mix_seed(seed, k).
Transcript record_transcript(const ModeCovariance& v, const MeasurementPlan& plan,
                             const DetectorModel& det, std::uint64_t seed);

/// Reconstructed J1..J4; J4 is absent when the scheme cannot provide it.
struct ReconstructedInvariants {
  double j1 = 0.0;
  double j2 = 0.0;
  double j3 = 0.0;
  std::optional<double> j4;
  /// First-order propagated standard errors, when the transcript has them.
  std::array<std::optional<double>, 4> std_error{};

  std::optional<InvariantSet> full() const;
  std::optional<double> get(int k) const;
};

/// Standard-form quantities recovered by the second scheme. Only |m~_c|^2
/// is observable; the phase of m~_c is not reconstructed.
struct StandardFormEstimate {
  double n1 = 0.5;
  double n2 = 0.5;
  double re_ms = 0.0;
  double im_ms = 0.0;
  double mc_abs2 = 0.0;
  bool mc_abs2_clamped = false;
};

struct SchemeResult {
  int scheme = 0;
  ReconstructedInvariants invariants;
  Transcript transcript;
  /// Present when all four invariants are known.
  std::optional<EntanglementReport> entanglement;
  /// First scheme only: E_f lower bound for symmetric states.
  std::optional<double> eof_lower_bound;
  /// First scheme only: the special form the state was declared to have.
  std::optional<SpecialForm> special_form;
  std::optional<StandardFormEstimate> standard_form;
  std::vector<std::string> warnings;
};

/// J1 = J'(0,0), J2 = J'(pi/2,0), J3 = (JJ + NN) / 4 from the transcript;
/// with a declared special form, J4 = 2 |J3| sqrt(J1 J2).
SchemeResult reconstruct_scheme1(const Transcript& t, std::optional<SpecialForm> special,
                                 double sym_tol = kDefaultSymTol);

/// J1 = N~'(0,0)^2, J2 = N~'(pi/2,0)^2, |m~_c|^2 = N~'(pi/4,0)^2 - J~'(pi/4,0),
/// Re m~_s and Im m~_s from N~'(pi/4,0) and N~'(pi/4,pi/2);
/// J3 = |m~_s|^2 - |m~_c|^2 and J4 = 2 n~1 n~2 (|m~_s|^2 + |m~_c|^2).
SchemeResult reconstruct_scheme2(const Transcript& t, double sym_tol = kDefaultSymTol);

/// Measures the plan on v. The special form, if any, is detected on the
/// standard form of v and passed to the reconstruction as prior knowledge.
SchemeResult scheme1(const ModeCovariance& v, const DetectorModel& det, std::uint64_t seed,
                     double sym_tol = kDefaultSymTol);

/// Brings v to standard form with standard_form_prep and measures the
/// result. Does not use any output of the first scheme.
SchemeResult scheme2(const ModeCovariance& v, const DetectorModel& det, std::uint64_t seed,
                     double sym_tol = kDefaultSymTol);

struct InvariantDelta {
  double delta = 0.0;
  std::optional<double> combined_std_error;
};

struct ConsistencyReport {
  std::array<InvariantDelta, 3> deltas{};  // J1, J2, J3
  double tol = 0.0;
  bool within_tol = false;
  /// Every |delta| within three combined standard errors (finite shots only).
  std::optional<bool> within_3se;
};

ConsistencyReport consistency_check(const SchemeResult& s1, const SchemeResult& s2,
                                    double tol);

}  // namespace gaussent
