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

#include "gaussent/schemes.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "gaussent/errors.hpp"
#include "gaussent/generators.hpp"

namespace gaussent {

namespace {

using settings::kHalfPi;
using settings::kPi;
using settings::kQuarterPi;

constexpr double kSettingMatchTol = 1e-12;
constexpr double kMcClampSilent = 1e-9;
constexpr double kMcClampFail = 1e-6;

const BenchSetting k00{0.0, 0.0};
const BenchSetting kH0{kHalfPi, 0.0};
const BenchSetting kQ0{kQuarterPi, 0.0};
const BenchSetting kQPi{kQuarterPi, kPi};
const BenchSetting kQH{kQuarterPi, kHalfPi};
const BenchSetting kQmH{kQuarterPi, -kHalfPi};

bool same_setting(const BenchSetting& a, const BenchSetting& b) {
  return std::abs(a.theta - b.theta) <= kSettingMatchTol &&
         std::abs(a.phi - b.phi) <= kSettingMatchTol;
}

// A linear functional of transcript records: first-order propagation of
// standard errors, d f = sum_k grad_k d x_k.
class Propagator {
 public:
  explicit Propagator(const Transcript& t) : t_(t) {}

  void add(const BenchSetting& setting, Observable obs, double grad) {
    grads_[{&t_.at(setting, obs)}] += grad;
  }

  // Records of the same setting are correlated through cov_with_n; all
  // other pairs are independent.
  std::optional<double> std_error() const {
    double var = 0.0;
    for (const auto& [key, g] : grads_) {
      if (!key.record->std_error) return std::nullopt;
      var += g * g * (*key.record->std_error) * (*key.record->std_error);
    }
    for (const auto& [key, g] : grads_) {
      const TranscriptRecord& r = *key.record;
      if (r.observable != Observable::kJ || !r.cov_with_n) continue;
      for (const auto& [other, g2] : grads_) {
        const TranscriptRecord& o = *other.record;
        if (o.observable == Observable::kN && same_setting(o.setting, r.setting)) {
          var += 2.0 * g * g2 * (*r.cov_with_n);
        }
      }
    }
    return std::sqrt(std::max(var, 0.0));
  }

 private:
  struct Key {
    const TranscriptRecord* record;
    bool operator<(const Key& o) const { return record < o.record; }
  };
  const Transcript& t_;
  std::map<Key, double> grads_;
};

void finish_entanglement(SchemeResult& r, double sym_tol) {
  if (const auto inv = r.invariants.full()) r.entanglement = assess_entanglement(*inv, sym_tol);
}

}  // namespace

const TranscriptRecord& Transcript::at(const BenchSetting& setting, Observable observable) const {
  for (const auto& r : records) {
    if (r.observable == observable && same_setting(r.setting, setting)) return r;
  }
  std::ostringstream msg;
  msg << "transcript has no " << (observable == Observable::kN ? "N" : "J")
      << " record at theta = " << setting.theta << ", phi = " << setting.phi;
  throw ReconstructionError(msg.str());
}

MeasurementPlan scheme1_plan() {
  MeasurementPlan plan;
  plan.entries = {
      {k00, true, true}, {kH0, true, true}, {kQ0, true, true},
      {kQH, true, true}, {kQPi, false, true}, {kQmH, false, true},
  };
  return plan;
}

MeasurementPlan scheme2_plan() {
  MeasurementPlan plan;
  plan.entries = {{k00, true, true}, {kH0, true, true}, {kQ0, true, true}, {kQH, true, true}};
  return plan;
}

Transcript record_transcript(const ModeCovariance& v, const MeasurementPlan& plan,
                             const DetectorModel& det, std::uint64_t seed) {
  Transcript t;
  for (std::size_t k = 0; k < plan.entries.size(); ++k) {
    const PlanEntry& e = plan.entries[k];
    const Mode1Observation obs = observe_mode1(v, e.setting, det, mix_seed(seed, k));
    if (e.needs_n) t.records.push_back({e.setting, Observable::kN, obs.n_prime, obs.n_stderr, {}});
    if (e.needs_j) {
      t.records.push_back({e.setting, Observable::kJ, obs.j_prime, obs.j_stderr,
                           e.needs_n ? obs.nj_cov : std::nullopt});
    }
  }
  return t;
}

std::optional<InvariantSet> ReconstructedInvariants::full() const {
  if (!j4) return std::nullopt;
  return InvariantSet::from_mode(j1, j2, j3, *j4);
}

std::optional<double> ReconstructedInvariants::get(int k) const {
  switch (k) {
    case 1:
      return j1;
    case 2:
      return j2;
    case 3:
      return j3;
    case 4:
      return j4;
    default:
      return std::nullopt;
  }
}

SchemeResult reconstruct_scheme1(const Transcript& t, std::optional<SpecialForm> special,
                                 double sym_tol) {
  SchemeResult r;
  r.scheme = 1;
  r.transcript = t;
  r.special_form = special;

  const auto j = [&](const BenchSetting& s) { return t.value(s, Observable::kJ); };
  const auto n = [&](const BenchSetting& s) { return t.value(s, Observable::kN); };

  auto& inv = r.invariants;
  inv.j1 = j(k00);
  inv.j2 = j(kH0);
  if (!(inv.j1 > 0.0) || !(inv.j2 > 0.0)) {
    std::ostringstream msg;
    msg << "reconstructed J1 = " << inv.j1 << ", J2 = " << inv.j2 << " must be positive";
    throw ReconstructionError(msg.str());
  }

  const double jj = j(kQ0) + j(kQPi) + j(kQH) + j(kQmH) - j(k00) - j(kH0);
  const double n00 = n(k00);
  const double nh0 = n(kH0);
  const double nq0 = n(kQ0);
  const double nqh = n(kQH);
  const double nn = n00 * n00 + nh0 * nh0 + 2.0 * nq0 * nq0 + 2.0 * nqh * nqh -
                    2.0 * (n00 + nh0) * (nq0 + nqh);
  inv.j3 = 0.25 * (jj + nn);

  {
    Propagator p1(t);
    p1.add(k00, Observable::kJ, 1.0);
    inv.std_error[0] = p1.std_error();
    Propagator p2(t);
    p2.add(kH0, Observable::kJ, 1.0);
    inv.std_error[1] = p2.std_error();
    // dJ3 = (dJJ + dNN) / 4 with
    //   dNN/dN(0,0)    = 2 N(0,0) - 2 (N(pi/4,0) + N(pi/4,pi/2)), same for N(pi/2,0)
    //   dNN/dN(pi/4,0) = 4 N(pi/4,0) - 2 (N(0,0) + N(pi/2,0)), same for N(pi/4,pi/2)
    Propagator p3(t);
    for (const auto& s : {kQ0, kQPi, kQH, kQmH}) p3.add(s, Observable::kJ, 0.25);
    p3.add(k00, Observable::kJ, -0.25);
    p3.add(kH0, Observable::kJ, -0.25);
    p3.add(k00, Observable::kN, 0.25 * (2.0 * n00 - 2.0 * (nq0 + nqh)));
    p3.add(kH0, Observable::kN, 0.25 * (2.0 * nh0 - 2.0 * (nq0 + nqh)));
    p3.add(kQ0, Observable::kN, 0.25 * (4.0 * nq0 - 2.0 * (n00 + nh0)));
    p3.add(kQH, Observable::kN, 0.25 * (4.0 * nqh - 2.0 * (n00 + nh0)));
    inv.std_error[2] = p3.std_error();
  }

  if (special) {
    const double root = std::sqrt(inv.j1 * inv.j2);
    inv.j4 = 2.0 * std::abs(inv.j3) * root;
    if (inv.std_error[0] && inv.std_error[1] && inv.std_error[2]) {
      // Treats the three errors as independent; they share records only
      // through J(0,0) and J(pi/2,0).
      const double d3 = 2.0 * root;
      const double d1 = std::abs(inv.j3) * inv.j2 / root;
      const double d2 = std::abs(inv.j3) * inv.j1 / root;
      inv.std_error[3] = std::sqrt(d1 * d1 * *inv.std_error[0] * *inv.std_error[0] +
                                   d2 * d2 * *inv.std_error[1] * *inv.std_error[1] +
                                   d3 * d3 * *inv.std_error[2] * *inv.std_error[2]);
    }
    finish_entanglement(r, sym_tol);
  }
  // The bound needs only J1..J3, so it is reported whether or not J4 is known.
  const InvariantSet partial = InvariantSet::from_mode(inv.j1, inv.j2, inv.j3, 0.0);
  if (is_symmetric(partial, sym_tol)) r.eof_lower_bound = eof_lower_bound(partial, sym_tol);
  return r;
}

SchemeResult reconstruct_scheme2(const Transcript& t, double sym_tol) {
  SchemeResult r;
  r.scheme = 2;
  r.transcript = t;

  const double n00 = t.value(k00, Observable::kN);
  const double nh0 = t.value(kH0, Observable::kN);
  const double nq0 = t.value(kQ0, Observable::kN);
  const double nqh = t.value(kQH, Observable::kN);
  const double jq0 = t.value(kQ0, Observable::kJ);

  StandardFormEstimate sf;
  sf.n1 = n00;
  sf.n2 = nh0;
  const double mean_n = 0.5 * (n00 + nh0);
  sf.re_ms = mean_n - nq0;
  sf.im_ms = mean_n - nqh;
  double mc_abs2 = nq0 * nq0 - jq0;

  // d|m~_c|^2: dN(pi/4,0) = 2 N(pi/4,0), dJ(pi/4,0) = -1.
  Propagator p_mc(t);
  p_mc.add(kQ0, Observable::kN, 2.0 * nq0);
  p_mc.add(kQ0, Observable::kJ, -1.0);
  const std::optional<double> se_mc = p_mc.std_error();

  if (mc_abs2 < 0.0) {
    // Finite statistics fluctuate below the physical floor; only fail when
    // the deficit is large against both the fixed floor and the noise.
    const double fail_at = std::max(kMcClampFail, se_mc ? 5.0 * *se_mc : 0.0);
    if (mc_abs2 < -fail_at) {
      std::ostringstream msg;
      msg << "reconstructed |m_c|^2 = " << mc_abs2 << " is negative";
      throw ReconstructionError(msg.str());
    }
    if (mc_abs2 < -kMcClampSilent) {
      std::ostringstream msg;
      msg << "clamped reconstructed |m_c|^2 = " << mc_abs2 << " to zero";
      r.warnings.push_back(msg.str());
    }
    mc_abs2 = 0.0;
    sf.mc_abs2_clamped = true;
  }
  sf.mc_abs2 = mc_abs2;

  const double ms_abs2 = sf.re_ms * sf.re_ms + sf.im_ms * sf.im_ms;
  auto& inv = r.invariants;
  inv.j1 = n00 * n00;
  inv.j2 = nh0 * nh0;
  inv.j3 = ms_abs2 - mc_abs2;
  inv.j4 = 2.0 * n00 * nh0 * (ms_abs2 + mc_abs2);
  if (!(n00 > 0.0) || !(nh0 > 0.0)) throw ReconstructionError("reconstructed n~_j must be positive");

  // Gradients of |m~_s|^2 = Re^2 + Im^2:
  //   dN(0,0) = dN(pi/2,0) = Re + Im, dN(pi/4,0) = -2 Re, dN(pi/4,pi/2) = -2 Im.
  const double g_ms_n0 = sf.re_ms + sf.im_ms;
  const double g_ms_q0 = -2.0 * sf.re_ms;
  const double g_ms_qh = -2.0 * sf.im_ms;
  const double g_mc_q0 = sf.mc_abs2_clamped ? 0.0 : 2.0 * nq0;
  const double g_mc_jq0 = sf.mc_abs2_clamped ? 0.0 : -1.0;

  Propagator p1(t);
  p1.add(k00, Observable::kN, 2.0 * n00);
  inv.std_error[0] = p1.std_error();
  Propagator p2(t);
  p2.add(kH0, Observable::kN, 2.0 * nh0);
  inv.std_error[1] = p2.std_error();

  Propagator p3(t);
  p3.add(k00, Observable::kN, g_ms_n0);
  p3.add(kH0, Observable::kN, g_ms_n0);
  p3.add(kQ0, Observable::kN, g_ms_q0 - g_mc_q0);
  p3.add(kQH, Observable::kN, g_ms_qh);
  p3.add(kQ0, Observable::kJ, -g_mc_jq0);
  inv.std_error[2] = p3.std_error();

  // J4 = 2 n1 n2 S with S = |m~_s|^2 + |m~_c|^2.
  const double sum = ms_abs2 + mc_abs2;
  const double pre = 2.0 * n00 * nh0;
  Propagator p4(t);
  p4.add(k00, Observable::kN, 2.0 * nh0 * sum + pre * g_ms_n0);
  p4.add(kH0, Observable::kN, 2.0 * n00 * sum + pre * g_ms_n0);
  p4.add(kQ0, Observable::kN, pre * (g_ms_q0 + g_mc_q0));
  p4.add(kQH, Observable::kN, pre * g_ms_qh);
  p4.add(kQ0, Observable::kJ, pre * g_mc_jq0);
  inv.std_error[3] = p4.std_error();

  r.standard_form = sf;
  finish_entanglement(r, sym_tol);
  return r;
}

SchemeResult scheme1(const ModeCovariance& v, const DetectorModel& det, std::uint64_t seed,
                     double sym_tol) {
  const StandardFormPrep prep = standard_form_prep(v);
  const auto special = detect_special_form(prep.vt);
  return reconstruct_scheme1(record_transcript(v, scheme1_plan(), det, seed), special, sym_tol);
}

SchemeResult scheme2(const ModeCovariance& v, const DetectorModel& det, std::uint64_t seed,
                     double sym_tol) {
  const StandardFormPrep prep = standard_form_prep(v);
  return reconstruct_scheme2(record_transcript(prep.vt, scheme2_plan(), det, seed), sym_tol);
}

ConsistencyReport consistency_check(const SchemeResult& s1, const SchemeResult& s2, double tol) {
  ConsistencyReport rep;
  rep.tol = tol;
  rep.within_tol = true;
  bool have_se = true;
  bool within_3se = true;
  for (int k = 1; k <= 3; ++k) {
    auto& d = rep.deltas[static_cast<std::size_t>(k - 1)];
    d.delta = *s1.invariants.get(k) - *s2.invariants.get(k);
    const auto& e1 = s1.invariants.std_error[static_cast<std::size_t>(k - 1)];
    const auto& e2 = s2.invariants.std_error[static_cast<std::size_t>(k - 1)];
    if (e1 && e2) {
      d.combined_std_error = std::hypot(*e1, *e2);
      within_3se = within_3se && std::abs(d.delta) <= 3.0 * *d.combined_std_error;
    } else {
      have_se = false;
    }
    rep.within_tol = rep.within_tol && std::abs(d.delta) <= tol;
  }
  if (have_se) rep.within_3se = within_3se;
  return rep;
}

}  // namespace gaussent
