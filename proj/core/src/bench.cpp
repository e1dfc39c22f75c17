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

#include "gaussent/bench.hpp"

#include <array>
#include <cmath>
#include <random>
#include <sstream>

#include "gaussent/errors.hpp"
#include "gaussent/generators.hpp"

namespace gaussent {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

struct CosSin {
  double c;
  double s;
};

// Exact values on the grid 0, pi/4, pi/2, pi and their negatives.
CosSin exact_cos_sin(double angle) {
  using namespace settings;
  if (angle == 0.0) return {1.0, 0.0};
  if (angle == kQuarterPi) return {kInvSqrt2, kInvSqrt2};
  if (angle == -kQuarterPi) return {kInvSqrt2, -kInvSqrt2};
  if (angle == kHalfPi) return {0.0, 1.0};
  if (angle == -kHalfPi) return {0.0, -1.0};
  if (angle == kPi || angle == -kPi) return {-1.0, 0.0};
  return {std::cos(angle), std::sin(angle)};
}

double det2(const CMat2& m) { return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real(); }

}  // namespace

double BenchSetting::cos_theta() const { return exact_cos_sin(theta).c; }
double BenchSetting::sin_theta() const { return exact_cos_sin(theta).s; }
Complex BenchSetting::phase() const {
  const CosSin cs = exact_cos_sin(phi);
  return {cs.c, cs.s};
}

std::string to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kIdeal:
      return "ideal";
    case DetectorKind::kLossyPhotocount:
      return "photocount";
    case DetectorKind::kLossyHomodyne:
      return "homodyne";
  }
  return "ideal";
}

DetectorKind detector_kind_from_string(const std::string& name) {
  if (name == "ideal") return DetectorKind::kIdeal;
  if (name == "photocount" || name == "lossy-photocount") return DetectorKind::kLossyPhotocount;
  if (name == "homodyne" || name == "lossy-homodyne") return DetectorKind::kLossyHomodyne;
  throw InputError("unknown detector kind '" + name + "'");
}

CMat4 bogoliubov(const BenchSetting& setting) {
  const double c = setting.cos_theta();
  const double s = setting.sin_theta();
  const Complex e = setting.phase();
  CMat2 r = CMat2::Zero();
  r(0, 0) = e * c;
  r(1, 1) = std::conj(e) * c;
  const CMat2 sb = s * CMat2::Identity();
  CMat4 u;
  u.topLeftCorner<2, 2>() = r;
  u.topRightCorner<2, 2>() = sb;
  u.bottomLeftCorner<2, 2>() = -sb.conjugate();
  u.bottomRightCorner<2, 2>() = r.conjugate();
  return u;
}

CMat2 output_mode1_covariance(const ModeCovariance& v, const BenchSetting& setting) {
  const double c = setting.cos_theta();
  const double s = setting.sin_theta();
  const Complex e = setting.phase();
  CMat2 r = CMat2::Zero();
  r(0, 0) = e * c;
  r(1, 1) = std::conj(e) * c;
  const CMat2 sb = s * CMat2::Identity();
  const CMat2 cv = v.cv();
  CMat2 out = r.conjugate() * v.v1() * r + sb * v.v2() * sb.conjugate() -
              sb * cv.adjoint() * r - r.conjugate() * cv * sb.conjugate();
  // Hermitian up to rounding; pin it exactly.
  return 0.5 * (out + out.adjoint());
}

CMat2 output_mode2_covariance(const ModeCovariance& v, const BenchSetting& setting) {
  const CMat4 u = bogoliubov(setting);
  const CMat4 out = u.adjoint() * v.matrix() * u;
  return out.bottomRightCorner<2, 2>();
}

Mode1Observation make_observation(double n_prime, double j_prime) {
  Mode1Observation obs;
  obs.n_prime = n_prime;
  obs.j_prime = j_prime;
  obs.purity = j_prime > 0.0 ? 1.0 / (2.0 * std::sqrt(j_prime)) : 0.0;
  obs.wigner0 = obs.purity / std::numbers::pi;
  return obs;
}

CMat2 apply_loss(const CMat2& v1p, double eta) {
  return eta * v1p + (1.0 - eta) * 0.5 * CMat2::Identity();
}

CMat2 invert_loss(const CMat2& v1p_meas, double eta) {
  return (v1p_meas - (1.0 - eta) * 0.5 * CMat2::Identity()) / eta;
}

namespace {

HomodyneCorrection correct_homodyne(double v_min_meas, double v_max_meas, double eta_hom) {
  HomodyneCorrection out;
  out.v_min = (v_min_meas - 1.0 + eta_hom) / eta_hom;
  out.v_max = (v_max_meas - 1.0 + eta_hom) / eta_hom;
  out.j_prime = out.v_min * out.v_max / 4.0;
  out.n_prime = (out.v_min + out.v_max) / 4.0;
  return out;
}

}  // namespace

HomodyneCorrection invert_loss_homodyne(double v_min_meas, double v_max_meas, double eta_hom) {
  if (!(eta_hom > 0.0 && eta_hom <= 1.0)) throw InputError("eta_hom must lie in (0, 1]");
  const double floor = 1.0 - eta_hom;
  if (v_min_meas < floor || v_max_meas < floor) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "measured variance below the vacuum floor " << floor << ": (" << v_min_meas << ", "
        << v_max_meas << ")";
    throw UnphysicalError(msg.str());
  }
  return correct_homodyne(v_min_meas, v_max_meas, eta_hom);
}

TransmittanceRescale rescale_transmittance(double theta_target, double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InputError("eta must lie in (0, 1]");
  if (eta == 1.0) return {theta_target, false};
  const double ratio = exact_cos_sin(theta_target).c / eta;
  if (ratio > 1.0) return {0.0, true};
  return {std::acos(ratio), false};
}

namespace {

void require_eta(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw InputError("detector efficiency must lie in (0, 1]");
}

std::int64_t require_shots(const DetectorModel& det) {
  const std::int64_t shots = *det.shots;
  if (shots <= 0) throw InputError("shot count must be positive");
  return shots;
}

// Photon-number and parity estimates drawn around the lossy state, then
// inverted with the known efficiency:
//   n = (n_meas - c) / eta,  j = (j_meas - 2 c n_meas + c^2) / eta^2,  c = (1 - eta) / 2.
Mode1Observation observe_photocount(const CMat2& v1p, const DetectorModel& det,
                                    std::uint64_t seed) {
  const double eta = det.eta;
  const CMat2 meas = apply_loss(v1p, eta);
  double n_meas = meas(0, 0).real();
  double j_meas = det2(meas);
  double var_n = 0.0;
  double var_j = 0.0;
  const bool finite = det.shots.has_value();
  if (finite) {
    const auto shots = static_cast<double>(require_shots(det));
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    // Var(a^dag a) = n^2 + |m|^2 - 1/4 for a zero-mean Gaussian mode.
    const double photon_var = n_meas * n_meas + std::norm(meas(0, 1)) - 0.25;
    const double se_n = std::sqrt(std::max(photon_var, 0.0) / shots);
    // Parity <(-1)^n> equals the purity; a single outcome is +-1.
    const double parity = 1.0 / (2.0 * std::sqrt(j_meas));
    const double se_parity = std::sqrt(std::max(1.0 - parity * parity, 0.0) / shots);
    n_meas += se_n * normal(rng);
    const double parity_hat = parity + se_parity * normal(rng);
    if (parity_hat <= 0.0) throw ReconstructionError("non-positive parity estimate");
    j_meas = 1.0 / (4.0 * parity_hat * parity_hat);
    var_n = se_n * se_n;
    const double se_j = se_parity / (2.0 * parity_hat * parity_hat * parity_hat);
    var_j = se_j * se_j;
  }
  const double c = 0.5 * (1.0 - eta);
  Mode1Observation obs =
      make_observation((n_meas - c) / eta, (j_meas - 2.0 * c * n_meas + c * c) / (eta * eta));
  if (finite) {
    obs.n_stderr = std::sqrt(var_n) / eta;
    obs.j_stderr = std::sqrt(var_j + 4.0 * c * c * var_n) / (eta * eta);
    obs.nj_cov = -2.0 * c * var_n / (eta * eta * eta);
  }
  return obs;
}

// Standard errors a sampled variance may fall below the vacuum floor before
// the estimate is treated as unphysical.
constexpr double kFloorSlack = 5.0;

// First-order standard error of the smaller eigenvalue of the estimated
// block, V_min = (v0 + v90) / 2 - h with h = hypot((v0 - v90) / 2, g12) and
// g12 = v45 - (v0 + v90) / 2:
//   dh/dv0 = ((v0 - v90) / 4 - g12 / 2) / h, dh/dv90 = (-(v0 - v90) / 4 - g12 / 2) / h,
//   dh/dv45 = g12 / h.
double min_variance_std_error(const Mat2& est, const std::array<double, 3>& se) {
  const double d = 0.5 * (est(0, 0) - est(1, 1));
  const double g12 = est(0, 1);
  const double h = std::hypot(d, g12);
  if (h == 0.0) return std::max({se[0], se[1], se[2]});
  const std::array<double, 3> grad{0.5 - (0.5 * d - 0.5 * g12) / h,
                                   0.5 - (-0.5 * d - 0.5 * g12) / h, -g12 / h};
  double var = 0.0;
  for (std::size_t k = 0; k < 3; ++k) var += grad[k] * grad[k] * se[k] * se[k];
  return std::sqrt(var);
}

// Quadrature variances at 0, pi/2 and pi/4 give the 2x2 covariance of the
// lossy mode; its eigenvalues are the squeezed and anti-squeezed variances.
Mode1Observation observe_homodyne(const CMat2& v1p, const DetectorModel& det,
                                  std::uint64_t seed) {
  const double eta = det.eta;
  const Mat2 lossy = mode_block_to_quad(apply_loss(v1p, eta));
  Mat2 est = lossy;
  std::array<double, 3> se{};
  const bool finite = det.shots.has_value();
  if (finite) {
    const std::int64_t shots = require_shots(det);
    if (shots < 2) throw InputError("homodyne sampling needs at least two shots");
    const QuadratureSample x = sample_quadrature_variance(lossy, 0.0, shots, mix_seed(seed, 0));
    const QuadratureSample p =
        sample_quadrature_variance(lossy, settings::kHalfPi, shots, mix_seed(seed, 1));
    const QuadratureSample d =
        sample_quadrature_variance(lossy, settings::kQuarterPi, shots, mix_seed(seed, 2));
    est(0, 0) = x.variance;
    est(1, 1) = p.variance;
    est(0, 1) = est(1, 0) = d.variance - 0.5 * (x.variance + p.variance);
    se = {x.std_error, p.std_error, d.std_error};
  }
  const double mean = 0.5 * (est(0, 0) + est(1, 1));
  const double half_gap = std::hypot(0.5 * (est(0, 0) - est(1, 1)), est(0, 1));
  const double v_min = mean - half_gap;
  const double v_max = mean + half_gap;
  HomodyneCorrection corr;
  if (finite && v_min < 1.0 - eta &&
      v_min >= 1.0 - eta - kFloorSlack * min_variance_std_error(est, se)) {
    // Shot noise alone can push the sampled squeezed variance under the
    // vacuum floor; keep the unbiased estimate instead of rejecting it.
    corr = correct_homodyne(v_min, v_max, eta);
  } else {
    corr = invert_loss_homodyne(v_min, v_max, eta);
  }
  Mode1Observation obs = make_observation(corr.n_prime, corr.j_prime);
  if (finite) {
    // Corrected block g = (est - (1 - eta) 1) / eta; n' = tr g / 4 and
    // j' = det g / 4. Gradients with respect to the three sampled variances:
    //   dn'/dv0 = dn'/dv90 = 1 / (4 eta), dn'/dv45 = 0
    //   dj'/dv0 = (g22 + g12) / (4 eta), dj'/dv90 = (g11 + g12) / (4 eta),
    //   dj'/dv45 = -g12 / (2 eta)
    const Mat2 g = (est - (1.0 - eta) * Mat2::Identity()) / eta;
    const std::array<double, 3> dn{1.0 / (4.0 * eta), 1.0 / (4.0 * eta), 0.0};
    const std::array<double, 3> dj{(g(1, 1) + g(0, 1)) / (4.0 * eta),
                                   (g(0, 0) + g(0, 1)) / (4.0 * eta), -g(0, 1) / (2.0 * eta)};
    double var_n = 0.0;
    double var_j = 0.0;
    double cov = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      const double s2 = se[k] * se[k];
      var_n += dn[k] * dn[k] * s2;
      var_j += dj[k] * dj[k] * s2;
      cov += dn[k] * dj[k] * s2;
    }
    obs.n_stderr = std::sqrt(var_n);
    obs.j_stderr = std::sqrt(var_j);
    obs.nj_cov = cov;
  }
  return obs;
}

}  // namespace

Mode1Observation observe_mode1(const ModeCovariance& v, const BenchSetting& setting,
                               const DetectorModel& det, std::uint64_t seed) {
  const CMat2 v1p = output_mode1_covariance(v, setting);
  switch (det.kind) {
    case DetectorKind::kIdeal:
      return make_observation(v1p(0, 0).real(), det2(v1p));
    case DetectorKind::kLossyPhotocount:
      require_eta(det.eta);
      return observe_photocount(v1p, det, seed);
    case DetectorKind::kLossyHomodyne:
      require_eta(det.eta);
      return observe_homodyne(v1p, det, seed);
  }
  throw InputError("unknown detector kind");
}

QuadratureSample sample_quadratures(const ModeCovariance& v, const BenchSetting& setting,
                                    double angle, std::int64_t shots, double eta,
                                    std::uint64_t seed) {
  require_eta(eta);
  const Mat2 lossy = mode_block_to_quad(apply_loss(output_mode1_covariance(v, setting), eta));
  return sample_quadrature_variance(lossy, angle, shots, seed);
}

}  // namespace gaussent
