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

#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "gaussent/covariance.hpp"

namespace gaussent {

/// Phase shift `phi` on mode 1 followed by a beam splitter of
/// transmittance cos(theta).
struct BenchSetting {
  double theta = 0.0;
  double phi = 0.0;

  /// cos/sin that return exact 0, 1 and 1/sqrt(2) on the grid
  /// {0, pi/4, pi/2}, and likewise for phi on {0, +-pi/2, pi}.
  double cos_theta() const;
  double sin_theta() const;
  Complex phase() const;

  friend bool operator==(const BenchSetting&, const BenchSetting&) = default;
};

namespace settings {
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;
inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kPi = std::numbers::pi;
}  // namespace settings

enum class DetectorKind { kIdeal, kLossyPhotocount, kLossyHomodyne };

std::string to_string(DetectorKind kind);
DetectorKind detector_kind_from_string(const std::string& name);

struct DetectorModel {
  DetectorKind kind = DetectorKind::kIdeal;
  double eta = 1.0;
  /// Shots per observable and setting; nullopt means unlimited.
  std::optional<std::int64_t> shots;

  static DetectorModel ideal() { return {}; }
};

struct Mode1Observation {
  /// N'_1 = <a'^dag a'> + 1/2.
  double n_prime = 0.5;
  /// J'_1 = det V'_1.
  double j_prime = 0.25;
  double purity = 1.0;
  double wigner0 = 0.0;
  std::optional<double> n_stderr;
  std::optional<double> j_stderr;
  /// Covariance of the (n_prime, j_prime) estimates; they share samples
  /// under homodyne detection.
  std::optional<double> nj_cov;
};

/// The 4x4 Bogoliubov matrix [[R, S], [-S*, R*]] with
/// R = diag(e^{i phi} cos(theta), e^{-i phi} cos(theta)), S = sin(theta) 1.
CMat4 bogoliubov(const BenchSetting& setting);

/// V'_1 = R* V1 R + S V2 S* - S C_V^dag R - R* C_V S*, the mode-1 block of
/// U^dag V U.
CMat2 output_mode1_covariance(const ModeCovariance& v, const BenchSetting& setting);

/// Mode-2 block of U^dag V U.
CMat2 output_mode2_covariance(const ModeCovariance& v, const BenchSetting& setting);

/// Observation from already-corrected (N', J') pairs: fills purity and W(0).
Mode1Observation make_observation(double n_prime, double j_prime);

/// Simulated measurement of mode a'_1.
///
/// kIdeal reads N' and J' off V'_1 exactly. Lossy kinds mix in vacuum
/// with efficiency eta and invert the loss with the known eta; finite
/// shots add estimation noise with reported standard errors. Photocount
/// noise is Gaussian with the photon-number and parity variances of the
/// lossy state; homodyne noise comes from sample_quadratures at the
/// angles 0, pi/2 and pi/4. A sampled squeezed variance up to five standard
/// errors below the vacuum floor is kept as is; a larger dip throws
/// UnphysicalError. Deterministic in seed.
Mode1Observation observe_mode1(const ModeCovariance& v, const BenchSetting& setting,
                               const DetectorModel& det, std::uint64_t seed);

/// eta V + (1 - eta) / 2 1: vacuum admixture through a beam splitter of
/// transmittance eta.
CMat2 apply_loss(const CMat2& v1p, double eta);
/// Algebraic inverse of apply_loss.
CMat2 invert_loss(const CMat2& v1p_meas, double eta);

struct HomodyneCorrection {
  double v_min = 1.0;
  double v_max = 1.0;
  double j_prime = 0.25;
  double n_prime = 0.5;
};

/// Corrects measured quadrature variances (vacuum = 1) through
/// V = (V_meas - 1 + eta) / eta, then J' = V_min V_max / 4 and
/// N' = (V_min + V_max) / 4. Throws UnphysicalError for a measured variance
/// below the vacuum floor 1 - eta.
HomodyneCorrection invert_loss_homodyne(double v_min_meas, double v_max_meas, double eta_hom);

struct TransmittanceRescale {
  double theta_physical = 0.0;
  bool unreachable = false;
};

/// Beam-splitter angle that realizes the target transmittance once the
/// detector efficiency multiplies it: cos(theta_phys) = cos(theta_target) / eta,
/// clamped to 1 and flagged unreachable when the ratio exceeds 1.
TransmittanceRescale rescale_transmittance(double theta_target, double eta);

struct QuadratureSample {
  double variance = 0.0;
  double std_error = 0.0;
  double true_variance = 0.0;
};

/// Draws `shots` zero-mean Gaussian samples of X cos(angle) + P sin(angle)
/// of mode a'_1 after loss (vacuum variance 1) and returns the unbiased
/// sample variance with standard error sqrt(2 / (shots - 1)) * variance.
/// Throws InputError for shots < 2.
QuadratureSample sample_quadratures(const ModeCovariance& v, const BenchSetting& setting,
                                    double angle, std::int64_t shots, double eta,
                                    std::uint64_t seed);

/// Same, for a known single-mode quadrature covariance (vacuum = identity).
QuadratureSample sample_quadrature_variance(const Mat2& quad_block, double angle,
                                            std::int64_t shots, std::uint64_t seed);

}  // namespace gaussent
