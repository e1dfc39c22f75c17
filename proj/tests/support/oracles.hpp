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

// Independent reference computations used only by tests.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gaussent/covariance.hpp"

namespace gaussent::testing {

inline double rel_err(double got, double want) {
  const double scale = std::abs(want);
  return scale > 0.0 ? std::abs(got - want) / scale : std::abs(got - want);
}

/// Symplectic eigenvalues (ascending) from the moduli of the eigenvalues
/// of i Omega gamma, computed on the full matrix.
inline std::array<double, 2> symplectic_spectrum(const Mat4& gamma) {
  Mat4 omega = Mat4::Zero();
  omega(0, 1) = omega(2, 3) = 1.0;
  omega(1, 0) = omega(3, 2) = -1.0;
  const CMat4 k = std::complex<double>(0.0, 1.0) * (omega * gamma).cast<std::complex<double>>();
  Eigen::ComplexEigenSolver<CMat4> es(k, false);
  std::array<double, 4> m{};
  for (int i = 0; i < 4; ++i) m[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
  std::sort(m.begin(), m.end());
  return {0.5 * (m[0] + m[1]), 0.5 * (m[2] + m[3])};
}

/// Partial transpose on mode 2 (P2 -> -P2).
inline Mat4 partial_transpose(const Mat4& gamma) {
  const Eigen::Vector4d flip(1.0, 1.0, 1.0, -1.0);
  return flip.asDiagonal() * gamma * flip.asDiagonal();
}

inline double ppt_nu_minus(const Mat4& gamma) { return symplectic_spectrum(partial_transpose(gamma))[0]; }

/// Bogoliubov matrix written out from its definition, with plain std::cos.
inline CMat4 reference_bogoliubov(double theta, double phi) {
  const std::complex<double> e = std::polar(1.0, phi);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  CMat4 u = CMat4::Zero();
  u(0, 0) = e * c;
  u(1, 1) = std::conj(e) * c;
  u(0, 2) = s;
  u(1, 3) = s;
  u(2, 0) = -s;
  u(3, 1) = -s;
  u(2, 2) = std::conj(e) * c;
  u(3, 3) = e * c;
  return u;
}

/// (1,1) and (2,2) blocks of U^dag V U.
inline CMat2 conjugated_block(const CMat4& v, double theta, double phi, int block) {
  const CMat4 u = reference_bogoliubov(theta, phi);
  const CMat4 out = u.adjoint() * v * u;
  return block == 1 ? CMat2(out.topLeftCorner<2, 2>()) : CMat2(out.bottomRightCorner<2, 2>());
}

// Closed forms for the two-mode squeezed vacuum.
inline double tmsv_i1(double r) { return std::pow(std::cosh(2.0 * r), 2); }
inline double tmsv_i3(double r) { return -std::pow(std::sinh(2.0 * r), 2); }
inline double tmsv_i4(double r) { return 2.0 * tmsv_i1(r) * -tmsv_i3(r); }
inline double tmsv_eof(double r) {
  const double c2 = std::pow(std::cosh(r), 2);
  const double s2 = std::pow(std::sinh(r), 2);
  return s2 > 0.0 ? c2 * std::log2(c2) - s2 * std::log2(s2) : 0.0;
}
inline double tmsv_log_negativity(double r) { return 2.0 * r * std::log2(std::exp(1.0)); }

}  // namespace gaussent::testing
