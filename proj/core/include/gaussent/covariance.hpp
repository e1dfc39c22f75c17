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
#include <complex>

#include <Eigen/Dense>

namespace gaussent {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;
using CMat2 = Eigen::Matrix2cd;
using CMat4 = Eigen::Matrix4cd;

inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kPhysicalTol = 1e-9;

/// Quadrature covariance matrix of two modes, ordered (X1, P1, X2, P2).
///
/// Normalized so that the vacuum is the identity; a state is physical iff
/// both symplectic eigenvalues are at least one. First moments are not
/// tracked: every state is taken to be zero-mean.
struct QuadCovariance {
  Mat4 entries = Mat4::Identity();

  QuadCovariance() = default;
  explicit QuadCovariance(const Mat4& m) : entries(m) {}

  /// Local 2x2 blocks: A (mode 1), B (mode 2) and the correlation block C.
  Mat2 a() const { return entries.topLeftCorner<2, 2>(); }
  Mat2 b() const { return entries.bottomRightCorner<2, 2>(); }
  Mat2 c() const { return entries.topRightCorner<2, 2>(); }

  friend bool operator==(const QuadCovariance&, const QuadCovariance&) = default;
};

/// Covariance matrix of (a1, a1^dag, a2, a2^dag) in the block layout
///
///   [ n1    m1    ms    mc  ]
///   [ m1*   n1    mc*   ms* ]
///   [ ms*   mc    n2    m2  ]
///   [ mc*   ms    m2*   n2  ]
///
/// so n_j = <a_j^dag a_j> + 1/2, m_j = -<a_j^2>, ms = <a1 a2^dag> and
/// mc = -<a1 a2>. Hermitian by construction.
struct ModeCovariance {
  double n1 = 0.5;
  double n2 = 0.5;
  Complex m1{};
  Complex m2{};
  Complex ms{};
  Complex mc{};

  CMat4 matrix() const;
  CMat2 v1() const;
  CMat2 v2() const;
  CMat2 cv() const;

  /// Inverse of matrix(); reads the upper triangle of a Hermitian matrix.
  static ModeCovariance from_matrix(const CMat4& v);

  friend bool operator==(const ModeCovariance&, const ModeCovariance&) = default;
};

/// The four local symplectic invariants in the mode convention (J) with
/// the quadrature convention (I) derived from them: I1 = 4 J1, I2 = 4 J2,
/// I3 = 4 J3, I4 = 16 J4.
class InvariantSet {
 public:
  InvariantSet() = default;

  static InvariantSet from_mode(double j1, double j2, double j3, double j4) {
    return InvariantSet(j1, j2, j3, j4);
  }
  static InvariantSet from_quad(double i1, double i2, double i3, double i4) {
    return InvariantSet(i1 / 4.0, i2 / 4.0, i3 / 4.0, i4 / 16.0);
  }

  double j1() const { return j_[0]; }
  double j2() const { return j_[1]; }
  double j3() const { return j_[2]; }
  double j4() const { return j_[3]; }
  double i1() const { return 4.0 * j_[0]; }
  double i2() const { return 4.0 * j_[1]; }
  double i3() const { return 4.0 * j_[2]; }
  double i4() const { return 16.0 * j_[3]; }

  /// J_k for k in 1..4.
  double j(int k) const { return j_.at(static_cast<std::size_t>(k - 1)); }
  const std::array<double, 4>& j_values() const { return j_; }

  /// det(gamma) = I1 I2 + I3^2 - I4, valid for any two-mode covariance.
  double det_quad() const { return i1() * i2() + i3() * i3() - i4(); }

  friend bool operator==(const InvariantSet&, const InvariantSet&) = default;

 private:
  InvariantSet(double j1, double j2, double j3, double j4) : j_{j1, j2, j3, j4} {}
  std::array<double, 4> j_{0.0, 0.0, 0.0, 0.0};
};

struct ValidityReport {
  double nu_minus = 0.0;
  double nu_plus = 0.0;
  bool symmetric = false;
  bool positive_definite = false;
  bool uncertainty_ok = false;

  bool physical() const { return symmetric && positive_definite && uncertainty_ok; }
};

/// Symplectic form for two modes, block-diagonal with [[0, 1], [-1, 0]].
Mat4 symplectic_form();

/// Checks symmetry, positivity and nu >= 1 - tol. The symplectic
/// eigenvalues are the moduli of the eigenvalues of i * Omega * gamma.
/// Throws InputError on non-finite entries.
ValidityReport validate_physical(const QuadCovariance& g, double tol = kPhysicalTol);

/// Throws UnphysicalError (with the symplectic eigenvalues in the message)
/// when validate_physical fails.
void require_physical(const QuadCovariance& g, double tol = kPhysicalTol);

ModeCovariance quad_to_mode(const QuadCovariance& g);
QuadCovariance mode_to_quad(const ModeCovariance& v);

/// I1 = det A, I2 = det B, I3 = det C, I4 = tr(A J C J B J C^T J) with
/// J = adiag(1, -1).
InvariantSet invariants_quad(const QuadCovariance& g);

/// J1 = det V1, J2 = det V2, J3 = det C_V, J4 = tr(V1 Z C_V Z V2 Z C_V^dag Z)
/// with Z = diag(1, -1).
InvariantSet invariants_mode(const ModeCovariance& v);

/// Single-mode 2x2 helpers in the mode convention V_j = [[n, m], [m*, n]].
double mode_block_det(double n, Complex m);
Mat2 mode_block_to_quad(const CMat2& block);
CMat2 quad_block_to_mode(const Mat2& block);

}  // namespace gaussent
