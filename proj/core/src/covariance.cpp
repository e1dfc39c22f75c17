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

#include "gaussent/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gaussent/errors.hpp"

namespace gaussent {

namespace {

// J = adiag(1, -1) in the quadrature convention.
Mat2 quad_j() {
  Mat2 j;
  j << 0.0, 1.0, -1.0, 0.0;
  return j;
}

CMat2 mode_z() { return CMat2(Eigen::Vector2cd(1.0, -1.0).asDiagonal()); }

}  // namespace

CMat4 ModeCovariance::matrix() const {
  CMat4 v;
  v.topLeftCorner<2, 2>() = v1();
  v.bottomRightCorner<2, 2>() = v2();
  v.topRightCorner<2, 2>() = cv();
  v.bottomLeftCorner<2, 2>() = cv().adjoint();
  return v;
}

CMat2 ModeCovariance::v1() const {
  CMat2 b;
  b << n1, m1, std::conj(m1), n1;
  return b;
}

CMat2 ModeCovariance::v2() const {
  CMat2 b;
  b << n2, m2, std::conj(m2), n2;
  return b;
}

CMat2 ModeCovariance::cv() const {
  CMat2 b;
  b << ms, mc, std::conj(mc), std::conj(ms);
  return b;
}

ModeCovariance ModeCovariance::from_matrix(const CMat4& v) {
  ModeCovariance out;
  out.n1 = v(0, 0).real();
  out.m1 = v(0, 1);
  out.ms = v(0, 2);
  out.mc = v(0, 3);
  out.n2 = v(2, 2).real();
  out.m2 = v(2, 3);
  return out;
}

Mat4 symplectic_form() {
  Mat4 omega = Mat4::Zero();
  omega.topLeftCorner<2, 2>() = quad_j();
  omega.bottomRightCorner<2, 2>() = quad_j();
  return omega;
}

ValidityReport validate_physical(const QuadCovariance& g, double tol) {
  const Mat4& m = g.entries;
  if (!m.allFinite()) throw InputError("covariance matrix has non-finite entries");

  ValidityReport report;
  report.symmetric = (m - m.transpose()).cwiseAbs().maxCoeff() <= kSymmetryTol;

  const Mat4 sym = 0.5 * (m + m.transpose());
  Eigen::SelfAdjointEigenSolver<Mat4> es(sym, Eigen::EigenvaluesOnly);
  report.positive_definite = es.eigenvalues().minCoeff() > 0.0;

  // Eigenvalues of i Omega gamma come in pairs +-nu.
  const CMat4 k = Complex(0.0, 1.0) * (symplectic_form() * sym).cast<Complex>();
  Eigen::ComplexEigenSolver<CMat4> ces(k, false);
  std::array<double, 4> moduli{};
  for (int i = 0; i < 4; ++i) moduli[static_cast<std::size_t>(i)] = std::abs(ces.eigenvalues()(i));
  std::sort(moduli.begin(), moduli.end());
  report.nu_minus = 0.5 * (moduli[0] + moduli[1]);
  report.nu_plus = 0.5 * (moduli[2] + moduli[3]);
  report.uncertainty_ok = report.nu_minus >= 1.0 - tol;
  return report;
}

void require_physical(const QuadCovariance& g, double tol) {
  const ValidityReport r = validate_physical(g, tol);
  if (r.physical()) return;
  std::ostringstream msg;
  msg.precision(12);
  msg << "unphysical covariance matrix: nu- = " << r.nu_minus << ", nu+ = " << r.nu_plus;
  if (!r.symmetric) msg << ", not symmetric";
  if (!r.positive_definite) msg << ", not positive definite";
  throw UnphysicalError(msg.str());
}

// With a_j = (X_j + i P_j) / sqrt(2) and gamma_kl = <R_k R_l + R_l R_k>:
//   n_j  = (g_xx + g_pp) / 4
//   m_j  = -(g_xx - g_pp + 2 i g_xp) / 4
//   ms   = (g_x1x2 + g_p1p2 + i (g_p1x2 - g_x1p2)) / 4
//   mc   = -(g_x1x2 - g_p1p2 + i (g_x1p2 + g_p1x2)) / 4
ModeCovariance quad_to_mode(const QuadCovariance& g) {
  const Mat4& m = g.entries;
  ModeCovariance v;
  v.n1 = (m(0, 0) + m(1, 1)) / 4.0;
  v.n2 = (m(2, 2) + m(3, 3)) / 4.0;
  v.m1 = -Complex(m(0, 0) - m(1, 1), 2.0 * m(0, 1)) / 4.0;
  v.m2 = -Complex(m(2, 2) - m(3, 3), 2.0 * m(2, 3)) / 4.0;
  v.ms = Complex(m(0, 2) + m(1, 3), m(1, 2) - m(0, 3)) / 4.0;
  v.mc = -Complex(m(0, 2) - m(1, 3), m(0, 3) + m(1, 2)) / 4.0;
  return v;
}

QuadCovariance mode_to_quad(const ModeCovariance& v) {
  Mat4 m;
  m.topLeftCorner<2, 2>() = mode_block_to_quad(v.v1());
  m.bottomRightCorner<2, 2>() = mode_block_to_quad(v.v2());
  // Invert the ms / mc relations for the correlation block.
  const double x1x2 = 2.0 * (v.ms.real() - v.mc.real());
  const double p1p2 = 2.0 * (v.ms.real() + v.mc.real());
  const double p1x2 = 2.0 * (v.ms.imag() - v.mc.imag());
  const double x1p2 = -2.0 * (v.ms.imag() + v.mc.imag());
  Mat2 c;
  c << x1x2, x1p2, p1x2, p1p2;
  m.topRightCorner<2, 2>() = c;
  m.bottomLeftCorner<2, 2>() = c.transpose();
  return QuadCovariance(m);
}

InvariantSet invariants_quad(const QuadCovariance& g) {
  const Mat2 a = g.a();
  const Mat2 b = g.b();
  const Mat2 c = g.c();
  const Mat2 j = quad_j();
  const double i4 = (a * j * c * j * b * j * c.transpose() * j).trace();
  return InvariantSet::from_quad(a.determinant(), b.determinant(), c.determinant(), i4);
}

InvariantSet invariants_mode(const ModeCovariance& v) {
  const CMat2 v1 = v.v1();
  const CMat2 v2 = v.v2();
  const CMat2 c = v.cv();
  const CMat2 z = mode_z();
  const Complex j4 = (v1 * z * c * z * v2 * z * c.adjoint() * z).trace();
  return InvariantSet::from_mode(v1.determinant().real(), v2.determinant().real(),
                                 c.determinant().real(), j4.real());
}

double mode_block_det(double n, Complex m) { return n * n - std::norm(m); }

Mat2 mode_block_to_quad(const CMat2& block) {
  const double n = block(0, 0).real();
  const Complex m = block(0, 1);
  Mat2 q;
  q << 2.0 * (n - m.real()), -2.0 * m.imag(), -2.0 * m.imag(), 2.0 * (n + m.real());
  return q;
}

CMat2 quad_block_to_mode(const Mat2& block) {
  const double n = (block(0, 0) + block(1, 1)) / 4.0;
  const Complex m = -Complex(block(0, 0) - block(1, 1), 2.0 * block(0, 1)) / 4.0;
  CMat2 v;
  v << n, m, std::conj(m), n;
  return v;
}

}  // namespace gaussent
