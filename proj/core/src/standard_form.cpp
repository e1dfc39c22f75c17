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

#include "gaussent/standard_form.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gaussent/errors.hpp"

namespace gaussent {

namespace {

LocalModeSymplectic zeroing_symplectic(double n, Complex m, int mode) {
  const double abs_m = std::abs(m);
  if (abs_m >= n) {
    std::ostringstream msg;
    msg.precision(12);
    msg << "mode " << mode << " has |m| = " << abs_m << " >= n = " << n;
    throw UnphysicalError(msg.str());
  }
  LocalModeSymplectic s;
  if (abs_m == 0.0) return s;
  const double mu = std::arg(m);
  s.alpha = 0.5 * (mu + std::numbers::pi);
  s.beta = s.alpha;
  s.theta = 0.5 * std::atanh(abs_m / n);
  return s;
}

}  // namespace

CMat2 LocalModeSymplectic::matrix() const {
  const Complex i(0.0, 1.0);
  const double ch = std::cosh(theta);
  const double sh = std::sinh(theta);
  CMat2 s;
  s << std::exp(-i * alpha) * ch, std::exp(i * beta) * sh,
       std::exp(-i * beta) * sh, std::exp(i * alpha) * ch;
  return s;
}

ModeCovariance apply_local(const ModeCovariance& v, const LocalModeSymplectic& s1,
                           const LocalModeSymplectic& s2) {
  CMat4 s = CMat4::Zero();
  s.topLeftCorner<2, 2>() = s1.matrix();
  s.bottomRightCorner<2, 2>() = s2.matrix();
  const CMat4 vt = s * v.matrix() * s.adjoint();
  return ModeCovariance::from_matrix(vt);
}

StandardFormPrep standard_form_prep(const ModeCovariance& v) {
  StandardFormPrep prep;
  prep.s1 = zeroing_symplectic(v.n1, v.m1, 1);
  prep.s2 = zeroing_symplectic(v.n2, v.m2, 2);
  prep.vt = apply_local(v, prep.s1, prep.s2);
  return prep;
}

std::optional<SpecialForm> detect_special_form(const ModeCovariance& v, double tol) {
  if (std::abs(v.m1) > tol * v.n1 || std::abs(v.m2) > tol * v.n2) {
    throw PreconditionError("detect_special_form needs a standard-form state (m1 = m2 = 0)");
  }
  const double ms = std::abs(v.ms);
  const double mc = std::abs(v.mc);
  const double scale = tol * (ms + mc);
  if (mc <= scale) return SpecialForm::kDiagonalC;
  if (ms <= scale) return SpecialForm::kAntidiagonalC;
  return std::nullopt;
}

}  // namespace gaussent
