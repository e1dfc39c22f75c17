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
#include <numbers>

#include <gtest/gtest.h>

#include "gaussent/covariance.hpp"
#include "gaussent/errors.hpp"
#include "gaussent/generators.hpp"
#include "gaussent/standard_form.hpp"
#include "support/oracles.hpp"

namespace gaussent {
namespace {

TEST(StandardFormPrep, AlreadyDiagonalIsIdentity) {
  const ModeCovariance v = quad_to_mode(tmsv_state(0.4));
  const StandardFormPrep prep = standard_form_prep(v);
  EXPECT_EQ(prep.s1.theta, 0.0);
  EXPECT_EQ(prep.s2.theta, 0.0);
  EXPECT_LT((prep.s1.matrix() - CMat2::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((prep.vt.matrix() - v.matrix()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(StandardFormPrep, RealOffDiagonalBranch) {
  ModeCovariance v;
  v.n1 = 1.2;
  v.m1 = 0.3 * v.n1;
  const StandardFormPrep prep = standard_form_prep(v);
  EXPECT_DOUBLE_EQ(prep.s1.alpha, std::numbers::pi / 2);
  EXPECT_DOUBLE_EQ(prep.s1.beta, std::numbers::pi / 2);
  EXPECT_NEAR(std::tanh(2 * prep.s1.theta), 0.3, 1e-15);
  EXPECT_LT(std::abs(prep.vt.m1), 1e-15);
  EXPECT_NEAR(prep.vt.n1, std::sqrt(mode_block_det(v.n1, v.m1)), 1e-14);
}

TEST(StandardFormPrep, ParametricFormMatchesBranch) {
  ModeCovariance v = quad_to_mode(random_state(5, PurityClass::kMixed, SymmetryClass::kGeneral));
  const StandardFormPrep prep = standard_form_prep(v);
  EXPECT_NEAR(prep.s2.alpha, 0.5 * (std::arg(v.m2) + std::numbers::pi), 1e-15);
  EXPECT_EQ(prep.s2.alpha, prep.s2.beta);
  EXPECT_NEAR(std::tanh(2 * prep.s2.theta), std::abs(v.m2) / v.n2, 1e-14);
  // Each S_j is in SU(1,1): det = 1.
  EXPECT_NEAR(std::abs(prep.s1.matrix().determinant() - 1.0), 0.0, 1e-13);
}

TEST(StandardFormPrep, ZeroesOffDiagonalAndPreservesInvariants) {
  for (std::uint64_t k = 0; k < 500; ++k) {
    const ModeCovariance v = quad_to_mode(random_population_member(51, k));
    const StandardFormPrep prep = standard_form_prep(v);
    EXPECT_LT(std::abs(prep.vt.m1), 1e-10);
    EXPECT_LT(std::abs(prep.vt.m2), 1e-10);
    const InvariantSet a = invariants_mode(v);
    const InvariantSet b = invariants_mode(prep.vt);
    for (int n = 1; n <= 4; ++n) {
      const double scale = n == 3 ? std::sqrt(a.j1() * a.j2()) : std::abs(a.j(n));
      EXPECT_LT(std::abs(b.j(n) - a.j(n)) / scale, 1e-9) << "k=" << k << " J" << n;
    }
    EXPECT_TRUE(validate_physical(mode_to_quad(prep.vt)).physical());
  }
}

TEST(StandardFormPrep, RejectsUnphysicalBlock) {
  ModeCovariance v;
  v.n1 = 0.5;
  v.m1 = 0.6;
  EXPECT_THROW(standard_form_prep(v), UnphysicalError);
}

TEST(DetectSpecialForm, Examples) {
  EXPECT_EQ(detect_special_form(quad_to_mode(tmsv_state(0.5))), SpecialForm::kAntidiagonalC);
  EXPECT_EQ(detect_special_form(quad_to_mode(thermal_state(1.5, 2.5))), SpecialForm::kDiagonalC);

  ModeCovariance both;
  both.n1 = both.n2 = 1.0;
  both.ms = 0.1;
  both.mc = 0.1;
  EXPECT_EQ(detect_special_form(both), std::nullopt);

  ModeCovariance not_standard = both;
  not_standard.m1 = 0.2;
  EXPECT_THROW(detect_special_form(not_standard), PreconditionError);
}

TEST(DetectSpecialForm, HiddenFormsFoundAfterPrep) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto diag = quad_to_mode(random_special_form_state(seed, CorrelationForm::kDiagonal));
    EXPECT_EQ(detect_special_form(standard_form_prep(diag).vt), SpecialForm::kDiagonalC);
    const auto anti = quad_to_mode(random_special_form_state(seed, CorrelationForm::kAntidiagonal));
    EXPECT_EQ(detect_special_form(standard_form_prep(anti).vt), SpecialForm::kAntidiagonalC);
  }
}

TEST(StandardForm, FourthInvariantInStandardForm) {
  for (std::uint64_t k = 0; k < 100; ++k) {
    const ModeCovariance vt = standard_form_prep(quad_to_mode(random_population_member(61, k))).vt;
    const double expected = 2 * vt.n1 * vt.n2 * (std::norm(vt.ms) + std::norm(vt.mc));
    EXPECT_LT(testing::rel_err(invariants_mode(vt).j4(), expected), 1e-10);
  }
}

}  // namespace
}  // namespace gaussent
