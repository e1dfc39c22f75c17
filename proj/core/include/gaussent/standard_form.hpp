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

#include <optional>

#include "gaussent/covariance.hpp"

namespace gaussent {

/// Local mode-space symplectic
///
///   S = [ e^{-i alpha} cosh(theta)   e^{i beta} sinh(theta) ]
///       [ e^{-i beta}  sinh(theta)   e^{i alpha} cosh(theta) ]
///
/// acting as V_j -> S V_j S^dag.
struct LocalModeSymplectic {
  double alpha = 0.0;
  double beta = 0.0;
  double theta = 0.0;

  CMat2 matrix() const;
};

struct StandardFormPrep {
  LocalModeSymplectic s1;
  LocalModeSymplectic s2;
  ModeCovariance vt;
};

/// Finds local symplectics that zero the off-diagonal entries m1, m2.
///
/// Uses the branch alpha = beta = (mu + pi) / 2, tanh(2 theta) = |m| / n,
/// where m = |m| e^{i mu}. A mode with m = 0 gets the identity
/// (alpha = beta = theta = 0). Throws UnphysicalError if |m_j| >= n_j.
StandardFormPrep standard_form_prep(const ModeCovariance& v);

/// S V S^dag with S = S1 (+) S2.
ModeCovariance apply_local(const ModeCovariance& v, const LocalModeSymplectic& s1,
                           const LocalModeSymplectic& s2);

enum class SpecialForm { kDiagonalC, kAntidiagonalC };

/// Classifies a standard-form state. A zero correlation block satisfies
/// both conditions and is reported as kDiagonalC. Throws PreconditionError
/// when |m1| or |m2| exceeds tol * n_j.
std::optional<SpecialForm> detect_special_form(const ModeCovariance& v, double tol = 1e-9);

}  // namespace gaussent
