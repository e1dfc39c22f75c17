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

inline constexpr double kDefaultSymTol = 1e-6;

struct SimonResult {
  bool separable = false;
  /// I1 I2 + (1 - |I3|)^2 - I4 - I1 - I2; non-negative for separable states.
  double margin = 0.0;
};

/// Simon's criterion. States with I3 >= 0 are separable regardless of the
/// margin.
SimonResult simon_separable(const InvariantSet& inv);

/// f(x) = c+ log2 c+ - c- log2 c-, c+-(x) = (x^{-1/2} +- x^{1/2})^2 / 4.
/// Returns 0 for x >= 1.
double eof_function(double x);

bool is_symmetric(const InvariantSet& inv, double sym_tol = kDefaultSymTol);

/// Entanglement of formation (bits) of a symmetric state, evaluated as
/// f(sqrt(I1 + |I3| - sqrt(I4 + 2 I1 |I3|))). Throws NotApplicableError for
/// |I1 - I2| > sym_tol * max(I1, I2) and NumericalDomainError for a
/// radicand below -1e-12.
double eof_symmetric(const InvariantSet& inv, double sym_tol = kDefaultSymTol);

/// The same expression with I4 set to zero. Since f decreases and I4 >= 0
/// this never exceeds eof_symmetric.
double eof_lower_bound(const InvariantSet& inv, double sym_tol = kDefaultSymTol);

struct NegativityResult {
  double log_negativity = 0.0;
  /// Smallest symplectic eigenvalue of the partially transposed state.
  double nu_tilde_minus = 1.0;
};

/// E_N = max(0, -log2 nu~-) with
///   nu~-^2 = (D - sqrt(D^2 - 4 det gamma)) / 2,  D = I1 + I2 - 2 I3.
NegativityResult log_negativity(const InvariantSet& inv);

struct EntanglementReport {
  bool separable = false;
  double simon_margin = 0.0;
  std::optional<double> eof;
  std::optional<double> eof_lower_bound;
  double log_negativity = 0.0;
  double nu_tilde_minus = 1.0;
};

/// Full report. E_f and its bound are only filled in for symmetric input.
EntanglementReport assess_entanglement(const InvariantSet& inv,
                                       double sym_tol = kDefaultSymTol);

}  // namespace gaussent
