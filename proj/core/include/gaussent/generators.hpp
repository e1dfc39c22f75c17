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

#include "gaussent/covariance.hpp"

namespace gaussent {

// Symplectic matrices acting on (X1, P1, X2, P2). A covariance transforms
// as gamma -> S gamma S^T.

/// Single-mode phase-space rotation by `angle`.
Mat2 rotation(double angle);
/// Single-mode squeezer diag(e^{-r}, e^{r}).
Mat2 squeezer(double r);
/// S1 (+) S2.
Mat4 local_symplectic(const Mat2& s1, const Mat2& s2);
/// Passive beam splitter mixing the modes with transmittance cos(theta).
Mat4 beam_splitter(double theta);
/// Two-mode squeezer with parameter r.
Mat4 two_mode_squeezer(double r);

/// Two-mode squeezed vacuum: A = B = cosh(2r) 1, C = sinh(2r) diag(1, -1).
QuadCovariance tmsv_state(double r);

/// Product of thermal states with symplectic eigenvalues nu1, nu2.
QuadCovariance thermal_state(double nu1, double nu2);

enum class PurityClass { kPure, kMixed };
enum class SymmetryClass { kSymmetric, kGeneral };

/// Deterministic random physical state built as S diag(nu1, nu1, nu2, nu2) S^T.
///
/// Pure states have nu1 = nu2 = 1. The symmetric class uses nu1 = nu2 and
/// mixing that commutes with the mode swap (identical local operations and
/// two-mode squeezers), followed by arbitrary local operations, so I1 = I2
/// exactly. The general class draws independent nu's and a composition of
/// local rotations, local squeezers and beam splitters.
QuadCovariance random_state(std::uint64_t seed, PurityClass purity, SymmetryClass symmetry);

/// The k-th member of a mixed population that cycles through all four
/// (purity, symmetry) classes.
QuadCovariance random_population_member(std::uint64_t seed, std::size_t k);

enum class CorrelationForm { kDiagonal, kAntidiagonal };

/// Random state whose mode covariance can be brought locally to a
/// diagonal (beam-splitter type) or anti-diagonal (two-mode-squeezer type)
/// correlation block. Random local operations are applied on top, so the
/// special form is hidden in the returned matrix.
QuadCovariance random_special_form_state(std::uint64_t seed, CorrelationForm form);

/// Random local symplectic S1 (+) S2 (rotation, squeeze, rotation per mode).
Mat4 random_local_symplectic(std::uint64_t seed, double max_squeeze = 1.0);

/// gamma -> S gamma S^T.
QuadCovariance conjugate(const QuadCovariance& g, const Mat4& s);

/// splitmix64 finalizer, used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace gaussent
