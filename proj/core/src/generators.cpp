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

#include "gaussent/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace gaussent {

namespace {

constexpr double kMaxNu = 3.0;
constexpr double kMaxSqueeze = 0.6;
constexpr int kLayers = 3;

class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }
  double squeeze(double max) { return uniform(-max, max); }

  Mat2 local(double max_squeeze) {
    return rotation(angle()) * squeezer(squeeze(max_squeeze)) * rotation(angle());
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Mat2 rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Mat2 r;
  r << c, s, -s, c;
  return r;
}

Mat2 squeezer(double r) {
  Mat2 s = Mat2::Zero();
  s(0, 0) = std::exp(-r);
  s(1, 1) = std::exp(r);
  return s;
}

Mat4 local_symplectic(const Mat2& s1, const Mat2& s2) {
  Mat4 s = Mat4::Zero();
  s.topLeftCorner<2, 2>() = s1;
  s.bottomRightCorner<2, 2>() = s2;
  return s;
}

Mat4 beam_splitter(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Mat4 b = Mat4::Zero();
  b.topLeftCorner<2, 2>() = c * Mat2::Identity();
  b.topRightCorner<2, 2>() = s * Mat2::Identity();
  b.bottomLeftCorner<2, 2>() = -s * Mat2::Identity();
  b.bottomRightCorner<2, 2>() = c * Mat2::Identity();
  return b;
}

Mat4 two_mode_squeezer(double r) {
  const Mat2 z = Eigen::Vector2d(1.0, -1.0).asDiagonal();
  Mat4 t = Mat4::Zero();
  t.topLeftCorner<2, 2>() = std::cosh(r) * Mat2::Identity();
  t.bottomRightCorner<2, 2>() = std::cosh(r) * Mat2::Identity();
  t.topRightCorner<2, 2>() = std::sinh(r) * z;
  t.bottomLeftCorner<2, 2>() = std::sinh(r) * z;
  return t;
}

QuadCovariance conjugate(const QuadCovariance& g, const Mat4& s) {
  Mat4 out = s * g.entries * s.transpose();
  // Keep exact symmetry; the product is symmetric only up to rounding.
  return QuadCovariance(0.5 * (out + out.transpose()));
}

QuadCovariance tmsv_state(double r) {
  const double c = std::cosh(2.0 * r);
  const double s = std::sinh(2.0 * r);
  Mat4 g;
  g << c, 0, s, 0,
       0, c, 0, -s,
       s, 0, c, 0,
       0, -s, 0, c;
  return QuadCovariance(g);
}

QuadCovariance thermal_state(double nu1, double nu2) {
  return QuadCovariance(Eigen::Vector4d(nu1, nu1, nu2, nu2).asDiagonal());
}

QuadCovariance random_state(std::uint64_t seed, PurityClass purity, SymmetryClass symmetry) {
  Draw draw(mix_seed(seed, 0x5eed));
  const bool mixed = purity == PurityClass::kMixed;
  const double nu1 = mixed ? draw.uniform(1.0, kMaxNu) : 1.0;
  const double nu2 = mixed ? draw.uniform(1.0, kMaxNu) : 1.0;

  Mat4 s = Mat4::Identity();
  if (symmetry == SymmetryClass::kSymmetric) {
    // A balanced beam splitter makes the thermal pair swap-symmetric; the
    // layers below keep that symmetry.
    s = beam_splitter(std::numbers::pi / 4);
  }
  for (int layer = 0; layer < kLayers; ++layer) {
    if (symmetry == SymmetryClass::kSymmetric) {
      // Both factors commute with the mode swap.
      const Mat2 l = draw.local(kMaxSqueeze);
      s = local_symplectic(l, l) * two_mode_squeezer(draw.squeeze(kMaxSqueeze)) * s;
    } else {
      const Mat2 l1 = draw.local(kMaxSqueeze);
      const Mat2 l2 = draw.local(kMaxSqueeze);
      s = beam_splitter(draw.uniform(0.0, std::numbers::pi)) * local_symplectic(l1, l2) * s;
    }
  }
  // Arbitrary local operations preserve every invariant, including I1 = I2.
  s = local_symplectic(draw.local(kMaxSqueeze), draw.local(kMaxSqueeze)) * s;
  return conjugate(thermal_state(nu1, nu2), s);
}

QuadCovariance random_population_member(std::uint64_t seed, std::size_t k) {
  const auto purity = (k % 2 == 0) ? PurityClass::kPure : PurityClass::kMixed;
  const auto symmetry = ((k / 2) % 2 == 0) ? SymmetryClass::kGeneral : SymmetryClass::kSymmetric;
  return random_state(mix_seed(seed, k), purity, symmetry);
}

QuadCovariance random_special_form_state(std::uint64_t seed, CorrelationForm form) {
  Draw draw(mix_seed(seed, 0x5fec));
  const double nu1 = draw.uniform(1.0, kMaxNu + 1.0);
  const double nu2 = draw.uniform(1.0, kMaxNu + 1.0);
  const Mat4 mixing = form == CorrelationForm::kDiagonal
                          ? beam_splitter(draw.uniform(0.0, std::numbers::pi))
                          : two_mode_squeezer(draw.squeeze(1.0));
  const Mat4 hide = local_symplectic(draw.local(kMaxSqueeze), draw.local(kMaxSqueeze));
  return conjugate(thermal_state(nu1, nu2), hide * mixing);
}

Mat4 random_local_symplectic(std::uint64_t seed, double max_squeeze) {
  Draw draw(mix_seed(seed, 0x10ca1));
  const Mat2 l1 = draw.local(max_squeeze);
  const Mat2 l2 = draw.local(max_squeeze);
  return local_symplectic(l1, l2);
}

}  // namespace gaussent
