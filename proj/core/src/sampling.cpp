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
#include <random>

#include <boost/random/normal_distribution.hpp>

#include "gaussent/bench.hpp"
#include "gaussent/errors.hpp"

namespace gaussent {

QuadratureSample sample_quadrature_variance(const Mat2& quad_block, double angle,
                                            std::int64_t shots, std::uint64_t seed) {
  if (shots < 2) throw InputError("quadrature sampling needs at least two shots");
  const BenchSetting direction{angle, 0.0};
  const double c = direction.cos_theta();
  const double s = direction.sin_theta();
  QuadratureSample out;
  out.true_variance =
      c * c * quad_block(0, 0) + s * s * quad_block(1, 1) + 2.0 * c * s * quad_block(0, 1);
  if (!(out.true_variance > 0.0)) throw UnphysicalError("non-positive quadrature variance");

  std::mt19937_64 rng(seed);
  // Ziggurat sampler; the shot loop dominates finite-statistics runs.
  boost::random::normal_distribution<double> normal(0.0, std::sqrt(out.true_variance));
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::int64_t k = 0; k < shots; ++k) {
    const double x = normal(rng);
    sum += x;
    sum_sq += x * x;
  }
  const auto n = static_cast<double>(shots);
  out.variance = (sum_sq - sum * sum / n) / (n - 1.0);
  out.std_error = std::sqrt(2.0 / (n - 1.0)) * out.variance;
  return out;
}

}  // namespace gaussent
