// Copyright 2026 The BlockRR Authors
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

#ifndef BLOCKRR_LAPLACE_HPP_
#define BLOCKRR_LAPLACE_HPP_

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "blockrr/error.hpp"
#include "blockrr/prior.hpp"
#include "blockrr/random.hpp"

namespace blockrr {

// Inverse CDF of the centered Laplace distribution. Exposed separately so
// the u = 1/2 -> 0 midpoint and the tails can be checked directly.
inline double laplace_inverse_cdf(double u, double scale) {
  if (!(scale > 0.0)) {
    throw Error(ErrorCode::kNonpositiveScale, "Laplace scale must be > 0");
  }
  // Guard the open interval; uniform01() can return exactly 0.
  const double tiny = std::numeric_limits<double>::min();
  u = std::min(std::max(u, tiny), 1.0 - std::numeric_limits<double>::epsilon());
  const double centered = u - 0.5;
  if (centered == 0.0) return 0.0;
  const double sign = centered < 0.0 ? -1.0 : 1.0;
  return -scale * sign * std::log(1.0 - 2.0 * std::abs(centered));
}

inline double sample_laplace(double scale, RandomStream& stream) {
  return laplace_inverse_cdf(stream.uniform01(), scale);
}

// Per-class histogram with additive noise, clamped at zero. The scale is
// 2/epsilon: one label change moves two histogram cells by one each, so the
// sensitivity is 2, not 1.
struct HistogramEstimate {
  std::vector<long long> raw_counts;
  std::vector<double> noisy_counts;
  double scale = 0.0;
};

struct PriorEstimate {
  PriorDistribution prior;
  HistogramEstimate histogram;
  // True when every noisy count clamped to zero and the uniform fallback
  // was returned.
  bool fell_back_to_uniform = false;
};

namespace detail {

// Noise is applied class by class in label order, so the draw index per
// class is fixed. NoiseFn is the test seam; production always passes the
// Laplace sampler.
template <typename NoiseFn>
PriorEstimate estimate_prior_impl(const std::vector<int>& labels, int k,
                                  double scale, NoiseFn&& noise) {
  HistogramEstimate hist;
  hist.scale = scale;
  hist.raw_counts.assign(static_cast<std::size_t>(k), 0);
  for (int y : labels) {
    if (y < 0 || y >= k) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(y) + " outside [0, k)");
    }
    ++hist.raw_counts[static_cast<std::size_t>(y)];
  }
  hist.noisy_counts.resize(static_cast<std::size_t>(k));
  double total = 0.0;
  for (int y = 0; y < k; ++y) {
    const double noisy =
        static_cast<double>(hist.raw_counts[static_cast<std::size_t>(y)]) +
        noise();
    hist.noisy_counts[static_cast<std::size_t>(y)] = std::max(noisy, 0.0);
    total += hist.noisy_counts[static_cast<std::size_t>(y)];
  }

  PriorEstimate out;
  out.histogram = std::move(hist);
  if (total <= 0.0) {
    out.prior = uniform_prior(k);
    out.fell_back_to_uniform = true;
    return out;
  }
  std::vector<double> probs(static_cast<std::size_t>(k));
  for (int y = 0; y < k; ++y) {
    probs[static_cast<std::size_t>(y)] =
        out.histogram.noisy_counts[static_cast<std::size_t>(y)] / total;
  }
  out.prior = PriorDistribution{std::move(probs)};
  return out;
}

}  // namespace detail

inline PriorEstimate estimate_prior_detailed(const std::vector<int>& labels,
                                             double epsilon, int k,
                                             RandomStream& stream) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kNonpositiveEpsilon, "epsilon must be positive");
  }
  const double scale = 2.0 / epsilon;
  return detail::estimate_prior_impl(
      labels, k, scale, [&] { return sample_laplace(scale, stream); });
}

// Private estimate of the label prior: count per class, add Lap(2/eps),
// clamp at zero, normalize. An all-zero clamped histogram yields the
// uniform prior.
inline PriorDistribution estimate_prior(const std::vector<int>& labels,
                                        double epsilon, int k,
                                        RandomStream& stream) {
  return estimate_prior_detailed(labels, epsilon, k, stream).prior;
}

}  // namespace blockrr

#endif  // BLOCKRR_LAPLACE_HPP_
