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

#ifndef BLOCKRR_PRIOR_HPP_
#define BLOCKRR_PRIOR_HPP_

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace blockrr {

inline constexpr double kProbabilitySumTolerance = 1e-12;

// Label prior p = [p_0 ... p_{K-1}]: nonnegative, sums to one.
struct PriorDistribution {
  std::vector<double> probs;

  int class_count() const { return static_cast<int>(probs.size()); }

  bool valid() const {
    if (probs.empty()) return false;
    double sum = 0.0;
    for (double p : probs) {
      if (!(p >= 0.0)) return false;
      sum += p;
    }
    return std::abs(sum - 1.0) <= kProbabilitySumTolerance;
  }
};

inline PriorDistribution make_prior(std::vector<double> probs) {
  PriorDistribution prior{std::move(probs)};
  if (!prior.valid()) {
    throw std::invalid_argument(
        "prior must be nonnegative and sum to 1 within 1e-12");
  }
  return prior;
}

inline PriorDistribution uniform_prior(int class_count) {
  if (class_count < 1) throw std::invalid_argument("class_count must be >= 1");
  return PriorDistribution{
      std::vector<double>(static_cast<std::size_t>(class_count),
                          1.0 / class_count)};
}

// Prior proportional to per-class record counts.
inline PriorDistribution prior_from_counts(const std::vector<long long>& counts) {
  long long total = 0;
  for (long long c : counts) {
    if (c < 0) throw std::invalid_argument("counts must be nonnegative");
    total += c;
  }
  if (counts.empty() || total == 0) {
    throw std::invalid_argument("counts must contain a positive entry");
  }
  std::vector<double> probs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    probs[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return PriorDistribution{std::move(probs)};
}

inline nlohmann::json prior_to_json(const PriorDistribution& prior) {
  return nlohmann::json{{"k", prior.class_count()}, {"p", prior.probs}};
}

inline PriorDistribution prior_from_json(const nlohmann::json& j) {
  PriorDistribution prior{j.at("p").get<std::vector<double>>()};
  if (j.at("k").get<int>() != prior.class_count() || !prior.valid()) {
    throw std::invalid_argument("malformed prior JSON");
  }
  return prior;
}

}  // namespace blockrr

#endif  // BLOCKRR_PRIOR_HPP_
