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

#ifndef BLOCKRR_WEIGHTS_HPP_
#define BLOCKRR_WEIGHTS_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"
#include "blockrr/prior.hpp"

namespace blockrr {

// Prior-scaled affinity w_ij = p_j * exp(-1/sigma for i != j, else 0),
// rows over all of S, columns over s_tilde only. The prior is kept so rows
// whose label is not an output still have a defined diagonal value p_i.
struct WeightMatrix {
  std::vector<std::vector<double>> w;
  double sigma = 0.0;
  LabelSet s_tilde;
  PriorDistribution prior;
};

inline WeightMatrix build_weight_matrix(const PriorDistribution& prior,
                                        double sigma,
                                        const LabelSet& s_tilde) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kNonpositiveSigma, "sigma must be positive");
  }
  if (!prior.valid()) throw std::invalid_argument("invalid prior");
  const int k = prior.class_count();
  if (s_tilde.empty() || s_tilde.front() < 0 || s_tilde.back() >= k) {
    throw Error(ErrorCode::kLabelOutOfRange, "s_tilde outside label space");
  }
  const double off = std::exp(-1.0 / sigma);
  WeightMatrix out;
  out.sigma = sigma;
  out.s_tilde = s_tilde;
  out.prior = prior;
  out.w.assign(static_cast<std::size_t>(k),
               std::vector<double>(s_tilde.size(), 0.0));
  for (int i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < s_tilde.size(); ++c) {
      const int j = s_tilde[c];
      const double pj = prior.probs[static_cast<std::size_t>(j)];
      out.w[static_cast<std::size_t>(i)][c] = (i == j) ? pj : pj * off;
    }
  }
  return out;
}

// Majority set by the definitional row scan: i belongs to s1 when its
// diagonal weight dominates every entry of row i over s_tilde.
inline std::pair<LabelSet, LabelSet> split_by_weights(const WeightMatrix& wm) {
  const int k = wm.prior.class_count();
  LabelSet s1;
  for (int i = 0; i < k; ++i) {
    const double diag = wm.prior.probs[static_cast<std::size_t>(i)];
    bool dominant = true;
    for (double wij : wm.w[static_cast<std::size_t>(i)]) {
      if (diag < wij) {
        dominant = false;
        break;
      }
    }
    if (dominant) s1.push_back(i);
  }
  LabelSet s2;
  for (int i = 0; i < k; ++i) {
    if (!set_contains(s1, i)) s2.push_back(i);
  }
  return {std::move(s1), std::move(s2)};
}

// Closed form of the same split: p_i >= exp(-1/sigma) * max_{j in s_tilde} p_j.
inline LabelSet split_majority_closed_form(const PriorDistribution& prior,
                                           double sigma,
                                           const LabelSet& s_tilde) {
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::kNonpositiveSigma, "sigma must be positive");
  }
  double max_p = 0.0;
  for (int j : s_tilde) {
    max_p = std::max(max_p, prior.probs[static_cast<std::size_t>(j)]);
  }
  const double threshold = std::exp(-1.0 / sigma) * max_p;
  LabelSet s1;
  for (int i = 0; i < prior.class_count(); ++i) {
    if (prior.probs[static_cast<std::size_t>(i)] >= threshold) s1.push_back(i);
  }
  return s1;
}

// The l highest-prior labels inside s_tilde1, ties to the smaller label.
inline LabelSet select_delta(const PriorDistribution& prior,
                             const LabelSet& s_tilde1, int l) {
  if (l < 0 || l > static_cast<int>(s_tilde1.size())) {
    throw Error(ErrorCode::kLOutOfRange,
                "l must satisfy 0 <= l <= |s_tilde1| = " +
                    std::to_string(s_tilde1.size()));
  }
  LabelSet order = s_tilde1;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return prior.probs[static_cast<std::size_t>(a)] >
           prior.probs[static_cast<std::size_t>(b)];
  });
  order.resize(static_cast<std::size_t>(l));
  return canonicalize_set(std::move(order));
}

}  // namespace blockrr

#endif  // BLOCKRR_WEIGHTS_HPP_
