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

#ifndef BLOCKRR_MECHANISMS_HPP_
#define BLOCKRR_MECHANISMS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"
#include "blockrr/matrix.hpp"
#include "blockrr/partition_config.hpp"
#include "blockrr/prior.hpp"
#include "blockrr/random.hpp"

namespace blockrr {

// The two block transition weights. Normalization of the majority and
// minority rows gives a 2x2 linear system in (beta, gamma); its closed-form
// solution is beta = beta1/kappa, gamma = gamma1/kappa with
//
//   a      = (e^eps - 1) |B(y)|
//   beta1  = a + l |St2| / |St|
//   gamma1 = (a + l) - (l / |St|) (a + |St1|)
//   kappa  = (a + |St1|)(a + |St2|) - (|St1| - l) |St2|
//
// where St, St1, St2 abbreviate s_tilde and its two parts. kappa also
// equals a^2 + a|St| + l|St2|, which is strictly positive for eps > 0.
struct BetaGamma {
  double beta = 0.0;
  double gamma = 0.0;
  double beta1 = 0.0;
  double gamma1 = 0.0;
  double kappa = 0.0;
};

inline BetaGamma solve_beta_gamma(const PartitionConfig& config) {
  const double a =
      (std::exp(config.epsilon) - 1.0) * config.mapping.block_size();
  const double st = static_cast<double>(config.s_tilde.size());
  const double st1 = static_cast<double>(config.s_tilde1.size());
  const double st2 = static_cast<double>(config.s_tilde2.size());
  const double l = static_cast<double>(config.l);

  BetaGamma out;
  out.beta1 = a + l * st2 / st;
  out.gamma1 = (a + l) - (l / st) * (a + st1);
  out.kappa = (a + st1) * (a + st2) - (st1 - l) * st2;
  if (!(out.kappa > 0.0)) {
    // Unreachable for eps > 0 and |B(y)| >= 1.
    throw Error(ErrorCode::kDegenerateSystem, "kappa must be positive");
  }
  out.beta = out.beta1 / out.kappa;
  out.gamma = out.gamma1 / out.kappa;
  return out;
}

// Transition matrix of the block mechanism.
//
// Majority rows (y in s1) put e^eps*beta on B(y), beta on the rest of
// s_tilde1 and gamma on s_tilde2. Minority rows (y in s2) put 1/|s_tilde|
// on delta, e^eps*gamma on B(y), beta on the rest of s_tilde1 and gamma on
// the rest of s_tilde2. When s_tilde2 is empty the accepted configs have
// delta = s_tilde1, so minority rows are uniform.
inline MechanismMatrix build_blockrr_matrix(const PartitionConfig& config) {
  const ValidationResult validation = validate_config(config);
  if (!validation.ok()) throw Error(*validation.error, validation.detail);

  const BetaGamma bg = solve_beta_gamma(config);
  const double e_eps = std::exp(config.epsilon);
  const double uniform = 1.0 / static_cast<double>(config.s_tilde.size());

  MechanismMatrix m;
  m.input_labels = config.space.labels();
  m.output_labels = config.s_tilde;
  m.p.assign(m.input_labels.size(),
             std::vector<double>(m.output_labels.size(), 0.0));

  for (std::size_t r = 0; r < m.input_labels.size(); ++r) {
    const int y = m.input_labels[r];
    const bool minority = set_contains(config.s2, y);
    const LabelSet& block = config.mapping.block(y);
    for (std::size_t c = 0; c < m.output_labels.size(); ++c) {
      const int ytil = m.output_labels[c];
      double value;
      if (minority) {
        if (set_contains(config.delta, ytil)) {
          value = uniform;
        } else if (set_contains(block, ytil)) {
          value = e_eps * bg.gamma;
        } else if (set_contains(config.s_tilde1, ytil)) {
          value = bg.beta;
        } else {
          value = bg.gamma;
        }
      } else {
        if (set_contains(config.s_tilde2, ytil)) {
          value = bg.gamma;
        } else if (set_contains(block, ytil)) {
          value = e_eps * bg.beta;
        } else {
          value = bg.beta;
        }
      }
      m.p[r][c] = value;
    }
  }
  return m;
}

// Draws one privatized label from row y by inverse CDF over the stored
// column order. Deterministic given the stream state.
inline int sample_label(int y, const MechanismMatrix& matrix,
                        RandomStream& stream) {
  const int r = matrix.row_of(y);
  if (r < 0) {
    throw Error(ErrorCode::kLabelOutOfRange,
                "input label " + std::to_string(y) + " has no matrix row");
  }
  const std::vector<double>& row = matrix.p[static_cast<std::size_t>(r)];
  const double u = stream.uniform01();
  double cumulative = 0.0;
  for (std::size_t c = 0; c < row.size(); ++c) {
    cumulative += row[c];
    if (u < cumulative) return matrix.output_labels[c];
  }
  return matrix.output_labels.back();
}

// Classic K-ary randomized response: keep the label with probability
// e^eps / (e^eps + K - 1), otherwise flip uniformly.
inline MechanismMatrix build_rr_matrix(int k, double epsilon) {
  if (k < 1) throw std::invalid_argument("build_rr_matrix requires k >= 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kNonpositiveEpsilon, "epsilon must be positive");
  }
  const double e_eps = std::exp(epsilon);
  const double denom = e_eps + static_cast<double>(k) - 1.0;
  MechanismMatrix m;
  m.input_labels = LabelSpace(k).labels();
  m.output_labels = m.input_labels;
  m.p.assign(static_cast<std::size_t>(k),
             std::vector<double>(static_cast<std::size_t>(k), 1.0 / denom));
  for (int y = 0; y < k; ++y) {
    m.p[static_cast<std::size_t>(y)][static_cast<std::size_t>(y)] =
        e_eps / denom;
  }
  return m;
}

// Candidate set for the prior-aware response: the k highest-prior labels,
// chosen to maximize e^eps/(e^eps+k-1) * sum of their prior mass (the
// probability that the output equals the true label). Ties go to the
// smaller k; ties among equal priors go to the smaller label.
struct TopKSelection {
  int k = 0;
  LabelSet y_k;
  double objective = 0.0;
};

inline TopKSelection choose_topk(const PriorDistribution& prior,
                                 double epsilon) {
  if (!prior.valid()) throw std::invalid_argument("invalid prior");
  const int class_count = prior.class_count();
  std::vector<int> order(static_cast<std::size_t>(class_count));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return prior.probs[static_cast<std::size_t>(a)] >
           prior.probs[static_cast<std::size_t>(b)];
  });

  const double e_eps = std::exp(epsilon);
  TopKSelection best;
  double prefix = 0.0;
  for (int k = 1; k <= class_count; ++k) {
    prefix += prior.probs[static_cast<std::size_t>(order[k - 1])];
    const double objective = e_eps / (e_eps + k - 1.0) * prefix;
    if (k == 1 || objective > best.objective) {
      best.k = k;
      best.objective = objective;
    }
  }
  best.y_k = canonicalize_set(
      LabelSet(order.begin(), order.begin() + best.k));
  return best;
}

// Prior-aware response restricted to the top-k candidate set. Rows for
// labels outside the set are uniform over it; the output space carries only
// the candidate labels.
inline MechanismMatrix build_rrwithprior_matrix(const PriorDistribution& prior,
                                                double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::kNonpositiveEpsilon, "epsilon must be positive");
  }
  const TopKSelection sel = choose_topk(prior, epsilon);
  const double e_eps = std::exp(epsilon);
  const double denom = e_eps + static_cast<double>(sel.k) - 1.0;

  MechanismMatrix m;
  m.input_labels = LabelSpace(prior.class_count()).labels();
  m.output_labels = sel.y_k;
  m.p.assign(m.input_labels.size(),
             std::vector<double>(m.output_labels.size(), 0.0));
  for (std::size_t r = 0; r < m.input_labels.size(); ++r) {
    const int y = m.input_labels[r];
    if (set_contains(sel.y_k, y)) {
      for (std::size_t c = 0; c < m.output_labels.size(); ++c) {
        m.p[r][c] = (m.output_labels[c] == y) ? e_eps / denom : 1.0 / denom;
      }
    } else {
      std::fill(m.p[r].begin(), m.p[r].end(), 1.0 / sel.k);
    }
  }
  return m;
}

// Equal-width binning of the canonical value grid {0..value_count-1}.
// Each value maps to its bin's representative, the member closest to the
// bin middle (lower on ties).
struct BinMap {
  std::vector<int> representative_of;  // per value
  LabelSet representatives;            // sorted distinct
};

inline BinMap make_equal_width_bins(int value_count, int bin_count) {
  if (bin_count < 1 || value_count < 1 || bin_count > value_count) {
    throw Error(ErrorCode::kEmptyBins,
                "need 1 <= bin_count <= value_count so every bin is hit");
  }
  BinMap map;
  map.representative_of.resize(static_cast<std::size_t>(value_count));
  for (int bin = 0; bin < bin_count; ++bin) {
    const int lo = static_cast<int>(
        (static_cast<long long>(bin) * value_count + bin_count - 1) /
        bin_count);
    const int hi = static_cast<int>(
        ((static_cast<long long>(bin) + 1) * value_count + bin_count - 1) /
            bin_count -
        1);
    const int rep = lo + (hi - lo) / 2;
    map.representatives.push_back(rep);
    for (int v = lo; v <= hi; ++v) {
      map.representative_of[static_cast<std::size_t>(v)] = rep;
    }
  }
  map.representatives = canonicalize_set(map.representatives);
  return map;
}

// Shared parameter block for the two regression-flavored mechanisms.
// interval and delta_width drive the continuous density; value_count,
// bin_count and bin_map drive the binned matrix. gamma_rp is the density
// normalizer 2*delta + e^{-eps}(A2 - A1).
struct RegressionMechanismConfig {
  double interval_lo = 0.0;
  double interval_hi = 1.0;
  double delta_width = 0.1;
  double epsilon = 1.0;
  int value_count = 0;
  int bin_count = 0;
  BinMap bin_map;
  double gamma_rp = 0.0;
};

inline RegressionMechanismConfig make_rpwithprior_config(double interval_lo,
                                                         double interval_hi,
                                                         double delta_width,
                                                         double epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kNonpositiveEpsilon, "epsilon must be positive");
  }
  if (!(interval_lo < interval_hi) || !(delta_width > 0.0)) {
    throw std::invalid_argument("need interval_lo < interval_hi, delta > 0");
  }
  RegressionMechanismConfig config;
  config.interval_lo = interval_lo;
  config.interval_hi = interval_hi;
  config.delta_width = delta_width;
  config.epsilon = epsilon;
  config.gamma_rp = 2.0 * delta_width +
                    std::exp(-epsilon) * (interval_hi - interval_lo);
  return config;
}

inline RegressionMechanismConfig make_rronbins_config(int value_count,
                                                      int bin_count,
                                                      double epsilon) {
  if (!(epsilon > 0.0)) {
    throw Error(ErrorCode::kNonpositiveEpsilon, "epsilon must be positive");
  }
  RegressionMechanismConfig config;
  config.value_count = value_count;
  config.bin_count = bin_count;
  config.bin_map = make_equal_width_bins(value_count, bin_count);
  config.epsilon = epsilon;
  // Interval fields only matter for the continuous density; keep them
  // consistent with the grid.
  config.interval_lo = 0.0;
  config.interval_hi = std::max(1.0, static_cast<double>(value_count - 1));
  config.delta_width = 0.5;
  config.gamma_rp = 2.0 * config.delta_width +
                    std::exp(-epsilon) *
                        (config.interval_hi - config.interval_lo);
  return config;
}

// Randomized response over bin representatives: e^eps/(e^eps+R-1) on
// Phi(y), 1/(e^eps+R-1) on the other R-1 representatives.
inline MechanismMatrix build_rronbins_matrix(
    const RegressionMechanismConfig& config) {
  if (config.bin_count < 1 ||
      config.bin_map.representative_of.size() !=
          static_cast<std::size_t>(config.value_count) ||
      config.bin_map.representatives.empty()) {
    throw Error(ErrorCode::kEmptyBins, "config carries no usable bin map");
  }
  const double e_eps = std::exp(config.epsilon);
  const double denom =
      e_eps + static_cast<double>(config.bin_map.representatives.size()) - 1.0;

  MechanismMatrix m;
  m.input_labels = LabelSpace(config.value_count).labels();
  m.output_labels = config.bin_map.representatives;
  m.p.assign(m.input_labels.size(),
             std::vector<double>(m.output_labels.size(), 1.0 / denom));
  for (std::size_t r = 0; r < m.input_labels.size(); ++r) {
    const int rep = config.bin_map.representative_of[r];
    m.p[r][static_cast<std::size_t>(m.col_of(rep))] = e_eps / denom;
  }
  return m;
}

// Piecewise-constant conditional density of the interval mechanism.
// For y inside [A1, A2] the density is 1/gamma_rp on N_y = [y-d, y+d],
// e^{-eps}/gamma_rp on the rest of N_I = [A1-d, A2+d], zero outside.
// For y outside the interval the output is uniform over N_I.
inline double rpwithprior_density(double y, double y_tilde,
                                  const RegressionMechanismConfig& config) {
  const double d = config.delta_width;
  const double ni_lo = config.interval_lo - d;
  const double ni_hi = config.interval_hi + d;
  if (y_tilde < ni_lo || y_tilde > ni_hi) return 0.0;
  if (y >= config.interval_lo && y <= config.interval_hi) {
    if (y_tilde >= y - d && y_tilde <= y + d) return 1.0 / config.gamma_rp;
    return std::exp(-config.epsilon) / config.gamma_rp;
  }
  return 1.0 / (2.0 * d + (config.interval_hi - config.interval_lo));
}

// Two-stage draw from the density above: pick the region by its mass, then
// a uniform position inside it. N_y is clipped to N_I, a no-op for y in
// the interval but kept for boundary safety.
inline double sample_rpwithprior(double y,
                                 const RegressionMechanismConfig& config,
                                 RandomStream& stream) {
  const double d = config.delta_width;
  const double ni_lo = config.interval_lo - d;
  const double ni_hi = config.interval_hi + d;
  if (y < config.interval_lo || y > config.interval_hi) {
    return ni_lo + stream.uniform01() * (ni_hi - ni_lo);
  }
  const double ny_lo = std::max(y - d, ni_lo);
  const double ny_hi = std::min(y + d, ni_hi);
  const double near_mass = (ny_hi - ny_lo) / config.gamma_rp;
  if (stream.uniform01() < near_mass) {
    return ny_lo + stream.uniform01() * (ny_hi - ny_lo);
  }
  const double left_len = ny_lo - ni_lo;
  const double right_len = ni_hi - ny_hi;
  const double v = stream.uniform01() * (left_len + right_len);
  return v < left_len ? ni_lo + v : ny_hi + (v - left_len);
}

}  // namespace blockrr

#endif  // BLOCKRR_MECHANISMS_HPP_
