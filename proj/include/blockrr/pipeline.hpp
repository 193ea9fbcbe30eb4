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

#ifndef BLOCKRR_PIPELINE_HPP_
#define BLOCKRR_PIPELINE_HPP_

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "blockrr/dataset.hpp"
#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"
#include "blockrr/laplace.hpp"
#include "blockrr/matrix.hpp"
#include "blockrr/mechanisms.hpp"
#include "blockrr/partition_config.hpp"
#include "blockrr/prior.hpp"
#include "blockrr/random.hpp"
#include "blockrr/version.hpp"
#include "blockrr/weights.hpp"

namespace blockrr {

// Child-stream ids of the pipeline's top-level stream. The split, the prior
// noise and the per-record draws never share randomness, so each stage is a
// pure function of (its inputs, the seed).
inline constexpr std::uint64_t kSplitStreamId = 0;
inline constexpr std::uint64_t kPriorStreamId = 1;
inline constexpr std::uint64_t kRandomizeStreamId = 2;

struct PipelineConfig {
  PartitionConfig partition;
  PriorDistribution prior;
  double sigma = 0.0;
  double split_fraction = 0.0;
};

struct PipelineResult {
  PipelineConfig config;
  LabelDataset d1;  // prior-estimation part, never randomized
  LabelDataset d2;  // training part, the randomization target
  int l_requested = 0;
  int l_effective = 0;
  bool degraded_to_rr = false;  // s2 came out empty
  HistogramEstimate histogram;
  bool prior_fell_back_to_uniform = false;
};

// Derives the full mechanism configuration from data: splits the dataset,
// estimates the prior privately on the first part, builds the weight
// matrix, splits the label space, picks delta, and assembles the config
// the second part will be randomized with.
//
// Both stages spend the full budget epsilon; they act on disjoint records,
// so the composition keeps the epsilon guarantee.
//
// The requested l is clamped to |s_tilde1| and ignored entirely when the
// noisy prior leaves s2 empty, in which case the mechanism reduces to
// plain randomized response over s_tilde.
inline PipelineResult build_pipeline(const LabelDataset& dataset,
                                     double epsilon, double sigma, int l,
                                     const BlockMapping& mapping,
                                     double split_fraction,
                                     const RandomStream& stream) {
  if (dataset.empty()) {
    throw Error(ErrorCode::kEmptySplit, "dataset is empty");
  }
  if (!(split_fraction > 0.0) || !(split_fraction < 1.0)) {
    throw std::invalid_argument("split_fraction must lie in (0, 1)");
  }
  const int k = mapping.class_count();
  const std::size_t n = dataset.size();
  const std::size_t n1 = static_cast<std::size_t>(
      std::llround(split_fraction * static_cast<double>(n)));
  if (n1 == 0 || n1 >= n) {
    throw Error(ErrorCode::kEmptySplit,
                "split leaves an empty part (n=" + std::to_string(n) +
                    ", n1=" + std::to_string(n1) + ")");
  }

  // Seeded shuffle of record positions, then a prefix split.
  std::vector<std::size_t> positions(n);
  std::iota(positions.begin(), positions.end(), 0);
  RandomStream split_stream = stream.substream(kSplitStreamId);
  seeded_shuffle(positions, split_stream);

  PipelineResult result;
  result.l_requested = l;
  for (std::size_t i = 0; i < n; ++i) {
    const LabelRecord& r = dataset.records[positions[i]];
    (i < n1 ? result.d1 : result.d2).records.push_back(r);
  }

  std::vector<int> d1_labels;
  d1_labels.reserve(n1);
  for (const LabelRecord& r : result.d1.records) d1_labels.push_back(r.label);
  RandomStream prior_stream = stream.substream(kPriorStreamId);
  PriorEstimate estimate =
      estimate_prior_detailed(d1_labels, epsilon, k, prior_stream);
  result.histogram = std::move(estimate.histogram);
  result.prior_fell_back_to_uniform = estimate.fell_back_to_uniform;

  const LabelSet s_tilde = LabelSpace(k).labels();
  const WeightMatrix weights =
      build_weight_matrix(estimate.prior, sigma, s_tilde);
  auto [s1, s2] = split_by_weights(weights);
  auto [s_tilde1, s_tilde2] =
      derive_output_partition(s1, s2, s_tilde, mapping);

  result.degraded_to_rr = s2.empty();
  result.l_effective =
      result.degraded_to_rr
          ? 0
          : std::min(l, static_cast<int>(s_tilde1.size()));
  const LabelSet delta =
      select_delta(estimate.prior, s_tilde1, result.l_effective);

  result.config.partition =
      assemble_config(LabelSpace(k), std::move(s1), std::move(s2), s_tilde,
                      delta, result.l_effective, epsilon, mapping);
  result.config.prior = std::move(estimate.prior);
  result.config.sigma = sigma;
  result.config.split_fraction = split_fraction;

  const ValidationResult validation = validate_config(result.config.partition);
  if (!validation.ok()) {
    throw Error(*validation.error, "pipeline produced an invalid config: " +
                                       validation.detail);
  }
  return result;
}

// Replaces every label of d2 by an independent draw from its matrix row.
// Each record uses the child stream keyed by its id, so the assignment
// id -> privatized label depends only on (seed, id) and survives any
// reordering or parallel processing of the records.
inline RandomizedDataset randomize_dataset(const LabelDataset& d2,
                                           const PartitionConfig& config,
                                           const RandomStream& stream) {
  const MechanismMatrix matrix = build_blockrr_matrix(config);
  RandomizedDataset out;
  out.records.reserve(d2.size());
  for (std::size_t i = 0; i < d2.records.size(); ++i) {
    const LabelRecord& r = d2.records[i];
    RandomStream record_stream =
        stream.substream(static_cast<std::uint64_t>(r.id));
    const int privatized = sample_label(r.label, matrix, record_stream);
    out.records.push_back({r.id, privatized, static_cast<long long>(i)});
  }
  return out;
}

// Audit record of one pipeline run: seed, budget, hyperparameters, split
// sizes and the derived partition.
inline nlohmann::json make_run_manifest(const PipelineResult& result,
                                        std::uint64_t seed,
                                        const nlohmann::json& flags) {
  return nlohmann::json{
      {"library_version", kVersion},
      {"seed", seed},
      {"epsilon", result.config.partition.epsilon},
      {"sigma", result.config.sigma},
      {"l_requested", result.l_requested},
      {"l_effective", result.l_effective},
      {"split_fraction", result.config.split_fraction},
      {"d1_size", result.d1.size()},
      {"d2_size", result.d2.size()},
      {"degraded_to_rr", result.degraded_to_rr},
      {"prior_fell_back_to_uniform", result.prior_fell_back_to_uniform},
      {"prior", prior_to_json(result.config.prior)},
      {"partition", config_to_json(result.config.partition)},
      {"flags", flags}};
}

}  // namespace blockrr

#endif  // BLOCKRR_PIPELINE_HPP_
