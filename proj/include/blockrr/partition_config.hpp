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

#ifndef BLOCKRR_PARTITION_CONFIG_HPP_
#define BLOCKRR_PARTITION_CONFIG_HPP_

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "blockrr/error.hpp"
#include "blockrr/label_space.hpp"

namespace blockrr {

// Full mechanism configuration: the S1/S2 split of the label space, the
// privatized set S-tilde with its induced split, the boosted subset Delta,
// the privacy budget and the candidate mapping B.
struct PartitionConfig {
  LabelSpace space;
  LabelSet s1;
  LabelSet s2;
  LabelSet s_tilde;
  LabelSet s_tilde1;
  LabelSet s_tilde2;
  LabelSet delta;
  int l = 0;
  double epsilon = 0.0;
  BlockMapping mapping;
};

// S-tilde-1 is the part of S-tilde reachable from S1 through B; S-tilde-2
// is the rest.
inline std::pair<LabelSet, LabelSet> derive_output_partition(
    const LabelSet& s1, const LabelSet& /*s2*/, const LabelSet& s_tilde,
    const BlockMapping& mapping) {
  const LabelSet s_tilde1 = set_intersection_of(s_tilde, mapping.image_of(s1));
  return {s_tilde1, set_difference_of(s_tilde, s_tilde1)};
}

// Builds a config, deriving the output-side partition from (s1, s_tilde, B).
inline PartitionConfig assemble_config(LabelSpace space, LabelSet s1,
                                       LabelSet s2, LabelSet s_tilde,
                                       LabelSet delta, int l, double epsilon,
                                       BlockMapping mapping) {
  auto [s_tilde1, s_tilde2] = derive_output_partition(s1, s2, s_tilde, mapping);
  return PartitionConfig{space,
                         std::move(s1),
                         std::move(s2),
                         std::move(s_tilde),
                         std::move(s_tilde1),
                         std::move(s_tilde2),
                         std::move(delta),
                         l,
                         epsilon,
                         std::move(mapping)};
}

struct ValidationResult {
  std::optional<ErrorCode> error;
  std::string detail;

  bool ok() const { return !error.has_value(); }

  static ValidationResult pass() { return {}; }
  static ValidationResult fail(ErrorCode code, std::string detail) {
    return {code, std::move(detail)};
  }
};

// Checks every config invariant and reports the first violation by name.
//
// Beyond the set identities, the mapping must place blocks so that each
// row of the transition matrix can normalize: B(y) inside S-tilde-1 for
// y in S1, and inside S-tilde-2 for y in S2 whenever S-tilde-2 is
// nonempty. The degenerate shape S2 != empty, S-tilde-2 = empty is
// accepted only when the two row equations are simultaneously
// satisfiable, which for epsilon > 0 means l = |S-tilde-1| (minority rows
// collapse to the uniform distribution over Delta = S-tilde-1).
//
// Membership y in B(y) is required for every label that is itself a
// possible output (y in S-tilde). Labels outside S-tilde cannot contain
// themselves when B maps into S-tilde, as with bin representatives or a
// truncated output set, so they are exempt.
inline ValidationResult validate_config(const PartitionConfig& config) {
  if (!(config.epsilon > 0.0) || !std::isfinite(config.epsilon)) {
    return ValidationResult::fail(ErrorCode::kNonpositiveEpsilon,
                                  "epsilon must be positive and finite");
  }

  const LabelSet all = config.space.labels();
  if (!is_canonical_set(config.s1) || !is_canonical_set(config.s2) ||
      !set_intersection_of(config.s1, config.s2).empty() ||
      set_union_of(config.s1, config.s2) != all) {
    return ValidationResult::fail(
        ErrorCode::kOverlappingPartition,
        "s1 and s2 must partition the label space");
  }

  if (config.s_tilde.empty() || !is_canonical_set(config.s_tilde) ||
      !is_subset_of(config.s_tilde, all)) {
    return ValidationResult::fail(
        ErrorCode::kEmptyOutputWithNonemptySource,
        "s_tilde must be a nonempty subset of the label space");
  }

  auto [expect1, expect2] = derive_output_partition(
      config.s1, config.s2, config.s_tilde, config.mapping);
  if (config.s_tilde1 != expect1 || config.s_tilde2 != expect2) {
    return ValidationResult::fail(
        ErrorCode::kInconsistentOutputPartition,
        "s_tilde1/s_tilde2 do not match the derived output partition");
  }

  if (config.mapping.class_count() != config.space.k) {
    return ValidationResult::fail(ErrorCode::kInconsistentOutputPartition,
                                  "mapping covers a different label space");
  }

  // Self-membership for output labels.
  for (int y : config.s_tilde) {
    if (!set_contains(config.mapping.block(y), y)) {
      return ValidationResult::fail(
          ErrorCode::kInconsistentOutputPartition,
          "label " + std::to_string(y) + " missing from its own block");
    }
  }

  // Block placement for majority rows.
  for (int y : config.s1) {
    if (!is_subset_of(config.mapping.block(y), config.s_tilde)) {
      return ValidationResult::fail(
          ErrorCode::kInconsistentOutputPartition,
          "B(" + std::to_string(y) + ") leaves s_tilde for a majority label");
    }
  }

  if (static_cast<int>(config.delta.size()) != config.l ||
      config.l > static_cast<int>(config.s_tilde1.size()) || config.l < 0 ||
      !is_subset_of(config.delta, config.s_tilde1)) {
    return ValidationResult::fail(
        ErrorCode::kDeltaOutOfRange,
        "delta must be an l-subset of s_tilde1 with 0 <= l <= |s_tilde1|");
  }

  if (!config.s1.empty() && config.s_tilde1.empty()) {
    return ValidationResult::fail(
        ErrorCode::kEmptyOutputWithNonemptySource,
        "s1 nonempty but no output labels are reachable from it");
  }

  // The normalization system must admit nonnegative weights. Algebraically
  // guaranteed for epsilon > 0 and nonempty blocks; checked to keep the
  // contract explicit.
  {
    const double a = (std::exp(config.epsilon) - 1.0) *
                     config.mapping.block_size();
    const double st = static_cast<double>(config.s_tilde.size());
    const double st1 = static_cast<double>(config.s_tilde1.size());
    const double st2 = static_cast<double>(config.s_tilde2.size());
    const double l = static_cast<double>(config.l);
    const double beta1 = a + l * st2 / st;
    const double gamma1 = (a + l) - (l / st) * (a + st1);
    const double kappa = (a + st1) * (a + st2) - (st1 - l) * st2;
    if (!(kappa > 0.0) || beta1 < 0.0 || gamma1 < 0.0) {
      return ValidationResult::fail(
          ErrorCode::kEmptyOutputWithNonemptySource,
          "system does not admit nonnegative block weights");
    }
  }

  if (!config.s2.empty()) {
    if (config.s_tilde2.empty()) {
      // Two equations, one unknown: satisfiable only at l = |s_tilde1|
      // for positive epsilon. Checked via the row-2 residual under the
      // row-1 solution.
      const double a = (std::exp(config.epsilon) - 1.0) *
                       config.mapping.block_size();
      const double st = static_cast<double>(config.s_tilde.size());
      const double st1 = static_cast<double>(config.s_tilde1.size());
      const double beta = 1.0 / (a + st1);
      const double residual =
          std::abs((st1 - config.l) * beta - (1.0 - config.l / st));
      if (residual > 1e-12) {
        return ValidationResult::fail(
            ErrorCode::kEmptyOutputWithNonemptySource,
            "s2 nonempty with empty s_tilde2 requires l = |s_tilde1|");
      }
    } else {
      for (int y : config.s2) {
        if (!is_subset_of(config.mapping.block(y), config.s_tilde2)) {
          return ValidationResult::fail(
              ErrorCode::kInconsistentOutputPartition,
              "B(" + std::to_string(y) +
                  ") leaves s_tilde2 for a minority label");
        }
      }
    }
  }

  return ValidationResult::pass();
}

// Config JSON: arrays sorted ascending, mapping keyed by decimal label.
// The derived fields s_tilde1/s_tilde2 are recomputed on load.
inline nlohmann::json config_to_json(const PartitionConfig& config) {
  nlohmann::json mapping = nlohmann::json::object();
  for (int y = 0; y < config.space.k; ++y) {
    mapping[std::to_string(y)] = config.mapping.block(y);
  }
  return nlohmann::json{{"epsilon", config.epsilon},
                        {"k", config.space.k},
                        {"s1", config.s1},
                        {"s2", config.s2},
                        {"s_tilde", config.s_tilde},
                        {"delta", config.delta},
                        {"l", config.l},
                        {"mapping", mapping}};
}

inline PartitionConfig config_from_json(const nlohmann::json& j) {
  const int k = j.at("k").get<int>();
  std::vector<LabelSet> image(static_cast<std::size_t>(k));
  const auto& mapping_json = j.at("mapping");
  for (int y = 0; y < k; ++y) {
    image[static_cast<std::size_t>(y)] =
        mapping_json.at(std::to_string(y)).get<LabelSet>();
  }
  return assemble_config(LabelSpace(k), j.at("s1").get<LabelSet>(),
                         j.at("s2").get<LabelSet>(),
                         j.at("s_tilde").get<LabelSet>(),
                         j.at("delta").get<LabelSet>(), j.at("l").get<int>(),
                         j.at("epsilon").get<double>(),
                         BlockMapping(k, std::move(image)));
}

}  // namespace blockrr

#endif  // BLOCKRR_PARTITION_CONFIG_HPP_
