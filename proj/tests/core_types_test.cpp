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

#include <cmath>

#include <gtest/gtest.h>

#include "blockrr/blockrr.hpp"
#include "test_oracles.hpp"

namespace blockrr {
namespace {

PartitionConfig k4_reference_config(int l = 1) {
  LabelSet delta;
  for (int y = 0; y < l; ++y) delta.push_back(y);
  return assemble_config(LabelSpace(4), {0, 1}, {2, 3}, {0, 1, 2, 3}, delta,
                         l, std::log(2.0), identity_mapping(4));
}

TEST(LabelSpace, RejectsNonpositiveClassCount) {
  EXPECT_THROW(LabelSpace(0), std::invalid_argument);
  EXPECT_EQ(LabelSpace(3).labels(), (LabelSet{0, 1, 2}));
}

TEST(BlockMapping, EnforcesConstantCardinality) {
  EXPECT_THROW(BlockMapping(2, {{0}, {0, 1}}), std::invalid_argument);
  EXPECT_THROW(BlockMapping(2, {{0}, {}}), std::invalid_argument);
  EXPECT_THROW(BlockMapping(2, {{0}, {5}}), std::invalid_argument);
  EXPECT_TRUE(identity_mapping(4).is_identity());
  EXPECT_EQ(tiled_block_mapping(4, 2).block(3), (LabelSet{2, 3}));
}

TEST(DeriveOutputPartition, IdentityMapping) {
  auto [st1, st2] = derive_output_partition({0, 1}, {2, 3}, {0, 1, 2, 3},
                                            identity_mapping(4));
  EXPECT_EQ(st1, (LabelSet{0, 1}));
  EXPECT_EQ(st2, (LabelSet{2, 3}));
}

TEST(DeriveOutputPartition, FullMajority) {
  auto [st1, st2] = derive_output_partition({0, 1, 2, 3}, {}, {0, 1, 2, 3},
                                            identity_mapping(4));
  EXPECT_EQ(st1, (LabelSet{0, 1, 2, 3}));
  EXPECT_TRUE(st2.empty());
}

TEST(DeriveOutputPartition, CyclicBlocksOfWidthTwo) {
  // B(y) = {y, (y+1) mod 4}, s1 = {0}: the image of s1 is {0, 1}.
  std::vector<LabelSet> image{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  auto [st1, st2] = derive_output_partition({0}, {1, 2, 3}, {0, 1, 2, 3},
                                            BlockMapping(4, image));
  EXPECT_EQ(st1, (LabelSet{0, 1}));
  EXPECT_EQ(st2, (LabelSet{2, 3}));
}

TEST(ValidateConfig, AcceptsReferenceConfig) {
  EXPECT_TRUE(validate_config(k4_reference_config()).ok());
}

TEST(ValidateConfig, AcceptsPlainRrShape) {
  const LabelSet all = LabelSpace(10).labels();
  const PartitionConfig config = assemble_config(
      LabelSpace(10), all, {}, all, {}, 0, 1.0, identity_mapping(10));
  EXPECT_TRUE(validate_config(config).ok());
}

TEST(ValidateConfig, RejectsOverlappingPartition) {
  PartitionConfig config = k4_reference_config();
  config.s1 = {0};
  config.s2 = {0, 1, 2, 3};
  const ValidationResult result = validate_config(config);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.error, ErrorCode::kOverlappingPartition);
}

TEST(ValidateConfig, RejectsIncompleteCover) {
  PartitionConfig config = k4_reference_config();
  config.s2 = {2};  // label 3 unassigned
  const ValidationResult result = validate_config(config);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.error, ErrorCode::kOverlappingPartition);
}

TEST(ValidateConfig, RejectsNonpositiveEpsilon) {
  PartitionConfig config = k4_reference_config();
  config.epsilon = 0.0;
  const ValidationResult result = validate_config(config);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.error, ErrorCode::kNonpositiveEpsilon);
}

TEST(ValidateConfig, RejectsStaleOutputPartition) {
  PartitionConfig config = k4_reference_config();
  config.s_tilde1 = {0, 1, 2};
  config.s_tilde2 = {3};
  const ValidationResult result = validate_config(config);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.error, ErrorCode::kInconsistentOutputPartition);
}

TEST(ValidateConfig, RejectsDeltaOutsideSTilde1) {
  PartitionConfig config = k4_reference_config();
  config.delta = {2};  // lives in s_tilde2
  const ValidationResult result = validate_config(config);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.error, ErrorCode::kDeltaOutOfRange);
}

TEST(ValidateConfig, RejectsDeltaSizeMismatch) {
  PartitionConfig config = k4_reference_config();
  config.l = 2;  // delta still has one element
  const ValidationResult result = validate_config(config);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.error, ErrorCode::kDeltaOutOfRange);
}

TEST(ValidateConfig, RejectsEmptyOutputSideWithSmallL) {
  // s2 nonempty, s_tilde2 empty, l < |s_tilde1|: the two row equations
  // cannot hold together for positive epsilon.
  const PartitionConfig config = assemble_config(
      LabelSpace(4), {0, 1}, {2, 3}, {0, 1}, {0}, 1, 1.0, identity_mapping(4));
  const ValidationResult result = validate_config(config);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.error, ErrorCode::kEmptyOutputWithNonemptySource);
}

TEST(ValidateConfig, AcceptsTruncatedOutputAtFullDelta) {
  const PartitionConfig config = assemble_config(
      LabelSpace(4), {0, 1}, {2, 3}, {0, 1}, {0, 1}, 2, 1.0,
      identity_mapping(4));
  EXPECT_TRUE(validate_config(config).ok());
}

TEST(ValidateConfig, RejectsStraddlingBlocks) {
  // B(1) = {1, 2} crosses from s_tilde1 into s_tilde2; minority rows
  // could not normalize.
  std::vector<LabelSet> image{{0, 1}, {1, 2}, {2, 3}, {0, 3}};
  const PartitionConfig config =
      assemble_config(LabelSpace(4), {0}, {1, 2, 3}, {0, 1, 2, 3}, {}, 0, 1.0,
                      BlockMapping(4, image));
  const ValidationResult result = validate_config(config);
  ASSERT_FALSE(result.ok());
  EXPECT_EQ(*result.error, ErrorCode::kInconsistentOutputPartition);
}

TEST(ValidateConfig, AcceptsEveryUnificationShape) {
  // Mirrors the documented parameter shapes on k = 2..10 at several
  // budgets, including the bin shape with non-divisible widths.
  for (int k = 2; k <= 10; ++k) {
    for (double epsilon : {0.5, 1.0, 2.0, 4.0}) {
      EXPECT_TRUE(validate_config(unification_rr_config(k, epsilon)).ok());

      LabelSet s1;
      for (int y = 0; y < (k + 1) / 2; ++y) s1.push_back(y);
      EXPECT_TRUE(
          validate_config(unification_rr_split_config(k, epsilon, s1)).ok());

      blockrr::RandomStream stream(1000 + k);
      const PriorDistribution prior = blockrr_test::random_prior(stream, k);
      EXPECT_TRUE(
          validate_config(unification_rrwithprior_config(prior, epsilon))
              .ok());

      for (int bins : {1, 2, k}) {
        if (bins > k) continue;
        const RegressionMechanismConfig rc =
            make_rronbins_config(k, bins, epsilon);
        EXPECT_TRUE(validate_config(unification_rronbins_config(rc)).ok());
        if (bins >= 2) {
          EXPECT_TRUE(
              validate_config(unification_rronbins_split_config(rc, bins / 2))
                  .ok());
        }
      }
    }
  }
}

TEST(ValidateConfig, PartitionClosureOnRandomConfigs) {
  RandomStream stream(7);
  for (int trial = 0; trial < 300; ++trial) {
    const PartitionConfig config = blockrr_test::random_valid_config(stream);
    ASSERT_TRUE(validate_config(config).ok());
    EXPECT_EQ(set_union_of(config.s_tilde1, config.s_tilde2), config.s_tilde);
    EXPECT_TRUE(set_intersection_of(config.s_tilde1, config.s_tilde2).empty());
  }
}

TEST(ConfigJson, RoundTripsThroughSchema) {
  const PartitionConfig config = k4_reference_config(2);
  const nlohmann::json j = config_to_json(config);
  EXPECT_EQ(j.at("k").get<int>(), 4);
  EXPECT_EQ(j.at("s1").get<LabelSet>(), (LabelSet{0, 1}));
  EXPECT_EQ(j.at("mapping").at("2").get<LabelSet>(), (LabelSet{2}));

  const PartitionConfig restored = config_from_json(j);
  EXPECT_TRUE(validate_config(restored).ok());
  EXPECT_EQ(restored.s_tilde1, config.s_tilde1);
  EXPECT_EQ(restored.s_tilde2, config.s_tilde2);
  EXPECT_EQ(restored.delta, config.delta);
  EXPECT_DOUBLE_EQ(restored.epsilon, config.epsilon);
}

TEST(PriorDistribution, ValidatesMassAndSign) {
  EXPECT_TRUE(make_prior({0.25, 0.75}).valid());
  EXPECT_THROW(make_prior({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(make_prior({1.1, -0.1}), std::invalid_argument);
  EXPECT_EQ(prior_from_counts({3, 1}).probs[0], 0.75);
}

TEST(MatrixJson, RoundTripsBitExactly) {
  RandomStream stream(61);
  for (int trial = 0; trial < 25; ++trial) {
    const PartitionConfig config = blockrr_test::random_valid_config(stream);
    const MechanismMatrix m = build_blockrr_matrix(config);
    const MechanismMatrix back =
        matrix_from_json(nlohmann::json::parse(matrix_to_json(m).dump()));
    EXPECT_EQ(back.input_labels, m.input_labels);
    EXPECT_EQ(back.output_labels, m.output_labels);
    EXPECT_EQ(back.p, m.p);  // serialized reals must round-trip exactly
  }
}

TEST(MechanismMatrix, DetectsMalformations) {
  MechanismMatrix m;
  m.input_labels = {0, 1};
  m.output_labels = {0, 1};
  m.p = {{0.5, 0.5}, {0.7, 0.2}};
  EXPECT_FALSE(m.well_formed());
  m.p[1][1] = 0.3;
  EXPECT_TRUE(m.well_formed());
  m.p[0][0] = -0.5;
  EXPECT_FALSE(m.well_formed());
}

}  // namespace
}  // namespace blockrr
