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

using blockrr_test::random_prior;
using blockrr_test::random_valid_config;
using blockrr_test::rational_beta_gamma;
using blockrr_test::Rational;
using blockrr_test::row1_residual;
using blockrr_test::row2_residual;
using blockrr_test::solve_rows_independent;
using blockrr_test::to_double;

PartitionConfig k4_config(int l) {
  LabelSet delta;
  for (int y = 0; y < l; ++y) delta.push_back(y);
  return assemble_config(LabelSpace(4), {0, 1}, {2, 3}, {0, 1, 2, 3}, delta,
                         l, std::log(2.0), identity_mapping(4));
}

TEST(SolveBetaGamma, MatchesIndependentSolveOnReferenceSweep) {
  // Expected values derived by solving the two row equations exactly for
  // e^eps = 2: (1/5, 1/5), (3/14, 5/28), (2/9, 1/6).
  const double expected_beta[] = {1.0 / 5, 3.0 / 14, 2.0 / 9};
  const double expected_gamma[] = {1.0 / 5, 5.0 / 28, 1.0 / 6};
  for (int l = 0; l <= 2; ++l) {
    const PartitionConfig config = k4_config(l);
    const BetaGamma bg = solve_beta_gamma(config);
    EXPECT_NEAR(bg.beta, expected_beta[l], 1e-15) << "l=" << l;
    EXPECT_NEAR(bg.gamma, expected_gamma[l], 1e-15) << "l=" << l;

    const auto [beta_ind, gamma_ind] = solve_rows_independent(config);
    EXPECT_NEAR(bg.beta, beta_ind, 1e-15);
    EXPECT_NEAR(bg.gamma, gamma_ind, 1e-15);

    const auto exact = rational_beta_gamma(Rational(2), 1, 2, 2, l);
    EXPECT_NEAR(bg.beta, to_double(exact.beta), 1e-16);
    EXPECT_NEAR(bg.gamma, to_double(exact.gamma), 1e-16);
  }
}

TEST(SolveBetaGamma, SatisfiesBothRowEquationsOnRandomConfigs) {
  RandomStream stream(11);
  for (int trial = 0; trial < 400; ++trial) {
    const PartitionConfig config = random_valid_config(stream);
    const BetaGamma bg = solve_beta_gamma(config);
    EXPECT_LE(row1_residual(config, bg.beta, bg.gamma), 1e-12);
    if (!config.s_tilde2.empty() || !config.s2.empty()) {
      EXPECT_LE(row2_residual(config, bg.beta, bg.gamma), 1e-12);
    }
    EXPECT_GE(bg.beta, 0.0);
    EXPECT_GE(bg.gamma, 0.0);
  }
}

TEST(SolveBetaGamma, KappaMatchesQuadraticExpansion) {
  // kappa = a^2 + a|St| + l|St2| with a = (e^eps - 1)|B(y)|.
  RandomStream stream(13);
  for (int trial = 0; trial < 400; ++trial) {
    const PartitionConfig config = random_valid_config(stream);
    const BetaGamma bg = solve_beta_gamma(config);
    const double a =
        (std::exp(config.epsilon) - 1.0) * config.mapping.block_size();
    const double expansion =
        a * a + a * static_cast<double>(config.s_tilde.size()) +
        static_cast<double>(config.l) *
            static_cast<double>(config.s_tilde2.size());
    EXPECT_GT(bg.kappa, 0.0);
    EXPECT_LE(std::abs(bg.kappa - expansion),
              1e-12 * std::max(1.0, std::abs(expansion)));
  }
}

TEST(SolveBetaGamma, SandwichAroundUniformMass) {
  // beta <= 1/|s_tilde| <= e^eps * beta on every valid config.
  RandomStream stream(17);
  for (int trial = 0; trial < 400; ++trial) {
    const PartitionConfig config = random_valid_config(stream);
    const BetaGamma bg = solve_beta_gamma(config);
    const double uniform = 1.0 / static_cast<double>(config.s_tilde.size());
    const double slack = 1e-12 * uniform;
    EXPECT_LE(bg.beta, uniform + slack);
    EXPECT_GE(std::exp(config.epsilon) * bg.beta, uniform - slack);
  }
}

TEST(BuildBlockrrMatrix, ReferenceMinorityRow) {
  const MechanismMatrix m = build_blockrr_matrix(k4_config(1));
  const std::vector<double> expected{1.0 / 4, 3.0 / 14, 5.0 / 14, 5.0 / 28};
  for (int c = 0; c < 4; ++c) {
    EXPECT_NEAR(m.p[2][static_cast<std::size_t>(c)],
                expected[static_cast<std::size_t>(c)], 1e-15);
  }
  double sum = 0.0;
  for (double v : m.p[2]) sum += v;
  EXPECT_NEAR(sum, 1.0, 1e-15);
}

TEST(BuildBlockrrMatrix, ExactRationalCrossCheck) {
  // Every entry of the k=4, e^eps = 2, l=1 matrix as an exact fraction.
  const MechanismMatrix m = build_blockrr_matrix(k4_config(1));
  const auto exact = rational_beta_gamma(Rational(2), 1, 2, 2, 1);
  const Rational u(1, 4);
  const Rational table[4][4] = {
      {2 * exact.beta, exact.beta, exact.gamma, exact.gamma},
      {exact.beta, 2 * exact.beta, exact.gamma, exact.gamma},
      {u, exact.beta, 2 * exact.gamma, exact.gamma},
      {u, exact.beta, exact.gamma, 2 * exact.gamma}};
  for (int r = 0; r < 4; ++r) {
    Rational row_sum(0);
    for (int c = 0; c < 4; ++c) {
      EXPECT_NEAR(m.p[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                  to_double(table[r][c]), 1e-16)
          << r << "," << c;
      row_sum += table[r][c];
    }
    EXPECT_EQ(row_sum, Rational(1));
  }
}

TEST(BuildBlockrrMatrix, RowStochasticOnRandomConfigs) {
  RandomStream stream(19);
  for (int trial = 0; trial < 200; ++trial) {
    const PartitionConfig config = random_valid_config(stream);
    const MechanismMatrix m = build_blockrr_matrix(config);
    EXPECT_TRUE(m.well_formed()) << m.describe_malformation();
    // Self-representation: every emittable label keeps positive mass on
    // itself, so sampling y can always return y.
    for (int y : config.s_tilde) {
      EXPECT_GT(m.at(y, y), 0.0);
    }
  }
}

TEST(BuildBlockrrMatrix, ReducesToRrAtZeroL) {
  for (int k : {2, 5, 10}) {
    for (double epsilon : {0.5, 1.0, 4.0}) {
      LabelSet s1;
      for (int y = 0; y < k / 2; ++y) s1.push_back(y);
      const PartitionConfig config =
          unification_rr_split_config(k, epsilon, s1);
      EXPECT_LE(max_abs_diff(build_blockrr_matrix(config),
                             build_rr_matrix(k, epsilon)),
                1e-15);
    }
  }
}

TEST(BuildBlockrrMatrix, PropagatesValidationErrors) {
  PartitionConfig config = k4_config(1);
  config.epsilon = -1.0;
  try {
    build_blockrr_matrix(config);
    FAIL() << "expected validation error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonpositiveEpsilon);
  }
}

TEST(BuildRrMatrix, ClosedFormEntries) {
  EXPECT_EQ(build_rr_matrix(1, 1.0).p, (std::vector<std::vector<double>>{{1.0}}));

  const MechanismMatrix m = build_rr_matrix(2, std::log(3.0));
  EXPECT_NEAR(m.p[0][0], 0.75, 1e-15);
  EXPECT_NEAR(m.p[0][1], 0.25, 1e-15);
  EXPECT_NEAR(m.p[1][0], 0.25, 1e-15);
  EXPECT_NEAR(m.p[1][1], 0.75, 1e-15);

  const MechanismMatrix big = build_rr_matrix(10, 50.0);
  EXPECT_NEAR(big.p[3][3], 1.0, 1e-12);

  try {
    build_rr_matrix(3, 0.0);
    FAIL() << "expected NONPOSITIVE_EPSILON";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonpositiveEpsilon);
  }
}

TEST(ChooseTopK, EnumeratesAllCandidateSizes) {
  const TopKSelection skewed =
      choose_topk(make_prior({0.7, 0.2, 0.1}), std::log(2.0));
  EXPECT_EQ(skewed.k, 1);
  EXPECT_EQ(skewed.y_k, (LabelSet{0}));
  EXPECT_NEAR(skewed.objective, 0.7, 1e-15);

  const TopKSelection uniform = choose_topk(uniform_prior(10), 1.0);
  EXPECT_EQ(uniform.k, 10);

  EXPECT_EQ(choose_topk(make_prior({1.0}), 2.0).k, 1);
}

TEST(ChooseTopK, BruteForceObjectiveAgrees) {
  RandomStream stream(23);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(stream.uniform_below(9));
    const PriorDistribution prior = random_prior(stream, k);
    const double epsilon = 0.2 + stream.uniform01() * 4.0;
    const TopKSelection sel = choose_topk(prior, epsilon);

    // Recompute by explicit enumeration over sorted prefixes.
    std::vector<double> sorted = prior.probs;
    std::sort(sorted.rbegin(), sorted.rend());
    double best = -1.0;
    int best_k = 0;
    double prefix = 0.0;
    for (int kk = 1; kk <= k; ++kk) {
      prefix += sorted[static_cast<std::size_t>(kk - 1)];
      const double obj = std::exp(epsilon) / (std::exp(epsilon) + kk - 1.0) *
                         prefix;
      if (obj > best) {
        best = obj;
        best_k = kk;
      }
    }
    EXPECT_EQ(sel.k, best_k);
    EXPECT_NEAR(sel.objective, best, 1e-12);
  }
}

TEST(BuildRrWithPriorMatrix, SkewedPriorCollapsesToSingleton) {
  const MechanismMatrix m =
      build_rrwithprior_matrix(make_prior({0.7, 0.2, 0.1}), std::log(2.0));
  EXPECT_EQ(m.output_labels, (LabelSet{0}));
  for (const auto& row : m.p) {
    ASSERT_EQ(row.size(), 1u);
    EXPECT_DOUBLE_EQ(row[0], 1.0);
  }
}

TEST(BuildRrWithPriorMatrix, UniformPriorEqualsRr) {
  for (double epsilon : {0.5, 1.0, 2.0}) {
    EXPECT_LE(max_abs_diff(build_rrwithprior_matrix(uniform_prior(10), epsilon),
                           build_rr_matrix(10, epsilon)),
              1e-15);
  }
}

TEST(BuildRrWithPriorMatrix, CandidateRowsCarryClosedFormDiagonal) {
  RandomStream stream(29);
  const PriorDistribution prior = random_prior(stream, 8);
  const double epsilon = 1.3;
  const TopKSelection sel = choose_topk(prior, epsilon);
  const MechanismMatrix m = build_rrwithprior_matrix(prior, epsilon);
  const double keep = std::exp(epsilon) / (std::exp(epsilon) + sel.k - 1.0);
  for (int y : sel.y_k) {
    EXPECT_NEAR(m.at(y, y), keep, 1e-15);
  }
}

TEST(BuildRrOnBinsMatrix, ClosedFormEntries) {
  const MechanismMatrix single =
      build_rronbins_matrix(make_rronbins_config(5, 1, 1.0));
  for (const auto& row : single.p) {
    ASSERT_EQ(row.size(), 1u);
    EXPECT_DOUBLE_EQ(row[0], 1.0);
  }

  const MechanismMatrix m =
      build_rronbins_matrix(make_rronbins_config(10, 4, std::log(2.0)));
  ASSERT_EQ(m.output_labels.size(), 4u);
  for (std::size_t r = 0; r < m.p.size(); ++r) {
    for (double v : m.p[r]) {
      EXPECT_TRUE(std::abs(v - 0.4) <= 1e-15 || std::abs(v - 0.2) <= 1e-15);
    }
  }

  try {
    make_equal_width_bins(3, 4);
    FAIL() << "expected EMPTY_BINS";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kEmptyBins);
  }
}

TEST(RpWithPriorDensity, NormalizesAndKeepsExactRatio) {
  const RegressionMechanismConfig config =
      make_rpwithprior_config(0.0, 1.0, 0.1, std::log(2.0));
  EXPECT_NEAR(config.gamma_rp, 0.7, 1e-15);

  for (double y : {0.0, 0.2, 0.5, 1.0, 1.7, -3.0}) {
    EXPECT_NEAR(rp_density_total_mass(y, config), 1.0, 1e-9) << "y=" << y;
  }

  const double inside = rpwithprior_density(0.5, 0.55, config);
  const double outside = rpwithprior_density(0.5, 0.9, config);
  EXPECT_NEAR(inside, 1.0 / 0.7, 1e-15);
  EXPECT_NEAR(inside / outside, std::exp(std::log(2.0)), 1e-12);
  EXPECT_DOUBLE_EQ(rpwithprior_density(0.5, 1.2, config), 0.0);

  // Outside the interval the density is uniform over N_I.
  EXPECT_NEAR(rpwithprior_density(2.0, 0.3, config), 1.0 / 1.2, 1e-15);
  EXPECT_DOUBLE_EQ(rpwithprior_density(2.0, 1.15, config), 0.0);
}

TEST(SampleLabel, DeterministicRowsAndContracts) {
  const MechanismMatrix identity = build_rr_matrix(4, 50.0);
  MechanismMatrix singular;
  singular.input_labels = {0, 1};
  singular.output_labels = {0, 1};
  singular.p = {{1.0, 0.0}, {0.0, 1.0}};
  RandomStream stream(3);
  for (int i = 0; i < 50; ++i) {
    EXPECT_EQ(sample_label(0, singular, stream), 0);
    EXPECT_EQ(sample_label(1, singular, stream), 1);
  }

  RandomStream seed42(42);
  EXPECT_NEAR(RandomStream(42).uniform01(), 0.75515553295453897, 0.0);
  const MechanismMatrix m = build_blockrr_matrix(k4_config(1));
  EXPECT_EQ(sample_label(2, m, seed42), 2);  // frozen (seed 42, draw 0)

  try {
    RandomStream s(1);
    sample_label(9, m, s);
    FAIL() << "expected LABEL_OUT_OF_RANGE";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kLabelOutOfRange);
  }
}

TEST(SampleLabel, EmpiricalFrequencyMatchesRow) {
  const MechanismMatrix m = build_blockrr_matrix(k4_config(1));
  RandomStream stream(42);
  const long long n = 200000;
  long long count0 = 0;
  for (long long i = 0; i < n; ++i) {
    RandomStream record = stream.substream(static_cast<std::uint64_t>(i));
    if (sample_label(2, m, record) == 0) ++count0;
  }
  EXPECT_NEAR(static_cast<double>(count0) / static_cast<double>(n), 0.25,
              0.005);
}

TEST(SampleRpWithPrior, StaysInSupportAndSplitsMass) {
  const RegressionMechanismConfig config =
      make_rpwithprior_config(0.0, 1.0, 0.1, std::log(2.0));
  RandomStream stream(5);
  const long long n = 200000;
  long long near = 0;
  for (long long i = 0; i < n; ++i) {
    const double v = sample_rpwithprior(0.5, config, stream);
    ASSERT_GE(v, -0.1);
    ASSERT_LE(v, 1.1);
    if (v >= 0.4 && v <= 0.6) ++near;
  }
  EXPECT_NEAR(static_cast<double>(near) / static_cast<double>(n), 2.0 / 7.0,
              0.004);
}

}  // namespace
}  // namespace blockrr
